#pragma once

#include <stdexcept>
#include <string>

namespace dgkit {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// d_{n-1} * d_n != 0; `degree()` is n.
class SquareZeroViolated : public Error {
 public:
  explicit SquareZeroViolated(int degree)
      : Error("d_" + std::to_string(degree - 1) + " * d_" + std::to_string(degree) +
              " != 0 (square-zero violated at degree " + std::to_string(degree) + ")"),
        degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

class NotGraded : public Error {
 public:
  using Error::Error;
};

class NotComposable : public Error {
 public:
  using Error::Error;
};

class NotAChainMap : public Error {
 public:
  using Error::Error;
};

class WitnessEquationsFail : public Error {
 public:
  using Error::Error;
};

class NotProtosplit : public Error {
 public:
  using Error::Error;
};

class PairEquationsFail : public Error {
 public:
  using Error::Error;
};

class NotIdempotent : public Error {
 public:
  using Error::Error;
};

class SearchFailed : public Error {
 public:
  using Error::Error;
};

class CauchyDataInvalid : public Error {
 public:
  using Error::Error;
};

class SupportExceedsWindow : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input; the message names the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dgkit
