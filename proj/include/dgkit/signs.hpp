#pragma once

// Global multipliers applied to the Koszul-type signs of the four core
// constructions. They are always +1 in normal use; the mutation acceptance
// criterion flips one at a time and expects the law checks to notice.

namespace dgkit {

struct SignConventions {
  int tensor = 1;  // (-1)^p on the right-hand tensor factor
  int hom = 1;     // (-1)^n term of the hom differential
  int cone = 1;    // -d^A block of the mapping cone
  int tot = 1;     // (-1)^m on the inner differential of Tot
};

inline SignConventions& sign_conventions() {
  static SignConventions conventions;
  return conventions;
}

/// Flips one member of sign_conventions() for the lifetime of the object.
class ScopedSignMutation {
 public:
  explicit ScopedSignMutation(int SignConventions::*member) : member_(member) {
    sign_conventions().*member_ *= -1;
  }
  ~ScopedSignMutation() { sign_conventions().*member_ *= -1; }
  ScopedSignMutation(const ScopedSignMutation&) = delete;
  ScopedSignMutation& operator=(const ScopedSignMutation&) = delete;

 private:
  int SignConventions::*member_;
};

}  // namespace dgkit
