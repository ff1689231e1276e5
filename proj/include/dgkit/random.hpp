#pragma once

// Seeded generators for random complexes, maps and matrices.

#include <random>

#include "dgkit/complexes.hpp"

namespace dgkit {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

struct ComplexShape {
  int min_lo = -2;
  int max_lo = 2;
  int max_width = 3;
  int max_rank = 2;
  int coeff = 2;
};

inline Complex random_graded(Rng& rng, const ComplexShape& shape = {}) {
  const int lo = uniform(rng, shape.min_lo, shape.max_lo);
  std::vector<std::size_t> ranks;
  for (int i = 0, w = uniform(rng, 1, shape.max_width); i < w; ++i)
    ranks.push_back(static_cast<std::size_t>(uniform(rng, 0, shape.max_rank)));
  return Complex(lo, ranks);
}

/// d_n = K_{n-1} R with K_{n-1} a kernel basis of d_{n-1}, so d^2 = 0 by construction.
inline Complex random_complex(Rng& rng, const ComplexShape& shape = {}) {
  Complex g = random_graded(rng, shape);
  if (g.is_zero_object()) return g;
  std::map<int, IntMatrix> diffs;
  IntMatrix prev(0, g.rank(g.lo()));
  for (int n = g.lo() + 1; n <= g.hi(); ++n) {
    IntMatrix K = kernel_basis(prev);
    IntMatrix d = K * random_matrix(rng, K.cols(), g.rank(n), -shape.coeff, shape.coeff);
    diffs.emplace(n, d);
    prev = d;
  }
  return Complex(g.lo(), g.ranks(), diffs);
}

inline Proto random_proto(Rng& rng, const Complex& A, const Complex& B, int degree, int coeff = 2) {
  Proto f(A, B, degree);
  for (int q = A.lo(); q <= A.hi(); ++q)
    f.set(q, random_matrix(rng, B.rank(q + degree), A.rank(q), -coeff, coeff));
  return f;
}

inline Proto random_proto(Rng& rng, const ComplexPtr& A, const ComplexPtr& B, int degree,
                          int coeff = 2) {
  Proto f(A, B, degree);
  for (int q = A->lo(); q <= A->hi(); ++q)
    f.set(q, random_matrix(rng, B->rank(q + degree), A->rank(q), -coeff, coeff));
  return f;
}

/// Random integer combination of a basis of degree-0 chain maps.
inline ChainMap random_chain_map(Rng& rng, const Complex& A, const Complex& B, int coeff = 2) {
  HomSpace hs(A, B);
  IntMatrix K = hs.cycle_lattice(0);
  IntVec c(K.cols());
  for (auto& x : c) x = uniform(rng, -coeff, coeff);
  return hs.unflatten(0, K.apply(c));
}

}  // namespace dgkit
