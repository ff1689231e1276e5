#pragma once

// The additive category L with objects the integers and L(m, n) = Z for
// n in {m, m+1}, and the equivalence between complexes and additive
// functors L^op -> Ab.

#include <map>
#include <vector>

#include "dgkit/complexes.hpp"

namespace dgkit {

inline int ell_hom_rank(int m, int n) { return (n == m || n == m + 1) ? 1 : 0; }

/// coefficient * generator of L(source, target); zero when the hom group is.
struct EllHom {
  int source;
  int target;
  Int coefficient;

  friend bool operator==(const EllHom&, const EllHom&) = default;
};

inline EllHom ell_identity(int m) { return {m, m, 1}; }
inline EllHom ell_generator(int m) { return {m, m + 1, 1}; }

inline EllHom ell_compose(const EllHom& g, const EllHom& f) {
  if (f.target != g.source) throw NotComposable("ell_compose: target of f differs from source of g");
  if (ell_hom_rank(f.source, g.target) == 0) return {f.source, g.target, 0};
  return {f.source, g.target, g.coefficient * f.coefficient};
}

/// The chain map S^m LZ -> S^{m+1} LZ realizing the generator of L(m, m+1).
/// The sign (-1)^{m+1} makes precomposition act on representing elements
/// exactly by d (see represent()).
inline ChainMap ell_generator_map(int m) {
  Complex src = suspension(LZ(), m), tgt = suspension(LZ(), m + 1);
  return ChainMap(src, tgt, 0, {{m, IntMatrix{{sign_pow(m + 1)}}}});
}

/// The chain map S^n LZ -> A sending the top generator to a in A_n.
inline ChainMap represent(const Complex& A, int n, const IntVec& a) {
  if (a.size() != A.rank(n)) throw DimensionMismatch("represent: element has wrong length");
  Complex src = suspension(LZ(), n);
  IntMatrix top = IntMatrix::column(a);
  IntMatrix bottom = A.d(n).empty() ? IntMatrix(A.rank(n - 1), 1) : Int(sign_pow(n)) * (A.d(n) * top);
  return ChainMap(src, A, 0, {{n, top}, {n - 1, bottom}});
}

/// A functor L^op -> Ab with free values: F(n) = Z^{ranks}, and the
/// generator of L(n-1, n) acting as action[n] : F(n) -> F(n-1).
struct EllModule {
  int lo = 0;
  std::vector<std::size_t> ranks;
  std::map<int, IntMatrix> action;

  std::size_t rank(int n) const {
    if (n < lo || n >= lo + static_cast<int>(ranks.size())) return 0;
    return ranks[static_cast<std::size_t>(n - lo)];
  }

  /// Shapes agree and two successive actions compose to zero.
  bool valid() const {
    for (const auto& [n, m] : action)
      if (m.rows() != rank(n - 1) || m.cols() != rank(n)) return false;
    for (const auto& [n, m] : action) {
      auto it = action.find(n - 1);
      if (it != action.end() && !(it->second * m).is_zero()) return false;
    }
    return true;
  }

  friend bool operator==(const EllModule&, const EllModule&) = default;
};

inline EllModule encode(const Complex& A) { return {A.lo(), A.ranks(), A.diff_map()}; }

inline Complex decode(const EllModule& F) { return Complex(F.lo, F.ranks, F.action); }

/// Natural transformations F -> G as a lattice: columns are bases of the
/// solutions theta of theta_{n-1} F_n = G_n theta_n, with theta flattened by
/// ascending n, row-major (the same coordinates as degree-0 chain maps).
inline IntMatrix module_morphism_lattice(const EllModule& F, const EllModule& G) {
  std::map<int, std::size_t> offset;
  std::size_t total = 0;
  const int lo = std::min(F.lo, G.lo);
  const int hi = std::max(F.lo + static_cast<int>(F.ranks.size()), G.lo + static_cast<int>(G.ranks.size()));
  for (int n = lo; n <= hi; ++n) {
    if (F.rank(n) * G.rank(n) == 0) continue;
    offset[n] = total;
    total += F.rank(n) * G.rank(n);
  }
  std::vector<IntVec> rows;
  for (int n = lo; n <= hi + 1; ++n) {
    // entries of theta_{n-1} F_n - G_n theta_n : F(n) -> G(n-1)
    const std::size_t r = G.rank(n - 1), c = F.rank(n);
    if (r * c == 0) continue;
    auto fa = F.action.find(n), ga = G.action.find(n);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) {
        IntVec row(total);
        if (fa != F.action.end() && offset.count(n - 1))
          for (std::size_t k = 0; k < F.rank(n - 1); ++k)
            row[offset[n - 1] + i * F.rank(n - 1) + k] += fa->second(k, j);
        if (ga != G.action.end() && offset.count(n))
          for (std::size_t k = 0; k < G.rank(n); ++k)
            row[offset[n] + k * F.rank(n) + j] -= ga->second(i, k);
        rows.push_back(std::move(row));
      }
  }
  IntMatrix eq(rows.size(), total);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < total; ++j) eq(i, j) = rows[i][j];
  return kernel_basis(eq);
}

/// A chain map read as a natural transformation: the same matrices.
inline std::map<int, IntMatrix> encode_map(const ChainMap& f) {
  std::map<int, IntMatrix> out;
  for (int n = f.source().lo(); n <= f.source().hi(); ++n)
    if (f.target().rank(n) > 0) out.emplace(n, f.comp(n));
  return out;
}

/// L(m, n) = DGAb(S^m LZ, S^n LZ): compares the rank of the chain-map group with the table.
inline bool yoneda_rank_check(int m, int n) {
  return chain_maps_basis(suspension(LZ(), m), suspension(LZ(), n)).size() ==
         static_cast<std::size_t>(ell_hom_rank(m, n));
}

}  // namespace dgkit
