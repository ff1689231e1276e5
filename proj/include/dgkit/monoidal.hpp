#pragma once

// Tensor product with Koszul signs, symmetry, associativity and unit maps,
// the suspension isomorphisms, and the two solved-for witnesses
// LZ (x) LZ = LZ + S^{-1} LZ and LZ -| RZ.

#include <functional>
#include <optional>

#include "dgkit/complexes.hpp"

namespace dgkit {

/// Basis element a_i (x) b_j of A_p (x) B_q.
struct TensorBasisIndex {
  int p;
  int q;
  std::size_t left;
  std::size_t right;
};

/// A (x) B together with its block layout: (A (x) B)_n is the sum over
/// ascending p of A_p (x) B_{n-p}, and a_i (x) b_j sits at offset + i * rank B_q + j.
class TensorProduct {
 public:
  TensorProduct(const Complex& A, const Complex& B) : A_(A), B_(B) {
    if (A.is_zero_object() || B.is_zero_object()) return;
    lo_ = A.lo() + B.lo();
    const int hi = A.hi() + B.hi();
    std::vector<std::size_t> ranks;
    for (int n = lo_; n <= hi; ++n) {
      std::map<int, std::size_t> offs;
      std::size_t off = 0;
      for (int p = A.lo(); p <= A.hi(); ++p) {
        const std::size_t sz = A.rank(p) * B.rank(n - p);
        if (sz == 0) continue;
        offs.emplace(p, off);
        off += sz;
      }
      offsets_.push_back(std::move(offs));
      ranks.push_back(off);
    }
    const Int ts = Int(sign_conventions().tensor);
    std::map<int, IntMatrix> diffs;
    for (int n = lo_ + 1; n <= hi; ++n) {
      IntMatrix m(ranks[static_cast<std::size_t>(n - 1 - lo_)], ranks[static_cast<std::size_t>(n - lo_)]);
      for (const auto& [p, off] : offsets(n)) {
        const int q = n - p;
        if (auto it = offsets(n - 1).find(p - 1); it != offsets(n - 1).end())
          m.set_block(it->second, off, kron(A.d(p), IntMatrix::identity(B.rank(q))));
        if (auto it = offsets(n - 1).find(p); it != offsets(n - 1).end())
          m.add_block(it->second, off, kron(IntMatrix::identity(A.rank(p)), B.d(q)), ts * sign_pow(p));
      }
      diffs.emplace(n, std::move(m));
    }
    complex_ = Complex(lo_, ranks, diffs);
  }

  const Complex& complex() const { return complex_; }
  const Complex& left() const { return A_; }
  const Complex& right() const { return B_; }

  const std::map<int, std::size_t>& offsets(int n) const {
    static const std::map<int, std::size_t> none;
    const int i = n - lo_;
    if (i < 0 || i >= static_cast<int>(offsets_.size())) return none;
    return offsets_[static_cast<std::size_t>(i)];
  }

  std::size_t position(const TensorBasisIndex& b) const {
    return offsets(b.p + b.q).at(b.p) + b.left * B_.rank(b.q) + b.right;
  }

  TensorBasisIndex basis_index(int n, std::size_t k) const {
    for (const auto& [p, off] : offsets(n)) {
      const std::size_t br = B_.rank(n - p), sz = A_.rank(p) * br;
      if (k < off + sz) return {p, n - p, (k - off) / br, (k - off) % br};
    }
    throw DimensionMismatch("tensor basis index out of range");
  }

 private:
  Complex A_, B_;
  int lo_ = 0;
  std::vector<std::map<int, std::size_t>> offsets_;
  Complex complex_;
};

inline Complex tensor(const Complex& A, const Complex& B) { return TensorProduct(A, B).complex(); }

/// (f (x) g)(a (x) b) = (-1)^{|g||a|} f(a) (x) g(b).
inline Proto tensor_proto(const Proto& f, const Proto& g) {
  TensorProduct src(f.source(), g.source()), tgt(f.target(), g.target());
  const int p = f.degree(), q = g.degree();
  Proto h(src.complex(), tgt.complex(), p + q);
  for (int n = src.complex().lo(); n <= src.complex().hi(); ++n) {
    IntMatrix m(tgt.complex().rank(n + p + q), src.complex().rank(n));
    for (const auto& [s, off] : src.offsets(n)) {
      auto it = tgt.offsets(n + p + q).find(s + p);
      if (it == tgt.offsets(n + p + q).end()) continue;
      m.add_block(it->second, off, kron(f.comp(s), g.comp(n - s)), sign_pow(static_cast<long long>(q) * s));
    }
    h.set(n, std::move(m));
  }
  return h;
}

/// sigma(a (x) b) = (-1)^{pq} b (x) a.
inline ChainMap symmetry(const Complex& A, const Complex& B) {
  TensorProduct ab(A, B), ba(B, A);
  Proto s(ab.complex(), ba.complex(), 0);
  for (int n = ab.complex().lo(); n <= ab.complex().hi(); ++n) {
    IntMatrix m(ba.complex().rank(n), ab.complex().rank(n));
    for (const auto& [p, off] : ab.offsets(n)) {
      const int q = n - p;
      for (std::size_t i = 0; i < A.rank(p); ++i)
        for (std::size_t j = 0; j < B.rank(q); ++j)
          m(ba.position({q, p, j, i}), off + i * B.rank(q) + j) = sign_pow(static_cast<long long>(p) * q);
    }
    s.set(n, std::move(m));
  }
  return s;
}

/// (A (x) B) (x) C -> A (x) (B (x) C), a signless permutation.
inline ChainMap associator(const Complex& A, const Complex& B, const Complex& C) {
  TensorProduct ab(A, B), bc(B, C);
  TensorProduct l(ab.complex(), C), r(A, bc.complex());
  Proto a(l.complex(), r.complex(), 0);
  for (int n = l.complex().lo(); n <= l.complex().hi(); ++n) {
    IntMatrix m(r.complex().rank(n), l.complex().rank(n));
    for (int p = A.lo(); p <= A.hi(); ++p)
      for (int q = B.lo(); q <= B.hi(); ++q) {
        const int t = n - p - q;
        if (C.rank(t) == 0 || B.rank(q) == 0 || A.rank(p) == 0) continue;
        for (std::size_t i = 0; i < A.rank(p); ++i)
          for (std::size_t j = 0; j < B.rank(q); ++j)
            for (std::size_t k = 0; k < C.rank(t); ++k) {
              const std::size_t from = l.position({p + q, t, ab.position({p, q, i, j}), k});
              const std::size_t to = r.position({p, q + t, i, bc.position({q, t, j, k})});
              m(to, from) = 1;
            }
      }
    a.set(n, std::move(m));
  }
  return a;
}

inline ChainMap associator_inverse(const Complex& A, const Complex& B, const Complex& C) {
  Proto a = associator(A, B, C);
  Proto inv(a.target(), a.source(), 0);
  for (int n = a.source().lo(); n <= a.source().hi(); ++n) inv.set(n, a.comp(n).transpose());
  return inv;
}

namespace detail {

inline Proto identity_matrices(const Complex& from, const Complex& to) {
  Proto f(from, to, 0);
  for (int n = from.lo(); n <= from.hi(); ++n) f.set(n, IntMatrix::identity(from.rank(n)));
  return f;
}

}  // namespace detail

/// Z (x) A -> A and A (x) Z -> A; both are identity matrices in the chosen basis order.
inline ChainMap left_unitor(const Complex& A) { return detail::identity_matrices(tensor(Complex::K(0), A), A); }
inline ChainMap left_unitor_inverse(const Complex& A) { return detail::identity_matrices(A, tensor(Complex::K(0), A)); }
inline ChainMap right_unitor(const Complex& A) { return detail::identity_matrices(tensor(A, Complex::K(0)), A); }
inline ChainMap right_unitor_inverse(const Complex& A) { return detail::identity_matrices(A, tensor(A, Complex::K(0))); }

/// A pair of maps claimed to be mutually inverse chain isomorphisms.
struct IsoPair {
  ChainMap forward;
  ChainMap backward;

  bool verify() const {
    return is_chain_map(forward) && is_chain_map(backward) &&
           compose(backward, forward) == identity(forward.source()) &&
           compose(forward, backward) == identity(forward.target());
  }
};

/// S(A (x) B) = SA (x) B; both directions are identity matrices.
inline IsoPair sten_iso(const Complex& A, const Complex& B) {
  Complex l = suspension(tensor(A, B)), r = tensor(suspension(A), B);
  return {detail::identity_matrices(l, r), detail::identity_matrices(r, l)};
}

/// S[B,C] = [B,SC]; identity matrices.
inline IsoPair sten_hom_right(const Complex& B, const Complex& C) {
  Complex l = suspension(hom_complex(B, C)), r = hom_complex(B, suspension(C));
  return {detail::identity_matrices(l, r), detail::identity_matrices(r, l)};
}

/// S[B,C] = [S^{-1}B, C]. The blocks coincide but the differentials differ
/// by a global sign, so degree n carries (-1)^n.
inline IsoPair sten_hom_left(const Complex& B, const Complex& C) {
  Complex l = suspension(hom_complex(B, C)), r = hom_complex(suspension(B, -1), C);
  IsoPair iso{Proto(l, r, 0), Proto(r, l, 0)};
  for (int n = l.lo(); n <= l.hi(); ++n) {
    iso.forward.set(n, IntMatrix::scalar(l.rank(n), sign_pow(n)));
    iso.backward.set(n, IntMatrix::scalar(l.rank(n), sign_pow(n)));
  }
  return iso;
}

/// Inverse of a degreewise-unimodular chain map, or nullopt.
inline std::optional<ChainMap> invert_chain_map(const ChainMap& f) {
  Proto g(f.target_ptr(), f.source_ptr(), 0);
  for (int n = std::min(f.source().lo(), f.target().lo()); n <= std::max(f.source().hi(), f.target().hi()); ++n) {
    if (f.source().rank(n) != f.target().rank(n)) return std::nullopt;
    if (f.source().rank(n) == 0) continue;
    const IntMatrix& m = f.comp_ref(n);
    if (!is_unimodular(m)) return std::nullopt;
    auto inv = solve_matrix(m, IntMatrix::identity(m.rows()));
    if (!inv) return std::nullopt;
    g.set(n, *inv);
  }
  return g;
}

/// Search for a chain isomorphism X -> Y among integer combinations of a
/// chain-map basis, by increasing max-norm of the coefficients.
inline std::optional<IsoPair> find_chain_iso(const Complex& X, const Complex& Y, int bound = 2) {
  HomSpace hs(X, Y);
  IntMatrix K = hs.cycle_lattice(0);
  const std::size_t k = K.cols();
  IntVec c(k);
  for (int norm = 0; norm <= bound; ++norm) {
    std::function<std::optional<IsoPair>(std::size_t, bool)> rec =
        [&](std::size_t pos, bool hit) -> std::optional<IsoPair> {
      if (pos == k) {
        if (!hit && norm > 0) return std::nullopt;
        Proto f = hs.unflatten(0, K.apply(c));
        if (auto g = invert_chain_map(f)) return IsoPair{f, *g};
        return std::nullopt;
      }
      for (int v = -norm; v <= norm; ++v) {
        c[pos] = v;
        if (auto r = rec(pos + 1, hit || v == norm || v == -norm)) return r;
      }
      return std::nullopt;
    };
    if (auto r = rec(0, false)) return r;
  }
  return std::nullopt;
}

/// LZ (x) LZ = LZ + S^{-1} LZ, witnessed by a solved-for chain isomorphism.
inline IsoPair decompose_LZ_tensor() {
  auto iso = find_chain_iso(tensor(LZ(), LZ()), oplus(LZ(), suspension(LZ(), -1)));
  if (!iso) throw SearchFailed("no chain isomorphism LZ (x) LZ -> LZ + S^{-1} LZ found");
  return *iso;
}

struct DualityWitness {
  ChainMap unit;    // Z -> RZ (x) LZ
  ChainMap counit;  // LZ (x) RZ -> Z
};

/// (counit (x) 1) a^{-1} (1 (x) unit) composed with the unit isomorphisms, on LZ.
inline Proto duality_triangle_L(const DualityWitness& w) {
  Complex L = LZ(), R = RZ(), Z = Complex::K(0);
  Proto t = compose(tensor_proto(identity(L), w.unit), right_unitor_inverse(L));
  t = compose(associator_inverse(L, R, L), t);
  t = compose(tensor_proto(w.counit, identity(L)), t);
  return compose(left_unitor(L), t);
}

/// (1 (x) counit) a (unit (x) 1) composed with the unit isomorphisms, on RZ.
inline Proto duality_triangle_R(const DualityWitness& w) {
  Complex L = LZ(), R = RZ();
  Proto t = compose(tensor_proto(w.unit, identity(R)), left_unitor_inverse(R));
  t = compose(associator(R, L, R), t);
  t = compose(tensor_proto(identity(R), w.counit), t);
  return compose(right_unitor(R), t);
}

inline bool verify_duality(const DualityWitness& w) {
  return is_chain_map(w.unit) && is_chain_map(w.counit) &&
         duality_triangle_L(w) == identity(LZ()) && duality_triangle_R(w) == identity(RZ());
}

/// Solves for a unit/counit pair exhibiting LZ -| RZ. The first triangle is
/// linear in the counit once the unit is fixed, so units are enumerated in a
/// small box and the counit is solved for exactly.
inline DualityWitness verify_duality_LR(int bound = 2) {
  Complex L = LZ(), R = RZ(), Z = Complex::K(0);
  HomSpace units(Z, tensor(R, L));
  HomSpace counits(tensor(L, R), Z);
  HomSpace ends(L, L);
  IntMatrix KU = units.cycle_lattice(0), KC = counits.cycle_lattice(0);
  const IntVec target = ends.flatten(identity(L));

  IntVec c(KU.cols());
  std::function<std::optional<DualityWitness>(std::size_t)> rec =
      [&](std::size_t pos) -> std::optional<DualityWitness> {
    if (pos == c.size()) {
      DualityWitness w{units.unflatten(0, KU.apply(c)), Proto()};
      IntMatrix lin(target.size(), KC.cols());
      for (std::size_t j = 0; j < KC.cols(); ++j) {
        w.counit = counits.unflatten(0, KC.col(j));
        IntVec v = ends.flatten(duality_triangle_L(w));
        for (std::size_t i = 0; i < v.size(); ++i) lin(i, j) = v[i];
      }
      auto sol = solve(lin, target);
      if (!sol) return std::nullopt;
      w.counit = counits.unflatten(0, KC.apply(*sol));
      if (duality_triangle_R(w) == identity(R)) return w;
      return std::nullopt;
    }
    for (int v = -bound; v <= bound; ++v) {
      c[pos] = v;
      if (auto r = rec(pos + 1)) return r;
    }
    return std::nullopt;
  };
  if (auto w = rec(0)) return *w;
  throw SearchFailed("no unit/counit pair for LZ -| RZ in the search box");
}

}  // namespace dgkit
