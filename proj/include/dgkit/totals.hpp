#pragma once

// Double complexes (complexes in DG-DGAb), their DG hom complexes, the total
// complex, the weight J on a window of L, Tot as a weighted colimit and the
// adjunction tot -| i.

#include <algorithm>

#include "dgkit/dgcat.hpp"
#include "dgkit/random.hpp"
#include "dgkit/signs.hpp"

namespace dgkit {

/// Columns A_m with chain maps delta_m : A_m -> A_{m-1}.
struct DoubleComplex {
  std::map<int, Complex> columns;
  std::map<int, ChainMap> delta;

  const Complex& column(int m) const {
    static const Complex zero;
    auto it = columns.find(m);
    return it == columns.end() ? zero : it->second;
  }

  ChainMap delta_at(int m) const {
    auto it = delta.find(m);
    if (it != delta.end()) return it->second;
    return ChainMap(column(m), column(m - 1), 0);
  }

  /// Lowest and highest nonzero column; (0, -1) when empty.
  std::pair<int, int> support() const {
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& [m, c] : columns)
      if (!c.is_zero_object()) {
        if (!any) lo = m;
        hi = m;
        any = true;
      }
    return {lo, hi};
  }

  /// delta_m are chain maps of matching shape and delta_{m-1} delta_m = 0.
  ValidationReport validate() const {
    ValidationReport r;
    for (const auto& [m, d] : delta) {
      if (!(d.source() == column(m)) || !(d.target() == column(m - 1)))
        r.violations.push_back("delta_" + std::to_string(m) + " has the wrong shape");
      else if (!is_chain_map(d))
        r.violations.push_back("delta_" + std::to_string(m) + " is not a chain map");
    }
    if (!r.ok()) return r;
    for (const auto& [m, d] : delta)
      if (delta.count(m - 1) && !compose(delta.at(m - 1), d).is_zero())
        r.violations.push_back("delta_" + std::to_string(m - 1) + " delta_" + std::to_string(m) + " != 0");
    return r;
  }
};

/// iX: X in column 0.
inline DoubleComplex embed_i(const Complex& X) {
  DoubleComplex A;
  if (!X.is_zero_object()) A.columns[0] = X;
  return A;
}

// --- the total complex ---

/// Block offsets of (Tot A)_n = sum_m A_{m, n-m}, ascending m.
inline std::map<int, std::size_t> tot_offsets(const DoubleComplex& A, int n) {
  std::map<int, std::size_t> off;
  std::size_t o = 0;
  for (const auto& [m, c] : A.columns) {
    off[m] = o;
    o += c.rank(n - m);
  }
  return off;
}

inline std::size_t tot_rank(const DoubleComplex& A, int n) {
  std::size_t r = 0;
  for (const auto& [m, c] : A.columns) r += c.rank(n - m);
  return r;
}

/// Tot A with d(a) = delta(a) + (-1)^m d(a) for a in A_m.
inline Complex total_complex(const DoubleComplex& A) {
  if (A.support().second < A.support().first) return Complex();
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& [m, c] : A.columns) {
    if (c.is_zero_object()) continue;
    lo = any ? std::min(lo, c.lo() + m) : c.lo() + m;
    hi = any ? std::max(hi, c.hi() + m) : c.hi() + m;
    any = true;
  }
  std::vector<std::size_t> ranks;
  for (int n = lo; n <= hi; ++n) ranks.push_back(tot_rank(A, n));
  std::map<int, IntMatrix> diffs;
  const int tsign = sign_conventions().tot;
  for (int n = lo + 1; n <= hi; ++n) {
    auto src = tot_offsets(A, n), tgt = tot_offsets(A, n - 1);
    IntMatrix d(tot_rank(A, n - 1), tot_rank(A, n));
    for (const auto& [m, c] : A.columns) {
      if (c.rank(n - m) == 0) continue;
      if (c.rank(n - m - 1) > 0) d.add_block(tgt[m], src[m], c.d(n - m), Int(tsign * sign_pow(m)));
      if (A.column(m - 1).rank(n - m) > 0) d.add_block(tgt[m - 1], src[m], A.delta_at(m).comp(n - m));
    }
    diffs.emplace(n, d);
  }
  return Complex(lo, ranks, diffs);
}

// --- the DG hom complex ---

/// f_{p,q} : A_q -> B_p of degree n - p + q.
struct DGHomElement {
  int degree = 0;
  std::map<std::pair<int, int>, Proto> comps;

  bool is_zero() const {
    return std::all_of(comps.begin(), comps.end(), [](const auto& kv) { return kv.second.is_zero(); });
  }
};

inline Proto dg_comp(const DGHomElement& f, const DoubleComplex& A, const DoubleComplex& B, int p, int q) {
  auto it = f.comps.find({p, q});
  if (it != f.comps.end()) return it->second;
  return Proto(A.column(q), B.column(p), f.degree - p + q);
}

/// Drops zero components so that equality is by content.
inline DGHomElement normalized(DGHomElement f) {
  for (auto it = f.comps.begin(); it != f.comps.end();)
    it = it->second.is_zero() ? f.comps.erase(it) : std::next(it);
  return f;
}

inline bool operator==(const DGHomElement& a, const DGHomElement& b) {
  if (a.degree != b.degree) return false;
  DGHomElement x = normalized(a), y = normalized(b);
  if (x.comps.size() != y.comps.size()) return false;
  for (const auto& [k, v] : x.comps) {
    auto it = y.comps.find(k);
    if (it == y.comps.end() || !(it->second == v)) return false;
  }
  return true;
}

/// d(f)_{p,q} = (-1)^p d(f_{p,q}) + delta_{p+1} f_{p+1,q} - (-1)^n f_{p,q-1} delta_q.
inline DGHomElement dg_hom_differential(const DoubleComplex& A, const DoubleComplex& B, const DGHomElement& f) {
  DGHomElement out{f.degree - 1, {}};
  const int n = f.degree;
  for (const auto& [p, bp] : B.columns)
    for (const auto& [q, aq] : A.columns) {
      Proto c = Int(sign_pow(p)) * d_hom(dg_comp(f, A, B, p, q));
      if (B.columns.count(p + 1)) c += compose(B.delta_at(p + 1), dg_comp(f, A, B, p + 1, q));
      if (A.columns.count(q - 1)) c -= Int(sign_pow(n)) * compose(dg_comp(f, A, B, p, q - 1), A.delta_at(q));
      if (!c.is_zero()) out.comps.emplace(std::make_pair(p, q), c);
    }
  return out;
}

/// (g o f)_{p,q} = sum_r g_{p,r} o f_{r,q}.
inline DGHomElement dg_compose(const DoubleComplex& A, const DoubleComplex& B, const DoubleComplex& C,
                               const DGHomElement& g, const DGHomElement& f) {
  DGHomElement out{g.degree + f.degree, {}};
  for (const auto& [p, cp] : C.columns)
    for (const auto& [q, aq] : A.columns) {
      Proto c(aq, cp, out.degree - p + q);
      for (const auto& [r, br] : B.columns) c += compose(dg_comp(g, B, C, p, r), dg_comp(f, A, B, r, q));
      if (!c.is_zero()) out.comps.emplace(std::make_pair(p, q), c);
    }
  return out;
}

/// The identity: the Kronecker delta family.
inline DGHomElement dg_identity(const DoubleComplex& A) {
  DGHomElement id{0, {}};
  for (const auto& [m, c] : A.columns) id.comps.emplace(std::make_pair(m, m), identity(c));
  return id;
}

/// Flattened coordinates of the DG hom complex: blocks (p, q) ascending,
/// each the coordinates of HomSpace(A_q, B_p) in degree n - p + q.
class DGHomSpace {
 public:
  DGHomSpace(DoubleComplex A, DoubleComplex B) : A_(std::move(A)), B_(std::move(B)) {
    bool any = false;
    for (const auto& [p, bp] : B_.columns)
      for (const auto& [q, aq] : A_.columns) {
        auto [it, ok] = spaces_.emplace(std::make_pair(p, q), HomSpace(aq, bp));
        const Complex& h = it->second.complex();
        if (h.is_zero_object()) continue;
        lo_ = any ? std::min(lo_, h.lo() + p - q) : h.lo() + p - q;
        hi_ = any ? std::max(hi_, h.hi() + p - q) : h.hi() + p - q;
        any = true;
      }
    if (!any) return;
    std::vector<std::size_t> ranks;
    for (int n = lo_; n <= hi_; ++n) ranks.push_back(dim(n));
    std::map<int, IntMatrix> diffs;
    for (int n = lo_ + 1; n <= hi_; ++n) {
      IntMatrix d(dim(n - 1), dim(n));
      for (std::size_t k = 0; k < dim(n); ++k) {
        IntVec v = flatten(dg_hom_differential(A_, B_, unit(n, k)));
        for (std::size_t i = 0; i < v.size(); ++i) d(i, k) = v[i];
      }
      diffs.emplace(n, d);
    }
    complex_ = Complex(lo_, ranks, diffs);
  }

  const Complex& complex() const { return complex_; }
  const DoubleComplex& source() const { return A_; }
  const DoubleComplex& target() const { return B_; }

  std::size_t dim(int n) const {
    std::size_t t = 0;
    for (const auto& [pq, h] : spaces_) t += h.dim(n - pq.first + pq.second);
    return t;
  }

  IntVec flatten(const DGHomElement& f) const {
    IntVec v;
    for (const auto& [pq, h] : spaces_) {
      if (h.dim(f.degree - pq.first + pq.second) == 0) continue;
      IntVec part = h.flatten(dg_comp(f, A_, B_, pq.first, pq.second));
      v.insert(v.end(), part.begin(), part.end());
    }
    return v;
  }

  DGHomElement unflatten(int n, const IntVec& v) const {
    DGHomElement f{n, {}};
    std::size_t o = 0;
    for (const auto& [pq, h] : spaces_) {
      const int deg = n - pq.first + pq.second;
      const std::size_t k = h.dim(deg);
      if (k == 0) continue;
      IntVec part(v.begin() + static_cast<std::ptrdiff_t>(o), v.begin() + static_cast<std::ptrdiff_t>(o + k));
      f.comps.emplace(pq, h.unflatten(deg, part));
      o += k;
    }
    return f;
  }

  DGHomElement unit(int n, std::size_t k) const {
    IntVec v(dim(n));
    v[k] = 1;
    return unflatten(n, v);
  }

 private:
  DoubleComplex A_, B_;
  std::map<std::pair<int, int>, HomSpace> spaces_;
  int lo_ = 0, hi_ = -1;
  Complex complex_;
};

// --- the weight J and Tot as a weighted colimit ---

/// Object index of m in the window [-W, W].
inline int window_index(int m, int W) { return m + W; }

/// J^m = S^m LZ with J(generator of L(m-1, m)) the map S^{m-1} LZ -> S^m LZ
/// sending the top generator to the bottom generator.
inline LeftModule weight_J(int W) {
  auto L = std::make_shared<const FiniteDGCategory>(ell_window_category(W));
  LeftModule J{L, {}, {}};
  for (int m = -W; m <= W; ++m) J.values.push_back(suspension(LZ(), m));
  for (int i = 0; i < L->size(); ++i) {
    J.actions[{i, i}] = left_unitor(J.value(i));
    if (i + 1 < L->size()) {
      const int m = i + 1 - W;
      Complex src = tensor(Complex::K(0), J.value(i));
      J.actions[{i, i + 1}] = ChainMap(src, J.value(i + 1), 0, {{m - 1, IntMatrix{{1}}}});
    }
  }
  return J;
}

/// A as a right module over the window: the generator of L(m-1, m) acts by delta_m.
inline RightModule double_complex_module(const DoubleComplex& A, int W) {
  auto L = std::make_shared<const FiniteDGCategory>(ell_window_category(W));
  RightModule M{L, {}, {}};
  for (int m = -W; m <= W; ++m) M.values.push_back(A.column(m));
  for (int i = 0; i < L->size(); ++i) {
    M.actions[{i, i}] = right_unitor(M.value(i));
    if (i + 1 < L->size()) M.actions[{i, i + 1}] = compose(A.delta_at(i + 1 - W), right_unitor(M.value(i + 1)));
  }
  return M;
}

/// The window needed by A: it must contain [a - 1, b] for support [a, b].
inline int required_window(const DoubleComplex& A) {
  auto [a, b] = A.support();
  if (b < a) return 0;
  return std::max(std::abs(a - 1), std::abs(b));
}

/// Support width plus one, enlarged to the required window when needed.
inline int default_window(const DoubleComplex& A) {
  auto [a, b] = A.support();
  const int width = b < a ? 0 : b - a + 1;
  return std::max(width + 1, required_window(A));
}

struct TotViaColimit {
  WeightedColimit wc;
  Complex tot;
  Proto generators_to_tot;  // on the coend generators; kills relations
  Proto forward;            // colim(J, A) -> Tot A
  Proto backward;           // Tot A -> colim(J, A)

  /// Both maps are chain maps, mutually inverse, and the generator map kills relations.
  bool verify() const {
    const Complex& Q = wc.colim();
    return is_chain_map(generators_to_tot) && compose(generators_to_tot, wc.coend.presented.relations).is_zero() &&
           is_chain_map(forward) && is_chain_map(backward) && compose(forward, backward) == identity(tot) &&
           compose(backward, forward) == identity(Q);
  }
};

/// colim(J, A) computed as a coend, compared with Tot A by
/// [a (x) top_m] |-> (-1)^{ms + m(m+1)/2} a and [a (x) bottom_m] |-> (-1)^{(m-1)s + (m-1)m/2} delta_m(a)
/// for a of inner degree s.
inline TotViaColimit tot_via_weighted_colimit(const DoubleComplex& A, int W = -1) {
  if (W < 0) W = default_window(A);
  if (W < required_window(A))
    throw SupportExceedsWindow("double complex needs window " + std::to_string(required_window(A)) + ", got " +
                               std::to_string(W));
  if (auto r = A.validate(); !r.ok()) throw Error("invalid double complex: " + r.violations[0]);
  RightModule M = double_complex_module(A, W);
  LeftModule J = weight_J(W);
  TotViaColimit t{weighted_colimit(M, J), total_complex(A), {}, {}, {}};
  const Complex& G = t.wc.coend.presented.generators;
  const Complex& T = t.tot;
  auto c = [](int m, int s) { return Int(sign_pow(static_cast<long long>(m) * s + static_cast<long long>(m) * (m + 1) / 2)); };

  Proto phi(G, T, 0);
  for (int n = G.lo(); n <= G.hi(); ++n) {
    IntMatrix mat(T.rank(n), G.rank(n));
    auto off = tot_offsets(A, n), off1 = tot_offsets(A, n - 1);
    for (int m = -W; m <= W; ++m) {
      const Complex& am = A.column(m);
      const int u = window_index(m, W);
      for (int s = am.lo(); s <= am.hi(); ++s)
        for (std::size_t k = 0; k < am.rank(s); ++k) {
          Elem a = basis_elem(am, s, k);
          if (s + m == n) {
            Elem g = t.wc.coend.layout.generator(u, a, basis_elem(J.value(u), m, 0));
            std::size_t col = static_cast<std::size_t>(std::find(g.v.begin(), g.v.end(), Int(1)) - g.v.begin());
            mat(off[m] + k, col) = c(m, s);
          }
          if (s + m - 1 == n) {
            Elem g = t.wc.coend.layout.generator(u, a, basis_elem(J.value(u), m - 1, 0));
            std::size_t col = static_cast<std::size_t>(std::find(g.v.begin(), g.v.end(), Int(1)) - g.v.begin());
            IntVec da = A.delta_at(m).comp(s).apply(a.v);
            for (std::size_t i = 0; i < da.size(); ++i) mat(off[m - 1] + i, col) = c(m - 1, s) * da[i];
          }
        }
    }
    phi.set(n, mat);
  }
  t.generators_to_tot = phi;
  t.forward = compose(phi, t.wc.quotient.section);

  Proto psi(T, G, 0);
  for (int n = T.lo(); n <= T.hi(); ++n) {
    IntMatrix mat(G.rank(n), T.rank(n));
    auto off = tot_offsets(A, n);
    for (const auto& [m, am] : A.columns) {
      const int s = n - m;
      const int u = window_index(m, W);
      for (std::size_t k = 0; k < am.rank(s); ++k) {
        Elem g = t.wc.coend.layout.generator(u, basis_elem(am, s, k), basis_elem(J.value(u), m, 0));
        for (std::size_t i = 0; i < g.v.size(); ++i) mat(i, off[m] + k) = c(m, s) * g.v[i];
      }
    }
    psi.set(n, mat);
  }
  t.backward = compose(t.wc.quotient.projection, psi);
  return t;
}

// --- the adjunction tot -| i ---

/// DG(A, iX)_n -> [Tot A, X]_n: f_{0,m} : A_m -> X becomes block m of a map
/// on Tot A; the same matrices.
inline Proto dg_to_tot_map(const DoubleComplex& A, const Complex& X, const DGHomElement& f) {
  Complex T = total_complex(A);
  Proto out(T, X, f.degree);
  DoubleComplex iX = embed_i(X);
  for (int n = T.lo(); n <= T.hi(); ++n) {
    IntMatrix mat(X.rank(n + f.degree), T.rank(n));
    auto off = tot_offsets(A, n);
    for (const auto& [m, am] : A.columns)
      if (am.rank(n - m) > 0 && X.rank(n + f.degree) > 0)
        mat.set_block(0, off[m], dg_comp(f, A, iX, 0, m).comp(n - m));
    out.set(n, mat);
  }
  return out;
}

/// The inverse of dg_to_tot_map.
inline DGHomElement tot_map_to_dg(const DoubleComplex& A, const Complex& X, const Proto& g) {
  DGHomElement f{g.degree(), {}};
  for (const auto& [m, am] : A.columns) {
    Proto c(am, X, g.degree() + m);
    for (int s = am.lo(); s <= am.hi(); ++s) {
      auto off = tot_offsets(A, s + m);
      if (X.rank(s + m + g.degree()) > 0) c.set(s, g.comp(s + m).block(0, off[m], X.rank(s + m + g.degree()), am.rank(s)));
    }
    f.comps.emplace(std::make_pair(0, m), c);
  }
  return f;
}

/// The unit A -> i Tot A: inclusion of each column.
inline DGHomElement tot_unit(const DoubleComplex& A) { return tot_map_to_dg(A, total_complex(A), identity(total_complex(A))); }

/// DG(A, iX) = [Tot A, X] = [colim(J, A), X] in every degree, with
/// differentials corresponding.
inline bool tot_adjunction_check(const DoubleComplex& A, const Complex& X) {
  DoubleComplex iX = embed_i(X);
  DGHomSpace dg(A, iX);
  Complex T = total_complex(A);
  HomSpace tx(T, X);
  TotViaColimit tv = tot_via_weighted_colimit(A);
  if (!tv.verify()) return false;
  HomSpace cx(tv.wc.colim(), X);
  const Complex& D = dg.complex();
  const int lo = std::min(D.lo(), tx.complex().lo()) - 1;
  const int hi = std::max(D.hi(), tx.complex().hi()) + 1;
  std::map<int, IntMatrix> phi;
  for (int n = lo; n <= hi; ++n) {
    if (dg.dim(n) != tx.dim(n) || tx.dim(n) != cx.dim(n)) return false;
    IntMatrix m(tx.dim(n), dg.dim(n)), c(cx.dim(n), dg.dim(n));
    for (std::size_t k = 0; k < dg.dim(n); ++k) {
      DGHomElement f = dg.unit(n, k);
      Proto g = dg_to_tot_map(A, X, f);
      if (!(tot_map_to_dg(A, X, g) == f)) return false;
      IntVec v = tx.flatten(g), w = cx.flatten(compose(g, tv.forward));
      for (std::size_t i = 0; i < v.size(); ++i) m(i, k) = v[i];
      for (std::size_t i = 0; i < w.size(); ++i) c(i, k) = w[i];
    }
    if (dg.dim(n) && (!is_unimodular(m) || !is_unimodular(c))) return false;
    phi.emplace(n, m);
    // differentials correspond
    if (n > lo && dg.dim(n) && tx.dim(n - 1)) {
      if (!(phi.at(n - 1) * D.d(n) == tx.complex().d(n) * m)) return false;
    }
  }
  return true;
}

// --- random double complexes ---

/// ker f as a subcomplex of the source, with its inclusion.
inline ChainMap kernel_inclusion(const ChainMap& f) {
  const Complex& A = f.source();
  if (A.is_zero_object()) return ChainMap(A, A, 0);
  std::map<int, IntMatrix> basis;
  std::vector<std::size_t> ranks;
  for (int n = A.lo(); n <= A.hi(); ++n) {
    basis[n] = f.target().rank(n) ? kernel_basis(f.comp(n)) : IntMatrix::identity(A.rank(n));
    ranks.push_back(basis[n].cols());
  }
  std::map<int, IntMatrix> diffs;
  for (int n = A.lo() + 1; n <= A.hi(); ++n) diffs.emplace(n, *solve_matrix(basis[n - 1], A.d(n) * basis[n]));
  Complex K(A.lo(), ranks, diffs);
  ChainMap i(K, A, 0);
  for (int n = K.lo(); n <= K.hi(); ++n) i.set(n, basis[n]);
  return i;
}

/// At most max_columns columns from random_complex with a common lowest
/// degree, and delta_m a random chain map into ker delta_{m-1}.
inline DoubleComplex random_double_complex(Rng& rng, int max_columns = 3, ComplexShape shape = {-1, 1, 3, 2, 3}) {
  DoubleComplex A;
  const int ncols = uniform(rng, 1, max_columns);
  const int first = uniform(rng, -1, 1);
  shape.min_lo = shape.max_lo = uniform(rng, shape.min_lo, shape.max_lo);
  for (int m = first; m < first + ncols; ++m) A.columns[m] = random_complex(rng, shape);
  for (int m = first + 1; m < first + ncols; ++m) {
    ChainMap inc = A.delta.count(m - 1) ? kernel_inclusion(A.delta.at(m - 1)) : identity(A.column(m - 1));
    ChainMap d = random_chain_map(rng, A.column(m), inc.source());
    for (int t = 0; t < 4 && d.is_zero(); ++t) d = random_chain_map(rng, A.column(m), inc.source());
    A.delta[m] = compose(inc, d);
  }
  return A;
}

}  // namespace dgkit
