#pragma once

// Finite DG-categories given by composition tables, right and left
// DG-modules, coend tensor products, weighted colimits, Cauchy data and
// module presentations.
//
// Conventions. A right module M stores its action as chain maps
//   rho_{U,V} : MV (x) C(U,V) -> MU,   rho(rho(z (x) g) (x) f) = rho(z (x) (g o f)),
// and a left module N as chain maps
//   lambda_{U,V} : C(U,V) (x) NU -> NV,  lambda(g (x) lambda(f (x) x)) = lambda((g o f) (x) x).
// The functor M : C^op -> DGAb is recovered as (Mf)(y) = (-1)^{|y||f|} rho(y (x) f).
// A transformation theta : M -> M' of degree n is protonatural when
// theta_U(rho(z (x) f)) = rho'(theta_V(z) (x) f).

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "dgkit/cones.hpp"
#include "dgkit/ell.hpp"

namespace dgkit {

/// A homogeneous element of a complex.
struct Elem {
  int degree = 0;
  IntVec v;

  friend bool operator==(const Elem&, const Elem&) = default;
};

/// Coordinates of x (x) y in (X (x) Y)_{|x|+|y|}.
inline IntVec tensor_vec(const TensorProduct& T, const Elem& x, const Elem& y) {
  IntVec out(T.complex().rank(x.degree + y.degree));
  for (std::size_t i = 0; i < x.v.size(); ++i) {
    if (x.v[i] == 0) continue;
    for (std::size_t j = 0; j < y.v.size(); ++j)
      if (y.v[j] != 0) out[T.position({x.degree, y.degree, i, j})] += x.v[i] * y.v[j];
  }
  return out;
}

inline Elem apply(const Proto& f, const Elem& x) { return {x.degree + f.degree(), f.comp(x.degree).apply(x.v)}; }

inline Elem basis_elem(const Complex& X, int degree, std::size_t k) {
  Elem e{degree, IntVec(X.rank(degree))};
  e.v[k] = 1;
  return e;
}

/// Identity matrices X -> S^k X, a degree-k cycle of the hom complex.
inline Proto shift_map(const Complex& X, int k) {
  Complex SX = suspension(X, k);
  Proto s(X, SX, k);
  for (int n = X.lo(); n <= X.hi(); ++n) s.set(n, IntMatrix::identity(X.rank(n)));
  return s;
}

/// Iterated direct sum with its injections and projections.
struct SumN {
  Complex object;
  std::vector<ChainMap> inj;
  std::vector<ChainMap> proj;
};

inline SumN direct_sum_n(const std::vector<Complex>& parts) {
  SumN s;
  for (const auto& p : parts) s.object = oplus(s.object, p);
  std::map<int, std::size_t> offset;
  for (const auto& p : parts) {
    ChainMap i(p, s.object, 0), q(s.object, p, 0);
    for (int n = s.object.lo(); n <= s.object.hi(); ++n) {
      IntMatrix a(s.object.rank(n), p.rank(n)), b(p.rank(n), s.object.rank(n));
      a.set_block(offset[n], 0, IntMatrix::identity(p.rank(n)));
      b.set_block(0, offset[n], IntMatrix::identity(p.rank(n)));
      i.set(n, a);
      q.set(n, b);
      offset[n] += p.rank(n);
    }
    s.inj.push_back(i);
    s.proj.push_back(q);
  }
  return s;
}

// --- categories ---

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

class FiniteDGCategory {
 public:
  std::vector<std::string> objects;
  std::map<std::pair<int, int>, Complex> homs;            // (X, Y) -> C(X, Y)
  std::map<std::tuple<int, int, int>, Proto> composition;  // (X, Y, Z): C(Y,Z) (x) C(X,Y) -> C(X,Z)
  std::map<int, IntVec> identities;                        // degree-0 coordinates in C(X, X)

  int size() const { return static_cast<int>(objects.size()); }

  int index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (objects[static_cast<std::size_t>(i)] == name) return i;
    throw ParseError("unknown object '" + name + "'");
  }

  const Complex& hom(int x, int y) const {
    static const Complex zero;
    auto it = homs.find({x, y});
    return it == homs.end() ? zero : it->second;
  }

  /// The composition map, or the zero map when absent.
  Proto comp(int x, int y, int z) const {
    auto it = composition.find({x, y, z});
    if (it != composition.end()) return it->second;
    return Proto(tensor(hom(y, z), hom(x, y)), hom(x, z), 0);
  }

  Elem identity_elem(int x) const {
    auto it = identities.find(x);
    return {0, it == identities.end() ? IntVec(hom(x, x).rank(0)) : it->second};
  }

  /// K(0) -> C(X, X) picking out the identity.
  ChainMap identity_map(int x) const {
    ChainMap m(Complex::K(0), hom(x, x), 0);
    m.set(0, IntMatrix::column(identity_elem(x).v));
    return m;
  }

  /// g o f for g in C(Y, Z), f in C(X, Y).
  Elem compose(int x, int y, int z, const Elem& g, const Elem& f) const {
    TensorProduct T(hom(y, z), hom(x, y));
    return apply(comp(x, y, z), {g.degree + f.degree, tensor_vec(T, g, f)});
  }

  /// The map C(U, Y) -> C(U, Z), f |-> g o f, of degree |g|.
  Proto post_compose(int u, int y, int z, const Elem& g) const {
    Proto m(hom(u, y), hom(u, z), g.degree);
    for (int q = hom(u, y).lo(); q <= hom(u, y).hi(); ++q) {
      IntMatrix cols(hom(u, z).rank(q + g.degree), hom(u, y).rank(q));
      for (std::size_t k = 0; k < hom(u, y).rank(q); ++k) {
        Elem r = compose(u, y, z, g, basis_elem(hom(u, y), q, k));
        for (std::size_t i = 0; i < r.v.size(); ++i) cols(i, k) = r.v[i];
      }
      m.set(q, cols);
    }
    return m;
  }
};

using CategoryPtr = std::shared_ptr<const FiniteDGCategory>;

inline std::string first_nonzero_degree(const Proto& p) {
  for (int q = p.source().lo(); q <= p.source().hi(); ++q)
    if (!p.comp_ref(q).is_zero()) return std::to_string(q);
  return "?";
}

inline ValidationReport validate_dg_category(const FiniteDGCategory& C) {
  ValidationReport r;
  const int N = C.size();
  auto name = [&](int i) { return C.objects[static_cast<std::size_t>(i)]; };
  for (int x = 0; x < N; ++x) {
    Elem id = C.identity_elem(x);
    if (id.v.size() != C.hom(x, x).rank(0)) {
      r.violations.push_back("identity of " + name(x) + " has wrong length");
      return r;
    }
    if (C.hom(x, x).rank(-1) > 0 && C.hom(x, x).rank(0) > 0 &&
        !IntMatrix::column(C.hom(x, x).d(0).apply(id.v)).is_zero())
      r.violations.push_back("identity of " + name(x) + " is not a cycle");
  }
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z) {
        Proto c = C.comp(x, y, z);
        const std::string t = name(x) + "->" + name(y) + "->" + name(z);
        if (!(c.source() == tensor(C.hom(y, z), C.hom(x, y))) || !(c.target() == C.hom(x, z))) {
          r.violations.push_back("composition " + t + " has the wrong shape");
          continue;
        }
        Proto dc = d_hom(c);
        if (!dc.is_zero())
          r.violations.push_back("Leibniz law fails for composition " + t + " at degree " + first_nonzero_degree(dc));
      }
  if (!r.ok()) return r;
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      const Complex& h = C.hom(x, y);
      Proto left = compose(C.comp(x, y, y), compose(tensor_proto(C.identity_map(y), identity(h)), left_unitor_inverse(h)));
      if (!(left == identity(h))) r.violations.push_back("left unit law fails on " + name(x) + "->" + name(y));
      Proto right = compose(C.comp(x, x, y), compose(tensor_proto(identity(h), C.identity_map(x)), right_unitor_inverse(h)));
      if (!(right == identity(h))) r.violations.push_back("right unit law fails on " + name(x) + "->" + name(y));
    }
  for (int w = 0; w < N; ++w)
    for (int x = 0; x < N; ++x)
      for (int y = 0; y < N; ++y)
        for (int z = 0; z < N; ++z) {
          const Complex &yz = C.hom(y, z), &xy = C.hom(x, y), &wx = C.hom(w, x);
          if (yz.is_zero_object() || xy.is_zero_object() || wx.is_zero_object()) continue;
          Proto l = compose(C.comp(w, y, z), compose(tensor_proto(identity(yz), C.comp(w, x, y)), associator(yz, xy, wx)));
          Proto rr = compose(C.comp(w, x, z), tensor_proto(C.comp(x, y, z), identity(wx)));
          if (!(l == rr))
            r.violations.push_back("associativity fails on " + name(w) + "->" + name(x) + "->" + name(y) + "->" + name(z));
        }
  return r;
}

/// One object with C(*, *) = Z in degree 0.
inline FiniteDGCategory unit_category() {
  FiniteDGCategory C;
  C.objects = {"*"};
  C.homs[{0, 0}] = Complex::K(0);
  C.composition[{0, 0, 0}] = ChainMap(Complex::K(0), Complex::K(0), 0, {{0, IntMatrix{{1}}}});
  C.identities[0] = {1};
  return C;
}

/// The full sub-DG-category of DGAb on the given complexes.
inline FiniteDGCategory dgab_full_subcategory(const std::vector<std::string>& names, const std::vector<Complex>& objs) {
  FiniteDGCategory C;
  C.objects = names;
  const int N = static_cast<int>(objs.size());
  std::map<std::pair<int, int>, HomSpace> spaces;
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      spaces.emplace(std::make_pair(x, y), HomSpace(objs[static_cast<std::size_t>(x)], objs[static_cast<std::size_t>(y)]));
      C.homs[{x, y}] = spaces.at({x, y}).complex();
    }
  for (int x = 0; x < N; ++x) C.identities[x] = spaces.at({x, x}).flatten(identity(objs[static_cast<std::size_t>(x)]));
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z) {
        const HomSpace &yz = spaces.at({y, z}), &xy = spaces.at({x, y}), &xz = spaces.at({x, z});
        TensorProduct T(yz.complex(), xy.complex());
        Proto c(T.complex(), xz.complex(), 0);
        for (int n = T.complex().lo(); n <= T.complex().hi(); ++n) {
          IntMatrix m(xz.dim(n), T.complex().rank(n));
          for (std::size_t k = 0; k < T.complex().rank(n); ++k) {
            TensorBasisIndex b = T.basis_index(n, k);
            IntVec v = xz.flatten(dgkit::compose(yz.unit(b.p, b.left), xy.unit(b.q, b.right)));
            for (std::size_t i = 0; i < v.size(); ++i) m(i, k) = v[i];
          }
          c.set(n, m);
        }
        C.composition[{x, y, z}] = c;
      }
  return C;
}

/// Z[e]/e^2 in degree 0: one object, basis (1, e).
inline FiniteDGCategory dual_numbers_category() {
  FiniteDGCategory C;
  C.objects = {"*"};
  C.homs[{0, 0}] = Complex::K(0, 2);
  // basis of the tensor square: 1(x)1, 1(x)e, e(x)1, e(x)e
  C.composition[{0, 0, 0}] = ChainMap(Complex::K(0, 4), Complex::K(0, 2), 0, {{0, IntMatrix{{1, 0, 0, 0}, {0, 1, 1, 0}}}});
  C.identities[0] = {1, 0};
  return C;
}

/// The full subcategory of L on the objects -W..W; L(m, n) = Z for n in {m, m+1}.
inline FiniteDGCategory ell_window_category(int W) {
  FiniteDGCategory C;
  for (int m = -W; m <= W; ++m) C.objects.push_back(std::to_string(m));
  const int N = 2 * W + 1;
  for (int x = 0; x < N; ++x) {
    for (int y = 0; y < N; ++y)
      if (ell_hom_rank(x, y)) C.homs[{x, y}] = Complex::K(0);
    C.identities[x] = {1};
  }
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y)
      for (int z = 0; z < N; ++z)
        if (ell_hom_rank(x, y) && ell_hom_rank(y, z) && ell_hom_rank(x, z))
          C.composition[{x, y, z}] = ChainMap(Complex::K(0), Complex::K(0), 0, {{0, IntMatrix{{1}}}});
  return C;
}

// --- modules ---

struct RightModule {
  CategoryPtr base;
  std::vector<Complex> values;
  std::map<std::pair<int, int>, Proto> actions;  // (U, V): MV (x) C(U, V) -> MU

  const Complex& value(int u) const { return values.at(static_cast<std::size_t>(u)); }

  Proto action(int u, int v) const {
    auto it = actions.find({u, v});
    if (it != actions.end()) return it->second;
    return Proto(tensor(value(v), base->hom(u, v)), value(u), 0);
  }

  /// rho(z (x) f) for z in MV, f in C(U, V).
  Elem act(int u, int v, const Elem& z, const Elem& f) const {
    TensorProduct T(value(v), base->hom(u, v));
    return apply(action(u, v), {z.degree + f.degree, tensor_vec(T, z, f)});
  }
};

struct LeftModule {
  CategoryPtr base;
  std::vector<Complex> values;
  std::map<std::pair<int, int>, Proto> actions;  // (U, V): C(U, V) (x) NU -> NV

  const Complex& value(int u) const { return values.at(static_cast<std::size_t>(u)); }

  Proto action(int u, int v) const {
    auto it = actions.find({u, v});
    if (it != actions.end()) return it->second;
    return Proto(tensor(base->hom(u, v), value(u)), value(v), 0);
  }

  Elem act(int u, int v, const Elem& f, const Elem& x) const {
    TensorProduct T(base->hom(u, v), value(u));
    return apply(action(u, v), {f.degree + x.degree, tensor_vec(T, f, x)});
  }

  /// x |-> lambda(f (x) x) : NU -> NV, of degree |f|.
  Proto action_by(int u, int v, const Elem& f) const {
    Proto m(value(u), value(v), f.degree);
    for (int q = value(u).lo(); q <= value(u).hi(); ++q) {
      IntMatrix cols(value(v).rank(q + f.degree), value(u).rank(q));
      for (std::size_t k = 0; k < value(u).rank(q); ++k) {
        Elem r = act(u, v, f, basis_elem(value(u), q, k));
        for (std::size_t i = 0; i < r.v.size(); ++i) cols(i, k) = r.v[i];
      }
      m.set(q, cols);
    }
    return m;
  }
};

inline ValidationReport validate_right_module(const RightModule& M) {
  ValidationReport r;
  const FiniteDGCategory& C = *M.base;
  const int N = C.size();
  if (static_cast<int>(M.values.size()) != N) {
    r.violations.push_back("module has " + std::to_string(M.values.size()) + " values for " + std::to_string(N) + " objects");
    return r;
  }
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v) {
      Proto a = M.action(u, v);
      if (!(a.source() == tensor(M.value(v), C.hom(u, v))) || !(a.target() == M.value(u)))
        r.violations.push_back("action " + std::to_string(u) + "," + std::to_string(v) + " has the wrong shape");
      else if (!is_chain_map(a))
        r.violations.push_back("action " + std::to_string(u) + "," + std::to_string(v) + " is not a chain map");
    }
  if (!r.ok()) return r;
  for (int u = 0; u < N; ++u) {
    const Complex& mu = M.value(u);
    Proto unit = compose(M.action(u, u), compose(tensor_proto(identity(mu), C.identity_map(u)), right_unitor_inverse(mu)));
    if (!(unit == identity(mu))) r.violations.push_back("unit law fails at object " + std::to_string(u));
  }
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v)
      for (int w = 0; w < N; ++w) {
        const Complex &mw = M.value(w), &vw = C.hom(v, w), &uv = C.hom(u, v);
        if (mw.is_zero_object() || vw.is_zero_object() || uv.is_zero_object()) continue;
        Proto l = compose(M.action(u, v), tensor_proto(M.action(v, w), identity(uv)));
        Proto rr = compose(M.action(u, w), compose(tensor_proto(identity(mw), C.comp(u, v, w)), associator(mw, vw, uv)));
        if (!(l == rr)) r.violations.push_back("associativity fails at " + std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(w));
      }
  return r;
}

inline ValidationReport validate_left_module(const LeftModule& Nm) {
  ValidationReport r;
  const FiniteDGCategory& C = *Nm.base;
  const int N = C.size();
  if (static_cast<int>(Nm.values.size()) != N) {
    r.violations.push_back("module has the wrong number of values");
    return r;
  }
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v) {
      Proto a = Nm.action(u, v);
      if (!(a.source() == tensor(C.hom(u, v), Nm.value(u))) || !(a.target() == Nm.value(v)))
        r.violations.push_back("action " + std::to_string(u) + "," + std::to_string(v) + " has the wrong shape");
      else if (!is_chain_map(a))
        r.violations.push_back("action " + std::to_string(u) + "," + std::to_string(v) + " is not a chain map");
    }
  if (!r.ok()) return r;
  for (int u = 0; u < N; ++u) {
    const Complex& nu = Nm.value(u);
    Proto unit = compose(Nm.action(u, u), compose(tensor_proto(C.identity_map(u), identity(nu)), left_unitor_inverse(nu)));
    if (!(unit == identity(nu))) r.violations.push_back("unit law fails at object " + std::to_string(u));
  }
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v)
      for (int w = 0; w < N; ++w) {
        const Complex &vw = C.hom(v, w), &uv = C.hom(u, v), &nu = Nm.value(u);
        if (nu.is_zero_object() || vw.is_zero_object() || uv.is_zero_object()) continue;
        Proto l = compose(Nm.action(v, w), compose(tensor_proto(identity(vw), Nm.action(u, v)), associator(vw, uv, nu)));
        Proto rr = compose(Nm.action(u, w), tensor_proto(C.comp(u, v, w), identity(nu)));
        if (!(l == rr)) r.violations.push_back("associativity fails at " + std::to_string(u) + "," + std::to_string(v) + "," + std::to_string(w));
      }
  return r;
}

/// C(-, K) with action by composition.
inline RightModule representable_right(const CategoryPtr& C, int K) {
  RightModule M{C, {}, {}};
  for (int u = 0; u < C->size(); ++u) M.values.push_back(C->hom(u, K));
  for (int u = 0; u < C->size(); ++u)
    for (int v = 0; v < C->size(); ++v) M.actions[{u, v}] = C->comp(u, v, K);
  return M;
}

/// C(K, -) with action by composition.
inline LeftModule representable_left(const CategoryPtr& C, int K) {
  LeftModule N{C, {}, {}};
  for (int u = 0; u < C->size(); ++u) N.values.push_back(C->hom(K, u));
  for (int u = 0; u < C->size(); ++u)
    for (int v = 0; v < C->size(); ++v) N.actions[{u, v}] = C->comp(K, u, v);
  return N;
}

/// S^k M: the same action matrices.
inline RightModule suspend(const RightModule& M, int k) {
  RightModule S{M.base, {}, {}};
  for (const auto& x : M.values) S.values.push_back(suspension(x, k));
  for (const auto& [key, a] : M.actions) {
    auto [u, v] = key;
    S.actions[key] = compose(shift_map(M.value(u), k),
                             compose(a, tensor_proto(shift_map(S.value(v), -k), identity(M.base->hom(u, v)))));
  }
  return S;
}

/// S^k N: the action picks up (-1)^{k|f|}.
inline LeftModule suspend(const LeftModule& N, int k) {
  LeftModule S{N.base, {}, {}};
  for (const auto& x : N.values) S.values.push_back(suspension(x, k));
  for (const auto& [key, a] : N.actions) {
    auto [u, v] = key;
    S.actions[key] = compose(shift_map(N.value(v), k),
                             compose(a, tensor_proto(identity(N.base->hom(u, v)), shift_map(S.value(u), -k))));
  }
  return S;
}

inline RightModule oplus(const RightModule& A, const RightModule& B) {
  RightModule S{A.base, {}, {}};
  std::vector<DirectSumWitness> ws;
  for (int u = 0; u < A.base->size(); ++u) {
    ws.push_back(direct_sum(A.value(u), B.value(u)));
    S.values.push_back(ws.back().object);
  }
  for (int u = 0; u < A.base->size(); ++u)
    for (int v = 0; v < A.base->size(); ++v) {
      const Complex& h = A.base->hom(u, v);
      const auto &wu = ws[static_cast<std::size_t>(u)], &wv = ws[static_cast<std::size_t>(v)];
      S.actions[{u, v}] = compose(wu.i, compose(A.action(u, v), tensor_proto(wv.q, identity(h)))) +
                          compose(wu.j, compose(B.action(u, v), tensor_proto(wv.p, identity(h))));
    }
  return S;
}

inline LeftModule oplus(const LeftModule& A, const LeftModule& B) {
  LeftModule S{A.base, {}, {}};
  std::vector<DirectSumWitness> ws;
  for (int u = 0; u < A.base->size(); ++u) {
    ws.push_back(direct_sum(A.value(u), B.value(u)));
    S.values.push_back(ws.back().object);
  }
  for (int u = 0; u < A.base->size(); ++u)
    for (int v = 0; v < A.base->size(); ++v) {
      const Complex& h = A.base->hom(u, v);
      const auto &wu = ws[static_cast<std::size_t>(u)], &wv = ws[static_cast<std::size_t>(v)];
      S.actions[{u, v}] = compose(wv.i, compose(A.action(u, v), tensor_proto(identity(h), wu.q))) +
                          compose(wv.j, compose(B.action(u, v), tensor_proto(identity(h), wu.p)));
    }
  return S;
}

/// A complex A viewed as a module over the unit category (action = unitor).
inline RightModule constant_right(const CategoryPtr& I, const Complex& A) {
  return {I, {A}, {{{0, 0}, right_unitor(A)}}};
}
inline LeftModule constant_left(const CategoryPtr& I, const Complex& A) {
  return {I, {A}, {{{0, 0}, left_unitor(A)}}};
}

// --- transformations ---

/// A family theta_U : MU -> M'U of common degree.
struct ProtonatTransform {
  int degree = 0;
  std::vector<Proto> comps;
};

inline bool is_protonatural(const ProtonatTransform& t, const RightModule& M, const RightModule& M2) {
  const int N = M.base->size();
  for (int u = 0; u < N; ++u)
    for (int v = 0; v < N; ++v) {
      const Complex& h = M.base->hom(u, v);
      if (h.is_zero_object() || M.value(v).is_zero_object()) continue;
      Proto l = compose(t.comps[static_cast<std::size_t>(u)], M.action(u, v));
      Proto r = compose(M2.action(u, v), tensor_proto(t.comps[static_cast<std::size_t>(v)], identity(h)));
      if (!(l == r)) return false;
    }
  return true;
}

inline ProtonatTransform compose(const ProtonatTransform& g, const ProtonatTransform& f) {
  ProtonatTransform h{g.degree + f.degree, {}};
  for (std::size_t u = 0; u < f.comps.size(); ++u) h.comps.push_back(dgkit::compose(g.comps[u], f.comps[u]));
  return h;
}

// --- coends ---

/// A complex of finitely generated groups presented as generators (a free
/// complex) modulo the image of a chain map of relations.
struct PresentedComplex {
  Complex generators;
  ChainMap relations;  // into generators

  FPAbGroup group(int n) const {
    return FPAbGroup::from_presentation(relations.comp(n).cols() ? relations.comp(n) : IntMatrix(generators.rank(n), 0));
  }

  GradedGroups groups() const {
    GradedGroups g;
    for (int n = generators.lo(); n <= generators.hi(); ++n) g[n] = group(n);
    return g;
  }

  /// d maps relations into relations and d^2 = 0 on generators.
  bool differential_well_defined() const {
    if (!is_chain_map(relations)) return false;
    for (int n = generators.lo() + 1; n <= generators.hi(); ++n)
      if (!(generators.d(n - 1) * generators.d(n)).is_zero()) return false;
    return true;
  }

  bool is_free() const {
    for (int n = generators.lo(); n <= generators.hi(); ++n)
      if (!group(n).is_free()) return false;
    return true;
  }

  struct Quotient {
    Complex complex;
    ChainMap projection;  // generators -> quotient
    Proto section;        // quotient -> generators, projection o section = 1
  };

  /// The quotient as a complex of free groups; requires is_free().
  Quotient to_complex() const {
    if (!is_free()) throw Error("presented complex has torsion and is not a complex of free groups");
    const Complex& G = generators;
    std::map<int, Cokernel> cok;
    std::vector<std::size_t> ranks;
    for (int n = G.lo(); n <= G.hi(); ++n) {
      cok.emplace(n, cokernel(relations.comp(n)));
      ranks.push_back(cok.at(n).projection.rows());
    }
    std::map<int, IntMatrix> diffs;
    for (int n = G.lo() + 1; n <= G.hi(); ++n) diffs.emplace(n, cok.at(n - 1).projection * G.d(n) * cok.at(n).section);
    Quotient q;
    q.complex = G.is_zero_object() ? Complex() : Complex(G.lo(), ranks, diffs);
    q.projection = Proto(G, q.complex, 0);
    q.section = Proto(q.complex, G, 0);
    for (int n = G.lo(); n <= G.hi(); ++n) {
      q.projection.set(n, cok.at(n).projection);
      q.section.set(n, cok.at(n).section);
    }
    return q;
  }
};

/// Layout of the coend generators: block U of sum_U MU (x) NU.
struct CoendLayout {
  SumN gens;
  std::vector<TensorProduct> blocks;

  /// Coordinates of [x (x) y] in block U.
  Elem generator(int u, const Elem& x, const Elem& y) const {
    IntVec local = tensor_vec(blocks[static_cast<std::size_t>(u)], x, y);
    return apply(gens.inj[static_cast<std::size_t>(u)], {x.degree + y.degree, local});
  }
};

struct Coend {
  CoendLayout layout;
  PresentedComplex presented;
};

/// M (x)_C N = sum_U MU (x) NU modulo rho(z (x) f) (x) x ~ z (x) lambda(f (x) x).
inline Coend coend_tensor(const RightModule& M, const LeftModule& N) {
  const FiniteDGCategory& C = *M.base;
  const int K = C.size();
  Coend out;
  std::vector<Complex> parts;
  for (int u = 0; u < K; ++u) {
    out.layout.blocks.emplace_back(M.value(u), N.value(u));
    parts.push_back(out.layout.blocks.back().complex());
  }
  out.layout.gens = direct_sum_n(parts);
  const Complex& G = out.layout.gens.object;

  std::vector<Complex> rel_parts;
  std::vector<Proto> rel_maps;
  for (int u = 0; u < K; ++u)
    for (int v = 0; v < K; ++v) {
      const Complex& h = C.hom(u, v);
      if (h.is_zero_object() || M.value(v).is_zero_object() || N.value(u).is_zero_object()) continue;
      Complex src = tensor(tensor(M.value(v), h), N.value(u));
      Proto left = compose(out.layout.gens.inj[static_cast<std::size_t>(u)], tensor_proto(M.action(u, v), identity(N.value(u))));
      Proto right = compose(out.layout.gens.inj[static_cast<std::size_t>(v)],
                            compose(tensor_proto(identity(M.value(v)), N.action(u, v)), associator(M.value(v), h, N.value(u))));
      rel_parts.push_back(src);
      rel_maps.push_back(left - right);
    }
  SumN rel = direct_sum_n(rel_parts);
  ChainMap R(rel.object, G, 0);
  for (std::size_t k = 0; k < rel_maps.size(); ++k) R += compose(rel_maps[k], rel.proj[k]);
  out.presented = {G, R};
  return out;
}

/// The co-Yoneda comparison for M = C(-, K): [y (x) x] |-> lambda(y (x) x)
/// with inverse x |-> [1_K (x) x]. Returns true when both are chain maps,
/// the first kills relations and they are mutually inverse on the quotient.
inline bool verify_co_yoneda(const CategoryPtr& C, int K, const LeftModule& N) {
  RightModule M = representable_right(C, K);
  Coend co = coend_tensor(M, N);
  const Complex& G = co.presented.generators;
  const Complex& NK = N.value(K);
  ChainMap phi(G, NK, 0);
  for (int u = 0; u < C->size(); ++u)
    phi += compose(N.action(u, K), co.layout.gens.proj[static_cast<std::size_t>(u)]);
  ChainMap psi(NK, G, 0);
  for (int n = NK.lo(); n <= NK.hi(); ++n) {
    IntMatrix m(G.rank(n), NK.rank(n));
    for (std::size_t k = 0; k < NK.rank(n); ++k) {
      Elem g = co.layout.generator(K, C->identity_elem(K), basis_elem(NK, n, k));
      for (std::size_t i = 0; i < g.v.size(); ++i) m(i, k) = g.v[i];
    }
    psi.set(n, m);
  }
  if (!is_chain_map(phi) || !is_chain_map(psi)) return false;
  if (!compose(phi, co.presented.relations).is_zero()) return false;
  if (!(compose(phi, psi) == identity(NK))) return false;
  Proto diff = compose(psi, phi) - identity(G);
  for (int n = G.lo(); n <= G.hi(); ++n) {
    IntMatrix rel = co.presented.relations.comp(n);
    if (diff.comp(n).is_zero()) continue;
    if (rel.cols() == 0 || !solve_matrix(rel, diff.comp(n))) return false;
  }
  return true;
}

// --- weighted colimits ---

struct WeightedColimit {
  Coend coend;
  PresentedComplex::Quotient quotient;

  const Complex& colim() const { return quotient.complex; }
};

/// colim(M, F) for a weight M (right module) and a diagram F (left module).
inline WeightedColimit weighted_colimit(const RightModule& M, const LeftModule& F) {
  WeightedColimit w{coend_tensor(M, F), {}};
  w.quotient = w.coend.presented.to_complex();
  return w;
}

namespace detail {

/// Flattened coordinates for families tau_U in [MU, [FU, A]]_n, blocks by U.
struct NatSpace {
  std::vector<HomSpace> inner;  // [FU, A]
  std::vector<HomSpace> outer;  // [MU, [FU, A]]
  std::vector<std::size_t> offset;
  std::size_t total = 0;

  NatSpace(const RightModule& M, const LeftModule& F, const Complex& A, int n) {
    for (int u = 0; u < M.base->size(); ++u) {
      inner.emplace_back(F.value(u), A);
      outer.emplace_back(M.value(u), inner.back().complex());
      offset.push_back(total);
      total += outer.back().dim(n);
    }
  }

  std::vector<Proto> unflatten(int n, const IntVec& v) const {
    std::vector<Proto> out;
    for (std::size_t u = 0; u < outer.size(); ++u) {
      IntVec part(v.begin() + static_cast<std::ptrdiff_t>(offset[u]),
                  v.begin() + static_cast<std::ptrdiff_t>(offset[u] + outer[u].dim(n)));
      out.push_back(outer[u].unflatten(n, part));
    }
    return out;
  }

  IntVec flatten(const std::vector<Proto>& taus) const {
    IntVec v;
    for (std::size_t u = 0; u < outer.size(); ++u) {
      IntVec p = outer[u].flatten(taus[u]);
      v.insert(v.end(), p.begin(), p.end());
    }
    return v;
  }
};

/// Residues of tau_U(rho(z (x) f)) - rho'(tau_V(z) (x) f), rho'(phi (x) f) = phi o lambda_f.
inline IntVec protonatural_residues(const RightModule& M, const LeftModule& F, const NatSpace& S,
                                    const std::vector<Proto>& tau) {
  IntVec out;
  const FiniteDGCategory& C = *M.base;
  for (int u = 0; u < C.size(); ++u)
    for (int v = 0; v < C.size(); ++v) {
      const Complex& h = C.hom(u, v);
      const Complex& mv = M.value(v);
      for (int p = h.lo(); p <= h.hi(); ++p)
        for (std::size_t fi = 0; fi < h.rank(p); ++fi) {
          Elem f = basis_elem(h, p, fi);
          Proto lam = F.action_by(u, v, f);
          for (int a = mv.lo(); a <= mv.hi(); ++a)
            for (std::size_t zi = 0; zi < mv.rank(a); ++zi) {
              Elem z = basis_elem(mv, a, zi);
              Elem w = M.act(u, v, z, f);
              const auto& su = static_cast<std::size_t>(u);
              const auto& sv = static_cast<std::size_t>(v);
              Elem lhs = apply(tau[su], w);
              Elem tz = apply(tau[sv], z);
              Proto rhs = dgkit::compose(S.inner[sv].unflatten(tz.degree, tz.v), lam);
              IntVec r = S.inner[su].flatten(rhs);
              for (std::size_t i = 0; i < r.size(); ++i) out.push_back(lhs.v[i] - r[i]);
            }
        }
    }
  return out;
}

}  // namespace detail

/// theta in [colim, A]_n |-> tau with tau_U(m)(x) = theta([m (x) x]).
inline std::vector<Proto> curry_into_module(const WeightedColimit& wc, const RightModule& M, const LeftModule& F,
                                            const detail::NatSpace& S, const Proto& theta) {
  std::vector<Proto> taus;
  const int n = theta.degree();
  for (int u = 0; u < M.base->size(); ++u) {
    const auto su = static_cast<std::size_t>(u);
    const Complex& mu = M.value(u);
    const Complex& fu = F.value(u);
    Proto tau(mu, S.inner[su].complex(), n);
    for (int s = mu.lo(); s <= mu.hi(); ++s) {
      IntMatrix cols(S.inner[su].dim(s + n), mu.rank(s));
      for (std::size_t k = 0; k < mu.rank(s); ++k) {
        Elem m = basis_elem(mu, s, k);
        Proto phi(fu, theta.target(), s + n);
        for (int q = fu.lo(); q <= fu.hi(); ++q) {
          IntMatrix c(theta.target().rank(q + s + n), fu.rank(q));
          for (std::size_t j = 0; j < fu.rank(q); ++j) {
            Elem g = wc.coend.layout.generator(u, m, basis_elem(fu, q, j));
            Elem img = apply(theta, apply(wc.quotient.projection, g));
            for (std::size_t i = 0; i < img.v.size(); ++i) c(i, j) = img.v[i];
          }
          phi.set(q, c);
        }
        IntVec flat = S.inner[su].flatten(phi);
        for (std::size_t i = 0; i < flat.size(); ++i) cols(i, k) = flat[i];
      }
      tau.set(s, cols);
    }
    taus.push_back(tau);
  }
  return taus;
}

/// The defining isomorphism [colim, A]_n = protonatural [M, [F-, A]]_n, in
/// every degree n, for every probe A; currying also commutes with d.
inline bool verify_weighted_colimit(const WeightedColimit& wc, const RightModule& M, const LeftModule& F,
                                    const std::vector<Complex>& probes) {
  for (const auto& A : probes) {
    HomSpace CA(wc.colim(), A);
    const int lo = CA.complex().is_zero_object() ? 0 : CA.complex().lo() - 1;
    const int hi = CA.complex().is_zero_object() ? 0 : CA.complex().hi() + 1;
    for (int n = lo; n <= hi; ++n) {
      detail::NatSpace S(M, F, A, n);
      IntMatrix cons(0, S.total);
      {
        std::vector<IntVec> rows;
        for (std::size_t k = 0; k < S.total; ++k) {
          IntVec e(S.total);
          e[k] = 1;
          rows.push_back(detail::protonatural_residues(M, F, S, S.unflatten(n, e)));
        }
        const std::size_t nr = rows.empty() ? 0 : rows[0].size();
        cons = IntMatrix(nr, S.total);
        for (std::size_t k = 0; k < S.total; ++k)
          for (std::size_t i = 0; i < nr; ++i) cons(i, k) = rows[k][i];
      }
      IntMatrix nat = kernel_basis(cons);
      IntMatrix curried(S.total, CA.dim(n));
      for (std::size_t k = 0; k < CA.dim(n); ++k) {
        Proto theta = CA.unit(n, k);
        auto taus = curry_into_module(wc, M, F, S, theta);
        IntVec flat = S.flatten(taus);
        for (std::size_t i = 0; i < flat.size(); ++i) curried(i, k) = flat[i];
        // d commutes with currying
        Proto dtheta = d_hom(theta);
        detail::NatSpace S1(M, F, A, n - 1);
        auto dtaus = curry_into_module(wc, M, F, S1, dtheta);
        for (std::size_t u = 0; u < taus.size(); ++u)
          if (!(d_hom(taus[u]) == dtaus[u])) return false;
      }
      if (!same_lattice(nat, curried) || matrix_rank(curried) != CA.dim(n)) return false;
    }
  }
  return true;
}

// --- Cauchy data ---

struct EtaTerm {
  int object;
  Elem x;  // in M(object)
  Elem y;  // in N(object), degree -x.degree
};

struct CauchyData {
  RightModule M;
  LeftModule N;
  std::vector<EtaTerm> eta;
  std::map<std::pair<int, int>, Proto> eps;  // (U, V): NU (x) MV -> C(V, U)

  Proto epsilon(int u, int v) const {
    auto it = eps.find({u, v});
    if (it != eps.end()) return it->second;
    return Proto(tensor(N.value(u), M.value(v)), M.base->hom(v, u), 0);
  }

  Elem apply_eps(int u, int v, const Elem& n, const Elem& m) const {
    TensorProduct T(N.value(u), M.value(v));
    return apply(epsilon(u, v), {n.degree + m.degree, tensor_vec(T, n, m)});
  }
};

struct CauchyReport {
  bool ok = true;
  std::string witness;
};

inline CauchyReport verify_cauchy_structure(const CauchyData& cd) {
  const FiniteDGCategory& C = *cd.M.base;
  const int K = C.size();
  auto fail = [](std::string w) { return CauchyReport{false, std::move(w)}; };
  for (const auto& t : cd.eta) {
    if (t.object < 0 || t.object >= K) return fail("eta term refers to an unknown object");
    if (t.x.degree + t.y.degree != 0) return fail("eta term degrees do not cancel");
    if (t.x.v.size() != cd.M.value(t.object).rank(t.x.degree) || t.y.v.size() != cd.N.value(t.object).rank(t.y.degree))
      return fail("eta term has the wrong length");
  }
  for (int u = 0; u < K; ++u)
    for (int v = 0; v < K; ++v) {
      Proto e = cd.epsilon(u, v);
      const std::string at = " at (" + C.objects[static_cast<std::size_t>(u)] + ", " + C.objects[static_cast<std::size_t>(v)] + ")";
      if (!(e.source() == tensor(cd.N.value(u), cd.M.value(v))) || !(e.target() == C.hom(v, u)))
        return fail("epsilon has the wrong shape" + at);
      if (!is_chain_map(e)) return fail("epsilon is not a chain map" + at);
    }
  // naturality in both variables
  for (int u = 0; u < K; ++u)
    for (int u2 = 0; u2 < K; ++u2)
      for (int v = 0; v < K; ++v) {
        const Complex &h = C.hom(u, u2), &nu = cd.N.value(u), &mv = cd.M.value(v);
        if (h.is_zero_object() || nu.is_zero_object() || mv.is_zero_object()) continue;
        Proto l = compose(cd.epsilon(u2, v), tensor_proto(cd.N.action(u, u2), identity(mv)));
        Proto r = compose(C.comp(v, u, u2), compose(tensor_proto(identity(h), cd.epsilon(u, v)), associator(h, nu, mv)));
        if (!(l == r)) return fail("epsilon is not natural in its first variable");
      }
  for (int u = 0; u < K; ++u)
    for (int v = 0; v < K; ++v)
      for (int v2 = 0; v2 < K; ++v2) {
        const Complex &h = C.hom(v2, v), &nu = cd.N.value(u), &mv = cd.M.value(v);
        if (h.is_zero_object() || nu.is_zero_object() || mv.is_zero_object()) continue;
        Proto l = compose(cd.epsilon(u, v2), compose(tensor_proto(identity(nu), cd.M.action(v2, v)), associator(nu, mv, h)));
        Proto r = compose(C.comp(v2, v, u), tensor_proto(cd.epsilon(u, v), identity(h)));
        if (!(l == r)) return fail("epsilon is not natural in its second variable");
      }
  // eta is a 0-cycle of the coend
  Coend co = coend_tensor(cd.M, cd.N);
  IntVec eta(co.presented.generators.rank(0));
  for (const auto& t : cd.eta) {
    Elem g = co.layout.generator(t.object, t.x, t.y);
    for (std::size_t i = 0; i < eta.size(); ++i) eta[i] += g.v[i];
  }
  IntVec deta = co.presented.generators.rank(0) ? co.presented.generators.d(0).apply(eta) : IntVec();
  if (co.presented.generators.rank(-1) > 0) {
    IntMatrix rel = co.presented.relations.comp(-1);
    bool zero = std::all_of(deta.begin(), deta.end(), [](const Int& x) { return x == 0; });
    if (!zero && (rel.cols() == 0 || !solve(rel, deta))) return fail("eta is not a cycle of the coend");
  }
  return {};
}

/// The snake identity sum_i rho(x_i (x) eps(y_i (x) u)) = u on every basis element u
/// of every MX, after the structural checks.
inline CauchyReport verify_cauchy_data(const CauchyData& cd) {
  CauchyReport s = verify_cauchy_structure(cd);
  if (!s.ok) return s;
  const FiniteDGCategory& C = *cd.M.base;
  for (int X = 0; X < C.size(); ++X) {
    const Complex& mx = cd.M.value(X);
    for (int d = mx.lo(); d <= mx.hi(); ++d)
      for (std::size_t k = 0; k < mx.rank(d); ++k) {
        Elem u = basis_elem(mx, d, k);
        IntVec sum(mx.rank(d));
        for (const auto& t : cd.eta) {
          Elem e = cd.apply_eps(t.object, X, t.y, u);
          Elem r = cd.M.act(X, t.object, t.x, e);
          for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r.v[i];
        }
        if (sum != u.v)
          return {false, "snake identity fails at object " + C.objects[static_cast<std::size_t>(X)] + ", degree " +
                             std::to_string(d) + ", basis element " + std::to_string(k)};
      }
  }
  return {};
}

/// Dual data of S^k C(-, E): N = S^{-k} C(E, -), x = y = 1_E and
/// eps(n (x) m) = (-1)^{k a} n o m with a the degree of n in C.
inline CauchyData representable_cauchy_data(const CategoryPtr& C, int E, int k = 0) {
  CauchyData cd{suspend(representable_right(C, E), k), suspend(representable_left(C, E), -k), {}, {}};
  cd.eta.push_back({E, {k, C->identity_elem(E).v}, {-k, C->identity_elem(E).v}});
  for (int u = 0; u < C->size(); ++u)
    for (int v = 0; v < C->size(); ++v) {
      Proto t = tensor_proto(shift_map(cd.N.value(u), k), shift_map(cd.M.value(v), -k));
      cd.eps[{u, v}] = Int(sign_pow(k)) * compose(C->comp(v, E, u), t);
    }
  return cd;
}

/// Blockwise sum of two sets of Cauchy data over the same category.
inline CauchyData oplus(const CauchyData& a, const CauchyData& b) {
  CauchyData s{oplus(a.M, b.M), oplus(a.N, b.N), {}, {}};
  const FiniteDGCategory& C = *a.M.base;
  std::vector<DirectSumWitness> wm, wn;
  for (int u = 0; u < C.size(); ++u) {
    wm.push_back(direct_sum(a.M.value(u), b.M.value(u)));
    wn.push_back(direct_sum(a.N.value(u), b.N.value(u)));
  }
  auto pad = [](const Elem& e, const IntVec& before_after, bool first) {
    Elem out{e.degree, {}};
    if (first) {
      out.v = e.v;
      out.v.insert(out.v.end(), before_after.begin(), before_after.end());
    } else {
      out.v = before_after;
      out.v.insert(out.v.end(), e.v.begin(), e.v.end());
    }
    return out;
  };
  for (const auto& t : a.eta)
    s.eta.push_back({t.object, pad(t.x, IntVec(b.M.value(t.object).rank(t.x.degree)), true),
                     pad(t.y, IntVec(b.N.value(t.object).rank(t.y.degree)), true)});
  for (const auto& t : b.eta)
    s.eta.push_back({t.object, pad(t.x, IntVec(a.M.value(t.object).rank(t.x.degree)), false),
                     pad(t.y, IntVec(a.N.value(t.object).rank(t.y.degree)), false)});
  for (int u = 0; u < C.size(); ++u)
    for (int v = 0; v < C.size(); ++v) {
      const auto &nu = wn[static_cast<std::size_t>(u)], &mv = wm[static_cast<std::size_t>(v)];
      s.eps[{u, v}] = compose(a.epsilon(u, v), tensor_proto(nu.q, mv.q)) + compose(b.epsilon(u, v), tensor_proto(nu.p, mv.p));
    }
  return s;
}

inline bool is_g_category(const FiniteDGCategory& C) {
  for (const auto& [k, h] : C.homs)
    if (!h.is_graded()) return false;
  return true;
}

struct GRetraction {
  std::vector<RightModule> summands;   // S^{m_i} C(-, E_i)
  std::vector<ProtonatTransform> tau;  // M -> summand i
  std::vector<ProtonatTransform> xhat; // summand i -> M
  bool natural = false;
  bool composite_is_identity = false;
};

/// tau_i(u) = eps(y_i (x) u) and xhat_i(f) = rho(x_i (x) f); sum_i xhat_i tau_i = 1_M.
inline GRetraction g_retraction_from_cauchy(const CauchyData& cd) {
  const CategoryPtr& C = cd.M.base;
  if (!is_g_category(*C)) throw CauchyDataInvalid("base category has nonzero hom differentials");
  if (auto rep = verify_cauchy_data(cd); !rep.ok) throw CauchyDataInvalid(rep.witness);
  GRetraction g;
  const int K = C->size();
  for (const auto& t : cd.eta) {
    const int m = t.x.degree, E = t.object;
    RightModule T = suspend(representable_right(C, E), m);
    ProtonatTransform tau{0, {}}, xh{0, {}};
    for (int X = 0; X < K; ++X) {
      const Complex& mx = cd.M.value(X);
      const Complex& tx = T.value(X);
      Proto a(mx, tx, 0), b(tx, mx, 0);
      for (int d = mx.lo(); d <= mx.hi(); ++d) {
        IntMatrix cols(tx.rank(d), mx.rank(d));
        for (std::size_t k = 0; k < mx.rank(d); ++k) {
          Elem e = cd.apply_eps(E, X, t.y, basis_elem(mx, d, k));
          for (std::size_t i = 0; i < e.v.size(); ++i) cols(i, k) = e.v[i];
        }
        a.set(d, cols);
      }
      for (int d = tx.lo(); d <= tx.hi(); ++d) {
        IntMatrix cols(mx.rank(d), tx.rank(d));
        for (std::size_t k = 0; k < tx.rank(d); ++k) {
          Elem r = cd.M.act(X, E, t.x, basis_elem(C->hom(X, E), d - m, k));
          for (std::size_t i = 0; i < r.v.size(); ++i) cols(i, k) = r.v[i];
        }
        b.set(d, cols);
      }
      tau.comps.push_back(a);
      xh.comps.push_back(b);
    }
    g.summands.push_back(T);
    g.tau.push_back(tau);
    g.xhat.push_back(xh);
  }
  g.natural = true;
  for (std::size_t i = 0; i < g.tau.size(); ++i)
    g.natural = g.natural && is_protonatural(g.tau[i], cd.M, g.summands[i]) && is_protonatural(g.xhat[i], g.summands[i], cd.M);
  g.composite_is_identity = true;
  for (int X = 0; X < K; ++X) {
    const Complex& mx = cd.M.value(X);
    Proto sum(mx, mx, 0);
    for (std::size_t i = 0; i < g.tau.size(); ++i)
      sum += compose(g.xhat[i].comps[static_cast<std::size_t>(X)], g.tau[i].comps[static_cast<std::size_t>(X)]);
    g.composite_is_identity = g.composite_is_identity && sum == identity(mx);
  }
  return g;
}

// --- protosplit quotients of representables ---

struct ProtosplitQuotientReport {
  bool ok = false;
  Elem e;  // sigma_B(gamma'_B(1_B))
  std::string failure;
};

/// gamma' : C(-, B) -> M and sigma : M -> C(-, B) with gamma' sigma = 1 and
/// sigma gamma' = C(-, e) for the idempotent e = sigma_B gamma'_B (1_B).
inline ProtosplitQuotientReport verify_protosplit_quotient(const RightModule& M, int B, const ProtonatTransform& gamma,
                                                           const ProtonatTransform& sigma) {
  const CategoryPtr& C = M.base;
  RightModule R = representable_right(C, B);
  ProtosplitQuotientReport rep;
  auto fail = [&](std::string why) {
    rep.failure = std::move(why);
    return rep;
  };
  if (gamma.comps.size() != static_cast<std::size_t>(C->size()) || sigma.comps.size() != gamma.comps.size())
    return fail("transformations have the wrong number of components");
  for (int u = 0; u < C->size(); ++u) {
    const auto su = static_cast<std::size_t>(u);
    if (!(gamma.comps[su].source() == R.value(u)) || !(gamma.comps[su].target() == M.value(u)) ||
        !(sigma.comps[su].source() == M.value(u)) || !(sigma.comps[su].target() == R.value(u)))
      return fail("component shapes do not match at object " + std::to_string(u));
    if (!is_chain_map(gamma.comps[su]) || !is_chain_map(sigma.comps[su])) return fail("components are not chain maps");
  }
  if (!is_protonatural(gamma, R, M) || !is_protonatural(sigma, M, R)) return fail("transformations are not natural");
  for (int u = 0; u < C->size(); ++u) {
    const auto su = static_cast<std::size_t>(u);
    if (!(compose(gamma.comps[su], sigma.comps[su]) == identity(M.value(u)))) return fail("gamma' sigma != 1");
  }
  const auto sb = static_cast<std::size_t>(B);
  rep.e = apply(sigma.comps[sb], apply(gamma.comps[sb], C->identity_elem(B)));
  if (!(C->compose(B, B, B, rep.e, rep.e) == rep.e)) return fail("e is not idempotent");
  for (int u = 0; u < C->size(); ++u) {
    const auto su = static_cast<std::size_t>(u);
    if (!(compose(sigma.comps[su], gamma.comps[su]) == C->post_compose(u, B, B, rep.e)))
      return fail("sigma gamma' != C(-, e) at object " + std::to_string(u));
  }
  rep.ok = true;
  return rep;
}

/// The image of post-composition with an idempotent e0 in C(B, B)_0 as a
/// module, with gamma' and sigma from the degreewise splitting.
struct SplitRepresentable {
  RightModule M;
  ProtonatTransform gamma;
  ProtonatTransform sigma;
};

inline SplitRepresentable split_representable(const CategoryPtr& C, int B, const Elem& e0) {
  RightModule R = representable_right(C, B);
  SplitRepresentable s{{C, {}, {}}, {0, {}}, {0, {}}};
  for (int u = 0; u < C->size(); ++u) {
    SplitIdempotent sp = split_idempotent(C->post_compose(u, B, B, e0));
    s.M.values.push_back(sp.P);
    s.gamma.comps.push_back(sp.r);
    s.sigma.comps.push_back(sp.s);
  }
  for (int u = 0; u < C->size(); ++u)
    for (int v = 0; v < C->size(); ++v) {
      const auto su = static_cast<std::size_t>(u), sv = static_cast<std::size_t>(v);
      s.M.actions[{u, v}] = compose(s.gamma.comps[su], compose(R.action(u, v), tensor_proto(s.sigma.comps[sv], identity(C->hom(u, v)))));
    }
  return s;
}

// --- presentations by free modules ---

/// One free summand X (x) C(-, D) mapped into M by chi : X -> MD.
struct FreeGenerator {
  int object;
  Complex X;     // K(k) for a cycle, S^k LZ otherwise
  ChainMap chi;  // X -> M(object)
  bool cycle;
};

/// The free module sum_j X_j (x) C(-, D_j) and the map gamma into M.
struct FreeCover {
  std::vector<FreeGenerator> gens;
  RightModule F;
  ProtonatTransform gamma;
};

inline FreeCover free_cover(const RightModule& M, const std::vector<FreeGenerator>& gens) {
  const CategoryPtr& C = M.base;
  const int K = C->size();
  FreeCover fc{gens, {C, {}, {}}, {0, {}}};
  std::vector<std::vector<Complex>> parts(static_cast<std::size_t>(K));
  for (int u = 0; u < K; ++u)
    for (const auto& g : gens) parts[static_cast<std::size_t>(u)].push_back(tensor(g.X, C->hom(u, g.object)));
  std::vector<SumN> sums;
  for (int u = 0; u < K; ++u) {
    sums.push_back(direct_sum_n(parts[static_cast<std::size_t>(u)]));
    fc.F.values.push_back(sums.back().object);
  }
  for (int u = 0; u < K; ++u) {
    const auto su = static_cast<std::size_t>(u);
    Proto gam(fc.F.value(u), M.value(u), 0);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const auto& g = gens[j];
      // x (x) f |-> rho(chi(x) (x) f)
      gam += compose(M.action(u, g.object), compose(tensor_proto(g.chi, identity(C->hom(u, g.object))), sums[su].proj[j]));
    }
    fc.gamma.comps.push_back(gam);
  }
  for (int u = 0; u < K; ++u)
    for (int v = 0; v < K; ++v) {
      const auto su = static_cast<std::size_t>(u), sv = static_cast<std::size_t>(v);
      const Complex& h = C->hom(u, v);
      Proto act(tensor(fc.F.value(v), h), fc.F.value(u), 0);
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const auto& g = gens[j];
        const Complex& hv = C->hom(v, g.object);
        // (x (x) g') (x) f |-> x (x) (g' o f)
        Proto piece = compose(tensor_proto(identity(g.X), C->comp(u, v, g.object)), associator(g.X, hv, h));
        act += compose(sums[su].inj[j], compose(piece, tensor_proto(sums[sv].proj[j], identity(h))));
      }
      fc.F.actions[{u, v}] = act;
    }
  return fc;
}

/// Sum over objects and degrees of (free rank, log-free torsion product) of coker gamma.
inline std::pair<std::size_t, Int> cokernel_size(const FreeCover& fc, const RightModule& M) {
  std::size_t free = 0;
  Int tors = 1;
  for (int u = 0; u < M.base->size(); ++u) {
    const Complex& mu = M.value(u);
    for (int n = mu.lo(); n <= mu.hi(); ++n) {
      auto g = cokernel(fc.gamma.comps[static_cast<std::size_t>(u)].comp(n)).group;
      free += g.free_rank();
      for (const auto& t : g.torsion()) tors *= t;
    }
  }
  return {free, tors};
}

/// Greedy choice of generators until gamma is onto: each step adds the
/// candidate that makes the cokernel smallest (free rank, then torsion
/// order); ties go to cycles, then lower object, degree and index.
inline FreeCover greedy_cover(const RightModule& M) {
  std::vector<FreeGenerator> candidates;
  for (int pass = 0; pass < 2; ++pass)
    for (int u = 0; u < M.base->size(); ++u) {
      const Complex& mu = M.value(u);
      for (int n = mu.lo(); n <= mu.hi(); ++n)
        for (std::size_t k = 0; k < mu.rank(n); ++k) {
          IntVec z(mu.rank(n));
          z[k] = 1;
          const bool cycle = mu.d(n).empty() || IntMatrix::column(mu.d(n).apply(z)).is_zero();
          if ((pass == 0) != cycle) continue;
          if (cycle)
            candidates.push_back({u, Complex::K(n), ChainMap(Complex::K(n), mu, 0, {{n, IntMatrix::column(z)}}), true});
          else
            candidates.push_back({u, suspension(LZ(), n), represent(mu, n, z), false});
        }
    }
  std::vector<FreeGenerator> chosen;
  FreeCover cur = free_cover(M, chosen);
  auto size = cokernel_size(cur, M);
  std::vector<bool> used(candidates.size());
  while (size.first > 0 || size.second > 1) {
    std::size_t best = candidates.size();
    std::pair<std::size_t, Int> best_size = size;
    FreeCover best_cover;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      auto trial = chosen;
      trial.push_back(candidates[c]);
      FreeCover fc = free_cover(M, trial);
      auto sz = cokernel_size(fc, M);
      if (sz < best_size) {
        best = c;
        best_size = sz;
        best_cover = fc;
      }
    }
    if (best == candidates.size()) throw Error("greedy_cover: no candidate shrinks the cokernel");
    used[best] = true;
    chosen.push_back(candidates[best]);
    cur = best_cover;
    size = best_size;
  }
  return cur;
}

/// The kernel of a surjective transformation gamma : F -> M as a submodule,
/// with its inclusion into F.
inline std::pair<RightModule, ProtonatTransform> kernel_module(const RightModule& F, const ProtonatTransform& gamma) {
  const CategoryPtr& C = F.base;
  RightModule Kmod{C, {}, {}};
  ProtonatTransform inc{0, {}};
  for (int u = 0; u < C->size(); ++u) {
    const Proto& g = gamma.comps[static_cast<std::size_t>(u)];
    const Complex& fu = F.value(u);
    std::map<int, IntMatrix> basis;
    std::vector<std::size_t> ranks;
    for (int n = fu.lo(); n <= fu.hi(); ++n) {
      basis[n] = kernel_basis(g.comp(n));
      ranks.push_back(basis[n].cols());
    }
    std::map<int, IntMatrix> diffs;
    for (int n = fu.lo() + 1; n <= fu.hi(); ++n) {
      auto x = solve_matrix(basis[n - 1], fu.d(n) * basis[n]);
      if (!x) throw Error("kernel is not a subcomplex");
      diffs.emplace(n, *x);
    }
    Complex kc = fu.is_zero_object() ? Complex() : Complex(fu.lo(), ranks, diffs);
    Proto i(kc, fu, 0);
    for (int n = kc.lo(); n <= kc.hi(); ++n) i.set(n, basis[n]);
    Kmod.values.push_back(kc);
    inc.comps.push_back(i);
  }
  for (int u = 0; u < C->size(); ++u)
    for (int v = 0; v < C->size(); ++v) {
      const auto su = static_cast<std::size_t>(u), sv = static_cast<std::size_t>(v);
      Proto through = compose(F.action(u, v), tensor_proto(inc.comps[sv], identity(C->hom(u, v))));
      const Complex& src = through.source();
      Proto act(src, Kmod.value(u), 0);
      for (int n = src.lo(); n <= src.hi(); ++n) {
        if (Kmod.value(u).rank(n) == 0) continue;
        auto x = solve_matrix(inc.comps[su].comp(n), through.comp(n));
        if (!x) throw Error("kernel is not a submodule");
        act.set(n, *x);
      }
      Kmod.actions[{u, v}] = act;
    }
  return {Kmod, inc};
}

/// M as the cokernel of phi : F1 -> F0 between free modules, gamma : F0 -> M.
struct ModulePresentation {
  FreeCover cover;      // F0 -> M
  FreeCover relations;  // F1 -> ker gamma
  ProtonatTransform phi;  // F1 -> F0

  /// gamma phi = 0, gamma onto, and im phi = ker gamma at every object and degree.
  bool verify(const RightModule& M) const {
    const int K = M.base->size();
    for (int u = 0; u < K; ++u) {
      const auto su = static_cast<std::size_t>(u);
      const Proto& g = cover.gamma.comps[su];
      const Proto& p = phi.comps[su];
      if (!compose(g, p).is_zero()) return false;
      for (int n = g.source().lo(); n <= g.source().hi(); ++n) {
        if (!cokernel(g.comp(n)).group.is_trivial() && M.value(u).rank(n) > 0) return false;
        if (!same_lattice(p.comp(n), kernel_basis(g.comp(n)))) return false;
      }
      for (int n = M.value(u).lo(); n <= M.value(u).hi(); ++n)
        if (!cokernel(g.comp(n)).group.is_trivial()) return false;
    }
    return is_protonatural(cover.gamma, cover.F, M) && is_protonatural(phi, relations.F, cover.F);
  }
};

inline ModulePresentation module_presentation(const RightModule& M) {
  ModulePresentation p;
  p.cover = greedy_cover(M);
  auto [Kmod, inc] = kernel_module(p.cover.F, p.cover.gamma);
  p.relations = greedy_cover(Kmod);
  p.phi = compose(inc, p.relations.gamma);
  return p;
}

}  // namespace dgkit
