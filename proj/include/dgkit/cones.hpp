#pragma once

// Direct sums, mapping cones, protosplit cokernels and coequalizers,
// idempotent splitting, and universal-property checks against probe families.

#include <string>
#include <vector>

#include "dgkit/monoidal.hpp"

namespace dgkit {

// --- direct sums ---

struct DirectSumWitness {
  Complex object;
  ChainMap i;  // A -> A + B
  ChainMap j;  // B -> A + B
  ChainMap p;  // A + B -> B
  ChainMap q;  // A + B -> A

  /// p i = 0, q i = 1, p j = 1, i q + j p = 1, q j = 0.
  bool verify() const {
    const Complex& A = i.source();
    const Complex& B = j.source();
    return compose(p, i).is_zero() && compose(q, i) == identity(A) && compose(p, j) == identity(B) &&
           compose(i, q) + compose(j, p) == identity(object) && compose(q, j).is_zero();
  }
};

inline DirectSumWitness direct_sum(const Complex& A, const Complex& B) {
  DirectSumWitness w;
  w.object = oplus(A, B);
  w.i = Proto(A, w.object, 0);
  w.j = Proto(B, w.object, 0);
  w.p = Proto(w.object, B, 0);
  w.q = Proto(w.object, A, 0);
  for (int n = w.object.lo(); n <= w.object.hi(); ++n) {
    const std::size_t a = A.rank(n), b = B.rank(n);
    w.i.set(n, vstack(IntMatrix::identity(a), IntMatrix(b, a)));
    w.j.set(n, vstack(IntMatrix(a, b), IntMatrix::identity(b)));
    w.q.set(n, hstack(IntMatrix::identity(a), IntMatrix(a, b)));
    w.p.set(n, hstack(IntMatrix(b, a), IntMatrix::identity(b)));
  }
  return w;
}

// --- mapping cones ---

struct MappingCone {
  Complex cone;
  ChainMap inj;   // B -> Mc f, [1 ; 0]
  ChainMap proj;  // Mc f -> SA, [0 1]
};

/// (Mc f)_n = B_n + A_{n-1} with d = [[d, f], [0, -d]].
inline MappingCone mapping_cone(const ChainMap& f) {
  require_chain_map(f, "mapping_cone: f");
  const Complex& A = f.source();
  const Complex& B = f.target();
  const Complex SA = suspension(A);
  MappingCone mc;
  const int lo = std::min(B.lo(), SA.lo()), hi = std::max(B.hi(), SA.hi());
  std::vector<std::size_t> ranks;
  std::map<int, IntMatrix> diffs;
  for (int n = lo; n <= hi; ++n) ranks.push_back(B.rank(n) + A.rank(n - 1));
  const Int cs = Int(-sign_conventions().cone);
  for (int n = lo + 1; n <= hi; ++n) {
    IntMatrix m(B.rank(n - 1) + A.rank(n - 2), B.rank(n) + A.rank(n - 1));
    m.set_block(0, 0, B.d(n).empty() ? IntMatrix(B.rank(n - 1), B.rank(n)) : B.d(n));
    m.set_block(0, B.rank(n), f.comp(n - 1));
    m.add_block(B.rank(n - 1), B.rank(n),
                A.d(n - 1).empty() ? IntMatrix(A.rank(n - 2), A.rank(n - 1)) : A.d(n - 1), cs);
    diffs.emplace(n, std::move(m));
  }
  if (B.is_zero_object() && A.is_zero_object()) {
    mc.cone = Complex();
  } else {
    mc.cone = Complex(lo, ranks, diffs);
  }
  mc.inj = Proto(B, mc.cone, 0);
  mc.proj = Proto(mc.cone, SA, 0);
  for (int n = mc.cone.lo(); n <= mc.cone.hi(); ++n) {
    const std::size_t b = B.rank(n), a = A.rank(n - 1);
    mc.inj.set(n, vstack(IntMatrix::identity(b), IntMatrix(a, b)));
    mc.proj.set(n, hstack(IntMatrix(a, b), IntMatrix::identity(a)));
  }
  return mc;
}

/// [[1, u], [0, 1]] : Mc f -> Mc f' where f' = f - d(u), reading the
/// degree-0 proto u : SA -> B as a degree-1 map A -> B. Returns the map and its inverse.
struct ConeHomotopyIso {
  ChainMap f_prime;
  IsoPair iso;
};

inline ConeHomotopyIso cone_homotopy_iso(const ChainMap& f, const Proto& u) {
  const Complex& A = f.source();
  const Complex& B = f.target();
  if (u.degree() != 0 || !(u.source() == suspension(A)) || !(u.target() == B))
    throw ShapeMismatch("cone_homotopy_iso: u must be a degree-0 map SA -> B");
  Proto du = d_hom(u);  // degree -1, SA -> B; (du)_n : A_{n-1} -> B_{n-1}
  ChainMap fp(A, B, 0);
  for (int q = A.lo(); q <= A.hi(); ++q) fp.set(q, f.comp(q) - du.comp(q + 1));
  MappingCone c = mapping_cone(f), cp = mapping_cone(fp);
  ConeHomotopyIso out{fp, {Proto(c.cone, cp.cone, 0), Proto(cp.cone, c.cone, 0)}};
  for (int n = c.cone.lo(); n <= c.cone.hi(); ++n) {
    const std::size_t b = B.rank(n), a = A.rank(n - 1);
    IntMatrix m = IntMatrix::identity(b + a), mi = IntMatrix::identity(b + a);
    m.set_block(0, b, u.comp(n));
    mi.set_block(0, b, -u.comp(n));
    out.iso.forward.set(n, m);
    out.iso.backward.set(n, mi);
  }
  return out;
}

// --- cone recognition ---

struct ConeRecognitionData {
  ChainMap i;  // B -> C
  ChainMap p;  // C -> SA
  Proto j;     // SA -> C, degree 0
  Proto q;     // C -> B, degree 0
};

struct RecognizedCone {
  ChainMap g;  // A -> B
  IsoPair iso;  // Mc g -> C as [i, j], inverse [q ; p]
};

/// Name of the first failing witness equation, or empty.
inline std::string cone_witness_failure(const ConeRecognitionData& w) {
  const Complex& B = w.i.source();
  const Complex& C = w.i.target();
  const Complex& SA = w.p.target();
  if (!is_chain_map(w.i)) return "i is a chain map";
  if (!is_chain_map(w.p)) return "p is a chain map";
  if (!compose(w.p, w.i).is_zero()) return "p*i = 0";
  if (!(compose(w.q, w.i) == identity(B))) return "q*i = 1";
  if (!(compose(w.p, w.j) == identity(SA))) return "p*j = 1";
  if (!(compose(w.i, w.q) + compose(w.j, w.p) == identity(C))) return "i*q + j*p = 1";
  return {};
}

inline RecognizedCone recognize_cone(const ConeRecognitionData& w) {
  if (auto bad = cone_witness_failure(w); !bad.empty())
    throw WitnessEquationsFail("cone witness equation fails: " + bad);
  const Complex& B = w.i.source();
  const Complex& C = w.i.target();
  const Complex A = suspension(w.p.target(), -1);
  Proto qdj = compose(w.q, d_hom(w.j));  // SA -> B, degree -1
  RecognizedCone r;
  r.g = Proto(A, B, 0);
  for (int m = A.lo(); m <= A.hi(); ++m) r.g.set(m, qdj.comp(m + 1));
  MappingCone mc = mapping_cone(r.g);
  r.iso = {Proto(mc.cone, C, 0), Proto(C, mc.cone, 0)};
  for (int n = std::min(mc.cone.lo(), C.lo()); n <= std::max(mc.cone.hi(), C.hi()); ++n) {
    r.iso.forward.set(n, hstack(w.i.comp(n), w.j.comp(n)));
    r.iso.backward.set(n, vstack(w.q.comp(n), w.p.comp(n)));
  }
  return r;
}

/// The canonical witnesses of Mc f: i = inj, p = proj, j = [0 ; 1], q = [1 0].
inline ConeRecognitionData cone_witnesses(const ChainMap& f) {
  MappingCone mc = mapping_cone(f);
  const Complex& A = f.source();
  const Complex& B = f.target();
  ConeRecognitionData w{mc.inj, mc.proj, Proto(suspension(A), mc.cone, 0), Proto(mc.cone, B, 0)};
  for (int n = mc.cone.lo(); n <= mc.cone.hi(); ++n) {
    const std::size_t b = B.rank(n), a = A.rank(n - 1);
    w.j.set(n, vstack(IntMatrix(b, a), IntMatrix::identity(a)));
    w.q.set(n, hstack(IntMatrix::identity(b), IntMatrix(b, a)));
  }
  return w;
}

// --- cylinder replacement ---

/// 0 -> A -> B + Mc1_A -> Mc f -> 0 with
/// i' = [-f ; 1 ; 0], p' = [[1, f, 0], [0, 0, 1]], j' = [[1, 0], [0, 0], [0, 1]], q' = [0 1 0].
struct CylinderFactorization {
  Complex middle;
  ChainMap i;  // A -> middle
  ChainMap p;  // middle -> Mc f
  Proto j;     // Mc f -> middle
  Proto q;     // middle -> A

  bool equations_hold() const {
    const Complex& A = i.source();
    const Complex& M = p.target();
    return is_chain_map(i) && is_chain_map(p) && compose(p, i).is_zero() &&
           compose(q, i) == identity(A) && compose(p, j) == identity(M) &&
           compose(i, q) + compose(j, p) == identity(middle);
  }
};

inline CylinderFactorization cylinder_factorization(const ChainMap& f) {
  const Complex& A = f.source();
  const Complex& B = f.target();
  MappingCone mc = mapping_cone(f);
  MappingCone c1 = mapping_cone(identity(A));
  CylinderFactorization cf;
  cf.middle = oplus(B, c1.cone);
  cf.i = Proto(A, cf.middle, 0);
  cf.p = Proto(cf.middle, mc.cone, 0);
  cf.j = Proto(mc.cone, cf.middle, 0);
  cf.q = Proto(cf.middle, A, 0);
  const int lo = std::min(cf.middle.lo(), mc.cone.lo()), hi = std::max(cf.middle.hi(), mc.cone.hi());
  for (int n = lo; n <= hi; ++n) {
    const std::size_t b = B.rank(n), a = A.rank(n), a1 = A.rank(n - 1);
    IntMatrix i(b + a + a1, a), p(b + a1, b + a + a1), j(b + a + a1, b + a1), q(a, b + a + a1);
    i.set_block(0, 0, -f.comp(n));
    i.set_block(b, 0, IntMatrix::identity(a));
    p.set_block(0, 0, IntMatrix::identity(b));
    p.set_block(0, b, f.comp(n));
    p.set_block(b, b + a, IntMatrix::identity(a1));
    j.set_block(0, 0, IntMatrix::identity(b));
    j.set_block(b + a, b, IntMatrix::identity(a1));
    q.set_block(0, b, IntMatrix::identity(a));
    cf.i.set(n, i);
    cf.p.set(n, p);
    cf.j.set(n, j);
    cf.q.set(n, q);
  }
  return cf;
}

// --- protosplittings ---

inline bool is_protosplitting(const ChainMap& f, const Proto& t) {
  if (t.degree() != 0 || !(t.source() == f.target()) || !(t.target() == f.source())) return false;
  return compose(f, compose(t, f)) == f;
}

/// e = 1 - f t.
inline Proto idempotent_of(const ChainMap& f, const Proto& t) {
  return identity(f.target()) - compose(f, t);
}

struct ProtosplitCokernel {
  Complex C;
  ChainMap w;  // B -> C
  Proto s;     // C -> B, w s = 1, s w = 1 - f t
};

namespace detail {

/// Split an idempotent proto e on B degreewise: e_n = s_n w_n with w_n s_n = 1.
inline std::pair<std::vector<IntMatrix>, std::vector<IntMatrix>> split_degreewise(const Proto& e) {
  const Complex& B = e.source();
  std::vector<IntMatrix> ss, ws;
  for (int n = B.lo(); n <= B.hi(); ++n) {
    const IntMatrix& m = e.comp_ref(n);
    auto snf = smith_normal_form(m);
    for (std::size_t k = 0; k < snf.rank; ++k)
      if (snf.D(k, k) != 1) throw NotIdempotent("degree " + std::to_string(n) + " is not idempotent");
    ss.push_back(columns_of(snf.U_inv, 0, snf.rank));
    ws.push_back(rows_of(snf.V_inv, 0, snf.rank));
  }
  return {std::move(ss), std::move(ws)};
}

}  // namespace detail

/// The cokernel of f, split off as the image of e = 1 - f t, with the
/// differential d^C = w d s transferred from B.
inline ProtosplitCokernel cokernel_protosplit(const ChainMap& f, const Proto& t) {
  require_chain_map(f, "cokernel_protosplit: f");
  if (!is_protosplitting(f, t)) throw NotProtosplit("f t f != f");
  const Complex& B = f.target();
  Proto e = idempotent_of(f, t);
  auto [ss, ws] = detail::split_degreewise(e);
  auto at = [&](const std::vector<IntMatrix>& v, int n) -> const IntMatrix& { return v[static_cast<std::size_t>(n - B.lo())]; };
  std::vector<std::size_t> ranks;
  for (int n = B.lo(); n <= B.hi(); ++n) ranks.push_back(at(ss, n).cols());
  std::map<int, IntMatrix> diffs;
  for (int n = B.lo() + 1; n <= B.hi(); ++n) diffs.emplace(n, at(ws, n - 1) * B.d(n) * at(ss, n));
  ProtosplitCokernel out;
  out.C = B.is_zero_object() ? Complex() : Complex(B.lo(), ranks, diffs);
  out.w = Proto(B, out.C, 0);
  out.s = Proto(out.C, B, 0);
  for (int n = B.lo(); n <= B.hi(); ++n) {
    out.w.set(n, at(ws, n));
    out.s.set(n, at(ss, n));
  }
  return out;
}

struct CoequalizerResult {
  ProtosplitCokernel cokernel;  // of u - v
};

inline CoequalizerResult coequalizer_protosplit_pair(const ChainMap& u, const ChainMap& v, const Proto& t) {
  if (!(compose(u, t) == identity(u.target()))) throw PairEquationsFail("u t != 1");
  if (!(compose(v, compose(t, u)) == compose(v, compose(t, v)))) throw PairEquationsFail("v t u != v t v");
  return {cokernel_protosplit(u - v, t)};
}

/// A protosplit f : A -> B as the pair u = [0 1], v = [f 1] : A + B -> B with t' = [-t ; 1].
struct ReversePair {
  ChainMap u;
  ChainMap v;
  Proto t;
};

inline ReversePair reverse_reduction(const ChainMap& f, const Proto& t) {
  const Complex& A = f.source();
  const Complex& B = f.target();
  Complex AB = oplus(A, B);
  ReversePair r{Proto(AB, B, 0), Proto(AB, B, 0), Proto(B, AB, 0)};
  for (int n = AB.lo(); n <= AB.hi(); ++n) {
    r.u.set(n, hstack(IntMatrix(B.rank(n), A.rank(n)), IntMatrix::identity(B.rank(n))));
    r.v.set(n, hstack(f.comp(n), IntMatrix::identity(B.rank(n))));
    r.t.set(n, vstack(-t.comp(n), IntMatrix::identity(B.rank(n))));
  }
  return r;
}

/// Comparison between two splittings of cokernels of the same map:
/// w2 s1 : C1 -> C2 and w1 s2 : C2 -> C1.
inline IsoPair compare_cokernels(const ProtosplitCokernel& a, const ProtosplitCokernel& b) {
  return {compose(b.w, a.s), compose(a.w, b.s)};
}

struct SplitIdempotent {
  Complex P;
  ChainMap r;  // A -> P
  ChainMap s;  // P -> A
};

inline SplitIdempotent split_idempotent(const ChainMap& e) {
  if (!is_chain_map(e)) throw NotIdempotent("e is not a chain map");
  if (!(compose(e, e) == e)) throw NotIdempotent("e e != e");
  const Complex& A = e.source();
  auto c = cokernel_protosplit(identity(A) - e, identity(A));
  return {c.C, c.w, c.s};
}

// --- Mc1 and LU ---

/// Mc1_{S^{-1}A} -> LUA, [[1, 0], [-d, 1]] in degree n (d = d_{n+1}), inverse [[1, 0], [d, 1]].
inline IsoPair mc1_iso_LU(const Complex& A) {
  Complex mc = mapping_cone(identity(suspension(A, -1))).cone;
  Complex lu = functor_L(forget_U(A));
  IsoPair iso{Proto(mc, lu, 0), Proto(lu, mc, 0)};
  for (int n = lu.lo(); n <= lu.hi(); ++n) {
    const std::size_t a1 = A.rank(n + 1), a0 = A.rank(n);
    IntMatrix m = IntMatrix::identity(a1 + a0), mi = IntMatrix::identity(a1 + a0);
    const IntMatrix d = A.d(n + 1).empty() ? IntMatrix(a0, a1) : A.d(n + 1);
    m.set_block(a1, 0, -d);
    mi.set_block(a1, 0, d);
    iso.forward.set(n, m);
    iso.backward.set(n, mi);
  }
  return iso;
}

// --- mapping cone as a protosplit cokernel ---

struct ConeAsCokernel {
  ProtosplitCokernel cokernel;  // of i = [-f ; i1] : A -> B + Mc1_A with t = [0, q1]
  IsoPair comparison;           // cokernel -> Mc f
};

inline ConeAsCokernel cone_as_cokernel(const ChainMap& f) {
  CylinderFactorization cf = cylinder_factorization(f);
  ConeAsCokernel out{cokernel_protosplit(cf.i, cf.q), {}};
  out.comparison = {compose(cf.p, out.cokernel.s), compose(out.cokernel.w, cf.j)};
  return out;
}

// --- universal properties against probes ---

/// K(0), LZ, and for each seed X: X, S^{+-k} X for 1 <= k <= depth, Mc 1_X, LZ (x) X.
inline std::vector<Complex> probe_family(const std::vector<Complex>& seeds, int depth = 1) {
  std::vector<Complex> out{Complex::K(0), LZ()};
  for (const auto& x : seeds) {
    if (x.is_zero_object()) continue;
    out.push_back(x);
    for (int k = 1; k <= depth; ++k) {
      out.push_back(suspension(x, k));
      out.push_back(suspension(x, -k));
    }
    out.push_back(mapping_cone(identity(x)).cone);
    out.push_back(tensor(LZ(), x));
  }
  return out;
}

/// For f : A -> B and w : B -> C, checks that h |-> h w is a bijection from
/// [C, X]_n onto {g in [B, X]_n : g f = 0}. With `cycles` the same is checked
/// on chain maps only (degree-0 cycles).
inline bool cokernel_property_at(const Proto& f, const Proto& w, const Complex& X, int n, bool cycles) {
  HomSpace BX(w.source(), X), AX(f.source(), X), CX(w.target(), X);
  IntMatrix P = hom_action_matrix(BX, AX, n, nullptr, &f);
  IntMatrix Q = hom_action_matrix(CX, BX, n, nullptr, &w);
  IntMatrix KB = cycles ? BX.cycle_lattice(n) : IntMatrix::identity(BX.dim(n));
  IntMatrix KC = cycles ? CX.cycle_lattice(n) : IntMatrix::identity(CX.dim(n));
  IntMatrix G = KB * kernel_basis(P * KB);
  IntMatrix image = Q * KC;
  return same_lattice(G, image) && matrix_rank(image) == KC.cols();
}

/// Chain-level property at degree 0 plus the hom-complex property in every degree.
inline bool check_cokernel_property(const Proto& f, const Proto& w, const std::vector<Complex>& probes) {
  if (!compose(w, f).is_zero()) return false;
  for (const auto& X : probes) {
    if (!cokernel_property_at(f, w, X, 0, true)) return false;
    HomSpace BX(w.source(), X), CX(w.target(), X);
    const int lo = std::min(BX.complex().lo(), CX.complex().lo());
    const int hi = std::max(BX.complex().hi(), CX.complex().hi());
    for (int n = lo; n <= hi; ++n)
      if (!cokernel_property_at(f, w, X, n, false)) return false;
  }
  return true;
}

/// alpha coequalizes (beta, gamma) universally on the probes.
inline bool verify_canonical_coequalizer(const CanonicalPresentation& p, const std::vector<Complex>& probes) {
  return p.fork_commutes() && check_cokernel_property(p.beta - p.gamma, p.alpha, probes);
}

}  // namespace dgkit
