#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dgkit/cones.hpp"
#include "dgkit/dgcat.hpp"
#include "dgkit/ell.hpp"
#include "dgkit/monoidal.hpp"
#include "dgkit/random.hpp"
#include "dgkit/signs.hpp"
#include "dgkit/totals.hpp"

// The twelve acceptance criteria as callable checks. Each one returns a
// result instead of throwing; any exception inside a check counts as failure.

namespace dgkit::acceptance {

struct Options {
  std::uint64_t seed = 20240611;
  int probe_depth = 1;
  int window = -1;  // -1: default window per double complex
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

struct Failed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw Failed(what);
}

inline bool square_zero(const Complex& A) {
  for (int n = A.lo() + 2; n <= A.hi(); ++n)
    if (!(A.d(n - 1) * A.d(n)).is_zero()) return false;
  return true;
}

inline Complex M2() { return Complex(0, {1, 1}, {{1, IntMatrix{{2}}}}); }

inline ComplexShape small_shape() { return {-1, 1, 2, 1, 2}; }

inline std::vector<Complex> fixture_complexes(Rng& rng) {
  std::vector<Complex> out{Complex::K(0), M2(), LZ(), RZ(), suspension(LZ(), -1), Complex::graded(0, {1, 1})};
  for (int i = 0; i < 6; ++i) out.push_back(random_complex(rng));
  return out;
}

inline CategoryPtr share_category(FiniteDGCategory C) { return std::make_shared<const FiniteDGCategory>(std::move(C)); }

inline std::vector<std::pair<std::string, CategoryPtr>> fixture_categories(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<std::string, CategoryPtr>> out{
      {"unit", share_category(unit_category())},
      {"dual numbers", share_category(dual_numbers_category())},
      {"ell window 2", share_category(ell_window_category(2))},
      {"graded", share_category(dgab_full_subcategory({"A", "B"}, {Complex::K(0), Complex::graded(0, {1, 1})}))},
      {"split", share_category(dgab_full_subcategory({"X", "L"}, {Complex::K(0, 2), LZ()}))},
  };
  out.emplace_back("random dgab",
                   share_category(dgab_full_subcategory({"X0", "X1"}, {random_complex(rng, small_shape()),
                                                                        random_complex(rng, small_shape())})));
  return out;
}

inline std::vector<std::pair<std::string, DoubleComplex>> fixture_double_complexes() {
  std::vector<std::pair<std::string, DoubleComplex>> out;
  DoubleComplex single;
  single.columns[0] = M2();
  out.emplace_back("single column", single);
  DoubleComplex square;
  Complex z2(0, {1, 1}, {{1, IntMatrix{{1}}}});
  square.columns[0] = z2;
  square.columns[1] = z2;
  square.delta[1] = identity(z2);
  out.emplace_back("square", square);
  DoubleComplex far;
  far.columns[4] = Complex::K(0);
  out.emplace_back("far column", far);
  return out;
}

// f = [1 ; g] : A -> A + B, split by t = [1 0].
inline std::pair<ChainMap, Proto> random_protosplit(Rng& rng) {
  Complex a = random_complex(rng), b = random_complex(rng);
  DirectSumWitness s = direct_sum(a, b);
  return {s.i + compose(s.j, random_chain_map(rng, a, b)), s.q};
}

inline bool leibniz(const Proto& g, const Proto& f) {
  return d_hom(compose(g, f)) == compose(d_hom(g), f) + Int(sign_pow(g.degree())) * compose(g, d_hom(f));
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

inline void snf_correctness(const Options& o) {
  using detail::require;
  Rng rng(o.seed + 1);
  for (int i = 0; i < 200; ++i) {
    const auto r = static_cast<std::size_t>(uniform(rng, 0, 6)), c = static_cast<std::size_t>(uniform(rng, 0, 6));
    IntMatrix M = random_matrix(rng, r, c, -5, 5);
    SmithDecomposition s = smith_normal_form(M);
    const std::string at = "matrix " + std::to_string(i) + " (" + M.shape_string() + ")";
    require(s.U * M * s.V == s.D, at + ": U M V != D");
    require(is_unimodular(s.U) && is_unimodular(s.V), at + ": U or V not unimodular");
    require(s.U * s.U_inv == IntMatrix::identity(r) && s.V * s.V_inv == IntMatrix::identity(c), at + ": bad inverses");
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < c; ++b) {
        if (a == b && a < s.rank) {
          require(s.D(a, a) > 0, at + ": nonpositive invariant factor");
          if (a > 0) require(s.D(a, a) % s.D(a - 1, a - 1) == 0, at + ": divisibility chain broken");
        } else {
          require(s.D(a, b) == 0, at + ": D not in Smith form");
        }
      }
  }
}

inline void chain_axioms(const Options& o) {
  using detail::require;
  using detail::square_zero;
  Rng rng(o.seed + 2);
  std::vector<Complex> fx = detail::fixture_complexes(rng);
  for (std::size_t i = 0; i < fx.size(); ++i) {
    const std::string a = "fixture " + std::to_string(i);
    require(square_zero(fx[i]), a + ": d^2 != 0");
    require(square_zero(mapping_cone(identity(fx[i])).cone), a + ": cone of identity has d^2 != 0");
    for (std::size_t j = 0; j < fx.size(); j += 3) {
      const std::string ab = a + " with fixture " + std::to_string(j);
      require(square_zero(tensor(fx[i], fx[j])), ab + ": tensor has d^2 != 0");
      require(square_zero(hom_complex(fx[i], fx[j])), ab + ": hom complex has d^2 != 0");
      require(square_zero(mapping_cone(random_chain_map(rng, fx[i], fx[j])).cone), ab + ": cone has d^2 != 0");
    }
  }
  for (const auto& [name, C] : detail::fixture_categories(o.seed)) {
    LeftModule N = representable_left(C, 0);
    for (int K = 0; K < C->size(); ++K) {
      Coend co = coend_tensor(representable_right(C, K), N);
      require(co.presented.differential_well_defined(), name + ": coend differential not well defined");
      if (co.presented.is_free()) require(square_zero(co.presented.to_complex().complex), name + ": coend has d^2 != 0");
    }
  }
  for (const auto& [name, A] : detail::fixture_double_complexes())
    require(square_zero(total_complex(A)), name + ": total complex has d^2 != 0");
  for (int i = 0; i < 100; ++i) {
    Complex A = random_complex(rng), B = random_complex(rng), C = random_complex(rng);
    Proto f = random_proto(rng, A, B, uniform(rng, -2, 2)), g = random_proto(rng, B, C, uniform(rng, -2, 2));
    require(detail::leibniz(g, f), "Leibniz law fails on random pair " + std::to_string(i));
  }
}

inline void homology_fixtures(const Options& o) {
  using detail::require;
  Complex m2 = detail::M2();
  require(homology_at(m2, 0).to_string() == "Z/2", "H_0(M2) is " + homology_at(m2, 0).to_string());
  require(homology_at(m2, 1).is_trivial(), "H_1(M2) is nonzero");
  Rng rng(o.seed + 3);
  for (int i = 0; i < 20; ++i) {
    Complex A = random_complex(rng);
    require(is_acyclic(mapping_cone(identity(A)).cone), "Mc 1_A has homology for random A " + std::to_string(i));
    Complex SA = suspension(A);
    for (int n = A.lo(); n <= A.hi() + 1; ++n)
      require(homology_at(SA, n) == homology_at(A, n - 1), "H_n(SA) != H_{n-1}(A) at n = " + std::to_string(n));
  }
}

inline void monoidal_identities(const Options& o) {
  using detail::require;
  Rng rng(o.seed + 4);
  for (int i = 0; i < 50; ++i) {
    const std::string at = " on pair " + std::to_string(i);
    Complex a = random_complex(rng), b = random_complex(rng), c = random_complex(rng), e = random_complex(rng);
    ChainMap s = symmetry(a, b);
    require(is_chain_map(s), "symmetry is not a chain map" + at);
    require(compose(symmetry(b, a), s) == identity(tensor(a, b)), "symmetry squared is not 1" + at);
    Proto f = random_proto(rng, a, c, uniform(rng, -2, 2)), g = random_proto(rng, b, e, uniform(rng, -2, 2));
    require(compose(symmetry(c, e), tensor_proto(f, g)) ==
                Int(sign_pow(f.degree() * g.degree())) * compose(tensor_proto(g, f), symmetry(a, b)),
            "symmetry naturality sign fails" + at);
    require(IsoPair{associator(a, b, c), associator_inverse(a, b, c)}.verify(), "associator is not a chain iso" + at);
    require(IsoPair{left_unitor(a), left_unitor_inverse(a)}.verify() &&
                IsoPair{right_unitor(a), right_unitor_inverse(a)}.verify(),
            "unitors are not chain isos" + at);
    require(sten_iso(a, b).verify(), "S(A(x)B) = SA(x)B fails" + at);
    require(sten_hom_right(a, b).verify(), "S[B,C] = [B,SC] fails" + at);
    require(sten_hom_left(a, b).verify(), "S[B,C] = [S^-1 B,C] fails" + at);
  }
}

inline void duality_and_decomposition(const Options&) {
  using detail::require;
  auto t0 = std::chrono::steady_clock::now();
  DualityWitness w = verify_duality_LR();
  require(verify_duality(w), "duality triangle identities fail");
  const double t_dual = detail::seconds_since(t0);
  require(t_dual < 1.0, "duality solver took " + std::to_string(t_dual) + " s");
  t0 = std::chrono::steady_clock::now();
  IsoPair iso = decompose_LZ_tensor();
  const double t_dec = detail::seconds_since(t0);
  require(iso.verify(), "LZ (x) LZ decomposition is not a chain iso");
  require(iso.forward.source() == tensor(LZ(), LZ()) && iso.forward.target() == oplus(LZ(), suspension(LZ(), -1)),
          "LZ (x) LZ decomposition has the wrong ends");
  require(t_dec < 1.0, "decomposition solver took " + std::to_string(t_dec) + " s");
}

inline void cone_constructions(const Options& o) {
  using detail::require;
  Rng rng(o.seed + 6);
  for (int i = 0; i < 50; ++i) {
    Complex A = random_complex(rng), B = random_complex(rng);
    ChainMap f = random_chain_map(rng, A, B);
    Proto u = random_proto(rng, suspension(A), B, 0);
    ConeHomotopyIso h = cone_homotopy_iso(f, u);
    require(is_chain_map(h.f_prime) && h.iso.verify(), "cone_homotopy_iso not invertible on pair " + std::to_string(i));
    RecognizedCone r = recognize_cone(cone_witnesses(f));
    require(r.g == f && r.iso.verify(), "recognize_cone does not reconstruct f on pair " + std::to_string(i));
  }
  for (int i = 0; i < 20; ++i) {
    Complex A = random_complex(rng), B = random_complex(rng);
    CylinderFactorization cf = cylinder_factorization(random_chain_map(rng, A, B));
    require(cf.equations_hold(), "cylinder equations fail on map " + std::to_string(i));
    require(same_graded_groups(homology_H(cf.middle), homology_H(B)), "H(B + Mc1_A) != H(B) on map " + std::to_string(i));
  }
}

inline void protosplit_cokernels(const Options& o) {
  using detail::require;
  Rng rng(o.seed + 7);
  for (int i = 0; i < 25; ++i) {
    const std::string at = " on pair " + std::to_string(i);
    auto [f, t] = detail::random_protosplit(rng);
    require(is_protosplitting(f, t), "fixture is not protosplit" + at);
    ProtosplitCokernel c = cokernel_protosplit(f, t);
    require(is_chain_map(c.w), "w is not a chain map" + at);
    require(compose(c.w, f).is_zero(), "w f != 0" + at);
    require(compose(c.w, c.s) == identity(c.C), "w s != 1" + at);
    require(compose(c.s, c.w) == idempotent_of(f, t), "s w != 1 - f t" + at);
    require(detail::square_zero(c.C), "cokernel has d^2 != 0" + at);
    require(check_cokernel_property(f, c.w, probe_family({f.source(), f.target(), c.C}, o.probe_depth)),
            "universal property fails against probes" + at);
  }
  Complex src = suspension(LZ(), -1);
  ChainMap f(src, LZ(), 0, {{-1, IntMatrix{{1}}}});
  Proto t(LZ(), src, 0, {{-1, IntMatrix{{1}}}});
  ProtosplitCokernel c = cokernel_protosplit(f, t);
  require(c.C == Complex::K(0), "cokernel of S^-1 LZ -> LZ is not Z");
}

inline void ell_equivalence(const Options& o) {
  using detail::require;
  for (int m = -6; m <= 6; ++m)
    for (int n = -6; n <= 6; ++n)
      require(yoneda_rank_check(m, n), "Yoneda rank check fails at (" + std::to_string(m) + ", " + std::to_string(n) + ")");
  Rng rng(o.seed + 8);
  for (int i = 0; i < 100; ++i) {
    Complex a = random_complex(rng, {.max_width = 4, .max_rank = 3});
    require(decode(encode(a)) == a, "decode(encode(A)) != A on complex " + std::to_string(i));
    EllModule F = encode(random_complex(rng, {.max_width = 4, .max_rank = 3}));
    require(encode(decode(F)) == F, "encode(decode(F)) != F on module " + std::to_string(i));
  }
}

inline void coend_colimit(const Options& o) {
  using detail::require;
  for (const auto& [name, C] : detail::fixture_categories(o.seed)) {
    LeftModule N = oplus(representable_left(C, 0), suspend(representable_left(C, C->size() - 1), 1));
    for (int K = 0; K < C->size(); ++K)
      require(verify_co_yoneda(C, K, N), name + ": co-Yoneda fails at object " + C->objects[static_cast<std::size_t>(K)]);
  }
  auto I = detail::share_category(unit_category());
  Rng rng(o.seed + 9);
  std::vector<Complex> probes = probe_family({Complex::K(0), LZ()}, o.probe_depth);
  for (int i = 0; i < 10; ++i) {
    Complex A = random_complex(rng, detail::small_shape());
    RightModule W = constant_right(I, Complex::K(0));
    LeftModule F = constant_left(I, A);
    WeightedColimit wc = weighted_colimit(W, F);
    const std::string at = " for random A " + std::to_string(i);
    require(A.is_zero_object() || invert_chain_map(compose(wc.quotient.projection, wc.coend.layout.gens.inj[0])).has_value(),
            "colim(Z, A) -> A is not an iso" + at);
    require(same_graded_groups(homology_H(wc.colim()), homology_H(A)), "H(colim(Z, A)) != H(A)" + at);
    require(verify_weighted_colimit(wc, W, F, probes), "weighted colimit property fails" + at);
  }
}

inline void cauchy_suite(const Options& o) {
  using detail::require;
  int g_cases = 0;
  for (const auto& [name, C] : detail::fixture_categories(o.seed)) {
    for (int E = 0; E < C->size(); ++E)
      for (int k = -1; k <= 1; ++k) {
        CauchyReport r = verify_cauchy_data(representable_cauchy_data(C, E, k));
        require(r.ok, name + ": representable data rejected: " + r.witness);
      }
    CauchyData scaled = representable_cauchy_data(C, 0, 1);
    for (auto& t : scaled.eta)
      for (auto& x : t.x.v) x *= 2;
    CauchyData negated = representable_cauchy_data(C, 0, 1);
    for (auto& [key, e] : negated.eps) e = -e;
    for (const CauchyData* m : {&scaled, &negated}) {
      CauchyReport r = verify_cauchy_data(*m);
      require(!r.ok && !r.witness.empty(), name + ": mutated data accepted or no witness");
    }
    if (!is_g_category(*C)) continue;
    ++g_cases;
    CauchyData cd = representable_cauchy_data(C, 0, 0);
    for (int E = 0; E < C->size(); ++E) cd = oplus(cd, representable_cauchy_data(C, E, 1));
    GRetraction g = g_retraction_from_cauchy(cd);
    require(g.natural && g.composite_is_identity, name + ": G-retraction composite is not the identity");
  }
  require(g_cases > 0, "no G-category among the fixtures");
}

inline void totalization(const Options& o) {
  using detail::require;
  Rng rng(o.seed + 11);
  for (int i = 0; i < 100; ++i)
    require(detail::square_zero(total_complex(random_double_complex(rng))),
            "Tot has d^2 != 0 on random double complex " + std::to_string(i));
  auto colim_check = [&](const std::string& name, const DoubleComplex& A) {
    if (o.window >= 0 && required_window(A) > o.window) return;
    TotViaColimit t = tot_via_weighted_colimit(A, o.window);
    require(t.verify(), name + ": colimit comparison is not a chain iso");
  };
  for (const auto& [name, A] : detail::fixture_double_complexes()) colim_check(name, A);
  for (int i = 0; i < 10; ++i) colim_check("random double complex " + std::to_string(i), random_double_complex(rng));
  for (int i = 0; i < 20; ++i) {
    DoubleComplex A = random_double_complex(rng, 2);
    Complex X = random_complex(rng, {-1, 1, 2, 2, 2});
    require(tot_adjunction_check(A, X), "tot -| i fails on pair " + std::to_string(i));
  }
  for (int i = 0; i < 5; ++i) {
    Complex X = random_complex(rng);
    require(total_complex(embed_i(X)) == X, "tot(i(X)) != X on complex " + std::to_string(i));
    require(tot_adjunction_check(embed_i(X), X), "tot -| i fails on (i(X), X) for complex " + std::to_string(i));
  }
}

struct Criterion {
  int id;
  std::string name;
  std::function<void(const Options&)> check;
};

inline Result run(const Criterion& c, const Options& o) {
  Result r{c.id, c.name, false, {}};
  try {
    c.check(o);
    r.pass = true;
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  return r;
}

inline void mutation_sensitivity(const Options& o);

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "SNF correctness", snf_correctness},
      {2, "chain axioms", chain_axioms},
      {3, "homology fixtures", homology_fixtures},
      {4, "monoidal identities", monoidal_identities},
      {5, "duality and decomposition", duality_and_decomposition},
      {6, "cone constructions", cone_constructions},
      {7, "protosplit cokernels", protosplit_cokernels},
      {8, "L equivalence", ell_equivalence},
      {9, "coend and colimit", coend_colimit},
      {10, "Cauchy suite", cauchy_suite},
      {11, "totalization", totalization},
      {12, "mutation sensitivity", mutation_sensitivity},
  };
  return all;
}

// Each flipped sign must make one of criteria 2, 4, 6, 11 fail. The most
// likely detector is tried first so a mutation is usually caught quickly.
inline void mutation_sensitivity(const Options& o) {
  struct Mutation {
    const char* name;
    int SignConventions::*member;
    std::vector<int> order;
  };
  const std::vector<Mutation> mutations{
      {"tensor", &SignConventions::tensor, {4, 2, 6, 11}},
      {"hom", &SignConventions::hom, {2, 4, 6, 11}},
      {"cone", &SignConventions::cone, {6, 2, 4, 11}},
      {"tot", &SignConventions::tot, {11, 2, 4, 6}},
  };
  for (const auto& m : mutations) {
    ScopedSignMutation flip(m.member);
    int detector = 0;
    for (int id : m.order)
      if (!run(criteria()[static_cast<std::size_t>(id - 1)], o).pass) {
        detector = id;
        break;
      }
    detail::require(detector != 0, std::string("flipping the ") + m.name + " sign goes unnoticed");
  }
}

inline std::vector<Result> run_all(const Options& o = {}) {
  std::vector<Result> out;
  for (const auto& c : criteria()) out.push_back(run(c, o));
  return out;
}

inline std::string format_line(const Result& r) {
  std::string s = std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name;
  if (!r.pass && !r.detail.empty()) s += ": " + r.detail;
  return s;
}

}  // namespace dgkit::acceptance
