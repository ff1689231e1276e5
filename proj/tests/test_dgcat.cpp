#include <gtest/gtest.h>

#include "dgkit/dgcat.hpp"
#include "dgkit/random.hpp"

using namespace dgkit;

namespace {

CategoryPtr small_dgab(Rng& rng, int n = 2) {
  ComplexShape shape{-1, 1, 2, 1, 2};
  std::vector<std::string> names;
  std::vector<Complex> objs;
  for (int i = 0; i < n; ++i) {
    names.push_back("X" + std::to_string(i));
    objs.push_back(random_complex(rng, shape));
  }
  return std::make_shared<const FiniteDGCategory>(dgab_full_subcategory(names, objs));
}

CategoryPtr graded_category() {
  return std::make_shared<const FiniteDGCategory>(
      dgab_full_subcategory({"A", "B"}, {Complex::K(0), Complex::graded(0, {1, 1})}));
}

// The right module Z over Z[e]/e^2 with e acting by 0, and the left module
// Z^2 with e acting by [[0,0],[2,0]].
std::pair<RightModule, LeftModule> torsion_pair() {
  auto C = std::make_shared<const FiniteDGCategory>(dual_numbers_category());
  RightModule M{C, {Complex::K(0)}, {{{0, 0}, ChainMap(Complex::K(0, 2), Complex::K(0), 0, {{0, IntMatrix{{1, 0}}}})}}};
  LeftModule N{C, {Complex::K(0, 2)},
               {{{0, 0}, ChainMap(Complex::K(0, 4), Complex::K(0, 2), 0, {{0, IntMatrix{{1, 0, 0, 0}, {0, 1, 2, 0}}}})}}};
  return {M, N};
}

}  // namespace

TEST(Category, BuiltinsValidate) {
  EXPECT_TRUE(validate_dg_category(unit_category()).ok());
  EXPECT_TRUE(validate_dg_category(dual_numbers_category()).ok());
  EXPECT_TRUE(validate_dg_category(ell_window_category(2)).ok());
  EXPECT_TRUE(validate_dg_category(*graded_category()).ok());
  Rng rng(1);
  for (int i = 0; i < 5; ++i) {
    auto r = validate_dg_category(*small_dgab(rng));
    EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.violations[0]);
  }
}

TEST(Category, ViolationsReported) {
  FiniteDGCategory C = dual_numbers_category();
  // 1.e = 0 breaks the unit law
  C.composition[{0, 0, 0}] = ChainMap(Complex::K(0, 4), Complex::K(0, 2), 0, {{0, IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}}}});
  auto r = validate_dg_category(C);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.violations[0].find("unit law"), std::string::npos);

  // a composition that is not a chain map
  FiniteDGCategory D = dgab_full_subcategory({"L"}, {LZ()});
  auto& c = D.composition.at({0, 0, 0});
  for (int n = c.source().lo(); n <= c.source().hi(); ++n)
    if (!c.comp(n).empty() && c.comp(n).rows() > 0 && c.comp(n).cols() > 0) {
      IntMatrix m = c.comp(n);
      m(0, 0) += 1;
      c.set(n, m);
      break;
    }
  auto r2 = validate_dg_category(D);
  ASSERT_FALSE(r2.ok());
  EXPECT_NE(r2.violations[0].find("Leibniz"), std::string::npos);
}

TEST(Category, EllWindowComposition) {
  FiniteDGCategory L = ell_window_category(1);
  // objects -1, 0, 1: the two generators compose to zero
  EXPECT_TRUE(L.hom(0, 2).is_zero_object());
  EXPECT_EQ(L.compose(0, 1, 1, {0, {1}}, {0, {1}}).v, IntVec{1});
}

TEST(Modules, RepresentablesSuspensionsSums) {
  Rng rng(2);
  for (int i = 0; i < 4; ++i) {
    auto C = small_dgab(rng);
    for (int K = 0; K < C->size(); ++K)
      for (int k = -1; k <= 1; ++k) {
        EXPECT_TRUE(validate_right_module(suspend(representable_right(C, K), k)).ok());
        EXPECT_TRUE(validate_left_module(suspend(representable_left(C, K), k)).ok());
      }
    EXPECT_TRUE(validate_right_module(oplus(representable_right(C, 0), suspend(representable_right(C, 1), 1))).ok());
    EXPECT_TRUE(validate_left_module(oplus(representable_left(C, 0), suspend(representable_left(C, 1), -1))).ok());
  }
}

TEST(Modules, ContravariantFunctorSigns) {
  // With (Mf)(y) = (-1)^{|y||f|} rho(y (x) f): M(g o f) = (-1)^{|g||f|} Mf o Mg.
  Rng rng(3);
  auto C = small_dgab(rng);
  RightModule M = representable_right(C, 1);
  auto dot = [&](int u, int v, const Elem& z, const Elem& f) {
    Elem r = M.act(u, v, z, f);
    for (auto& x : r.v) x *= sign_pow(z.degree * f.degree);
    return r;
  };
  int checked = 0;
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v)
      for (int w = 0; w < 2; ++w) {
        const Complex &uv = C->hom(u, v), &vw = C->hom(v, w), &mw = M.value(w);
        for (int p = uv.lo(); p <= uv.hi(); ++p)
          for (int q = vw.lo(); q <= vw.hi(); ++q)
            for (int a = mw.lo(); a <= mw.hi(); ++a)
              for (std::size_t fi = 0; fi < uv.rank(p); ++fi)
                for (std::size_t gi = 0; gi < vw.rank(q); ++gi)
                  for (std::size_t zi = 0; zi < mw.rank(a); ++zi) {
                    Elem f = basis_elem(uv, p, fi), g = basis_elem(vw, q, gi), z = basis_elem(mw, a, zi);
                    Elem lhs = dot(u, w, z, C->compose(u, v, w, g, f));
                    Elem rhs = dot(u, v, dot(v, w, z, g), f);
                    for (auto& x : rhs.v) x *= sign_pow(p * q);
                    EXPECT_EQ(lhs.v, rhs.v);
                    ++checked;
                  }
      }
  EXPECT_GT(checked, 0);
}

TEST(Coend, TorsionExample) {
  auto [M, N] = torsion_pair();
  EXPECT_TRUE(validate_right_module(M).ok());
  EXPECT_TRUE(validate_left_module(N).ok());
  Coend c = coend_tensor(M, N);
  EXPECT_TRUE(c.presented.differential_well_defined());
  EXPECT_EQ(c.presented.group(0).to_string(), "Z + Z/2");
  EXPECT_FALSE(c.presented.is_free());
  EXPECT_THROW(c.presented.to_complex(), Error);
}

TEST(Coend, CoYoneda) {
  Rng rng(4);
  for (int i = 0; i < 4; ++i) {
    auto C = small_dgab(rng);
    for (int K = 0; K < C->size(); ++K) {
      LeftModule N = oplus(representable_left(C, 0), suspend(representable_left(C, 1), 1));
      EXPECT_TRUE(verify_co_yoneda(C, K, N));
      Coend co = coend_tensor(representable_right(C, K), N);
      for (int n = N.value(K).lo() - 1; n <= N.value(K).hi() + 1; ++n)
        EXPECT_EQ(co.presented.group(n), FPAbGroup::free(N.value(K).rank(n)));
    }
  }
  auto [M, N] = torsion_pair();
  EXPECT_TRUE(verify_co_yoneda(M.base, 0, N));
}

TEST(WeightedColimit, OverUnitCategory) {
  auto I = std::make_shared<const FiniteDGCategory>(unit_category());
  Rng rng(5);
  std::vector<Complex> probes{Complex::K(0), Complex::K(1), LZ()};
  for (int i = 0; i < 4; ++i) {
    Complex A = random_complex(rng, {-1, 1, 2, 1, 2});
    RightModule W = constant_right(I, Complex::K(0));
    LeftModule F = constant_left(I, A);
    WeightedColimit wc = weighted_colimit(W, F);
    EXPECT_TRUE(invert_chain_map(compose(wc.quotient.projection, wc.coend.layout.gens.inj[0])).has_value());
    EXPECT_EQ(wc.colim().ranks(), A.ranks());
    EXPECT_TRUE(verify_weighted_colimit(wc, W, F, probes));
  }
  WeightedColimit z = weighted_colimit(constant_right(I, Complex::K(0)), constant_left(I, Complex()));
  EXPECT_TRUE(z.colim().is_zero_object());
}

TEST(WeightedColimit, RepresentableWeight) {
  Rng rng(6);
  auto C = small_dgab(rng);
  LeftModule F = representable_left(C, 0);
  for (int K = 0; K < C->size(); ++K) {
    RightModule W = representable_right(C, K);
    WeightedColimit wc = weighted_colimit(W, F);
    GradedGroups g = wc.coend.presented.groups();
    for (int n = F.value(K).lo(); n <= F.value(K).hi(); ++n) EXPECT_EQ(g[n], FPAbGroup::free(F.value(K).rank(n)));
    EXPECT_TRUE(verify_weighted_colimit(wc, W, F, {Complex::K(0), LZ()}));
  }
}

TEST(WeightedColimit, RejectsWrongCurrying) {
  // A currying check against a perturbed colimit projection must fail.
  auto I = std::make_shared<const FiniteDGCategory>(unit_category());
  RightModule W = constant_right(I, Complex::K(0));
  LeftModule F = constant_left(I, LZ());
  WeightedColimit wc = weighted_colimit(W, F);
  wc.quotient.projection = Int(2) * wc.quotient.projection;
  EXPECT_FALSE(verify_weighted_colimit(wc, W, F, {Complex::K(0)}));
}

TEST(Cauchy, RepresentableData) {
  Rng rng(7);
  auto C = small_dgab(rng);
  for (int E = 0; E < C->size(); ++E)
    for (int k = -2; k <= 2; ++k) {
      CauchyData cd = representable_cauchy_data(C, E, k);
      auto rep = verify_cauchy_data(cd);
      EXPECT_TRUE(rep.ok) << rep.witness;
    }
  CauchyData sum = oplus(representable_cauchy_data(C, 0, 0), representable_cauchy_data(C, 1, 1));
  EXPECT_TRUE(verify_cauchy_data(sum).ok);
}

TEST(Cauchy, MutationProducesWitness) {
  auto C = graded_category();
  CauchyData cd = representable_cauchy_data(C, 1, 1);
  cd.eps[{1, 1}] = -cd.eps[{1, 1}];
  auto rep = verify_cauchy_data(cd);
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.witness.empty());

  CauchyData bad = representable_cauchy_data(C, 0, 0);
  bad.eta[0].x.v[0] = 2;
  auto r2 = verify_cauchy_data(bad);
  EXPECT_FALSE(r2.ok);
  EXPECT_NE(r2.witness.find("snake"), std::string::npos);
}

TEST(Cauchy, GRetraction) {
  auto C = graded_category();
  ASSERT_TRUE(is_g_category(*C));
  // hom(-, E) + S hom(-, E)
  CauchyData cd = oplus(representable_cauchy_data(C, 1, 0), representable_cauchy_data(C, 1, 1));
  GRetraction g = g_retraction_from_cauchy(cd);
  EXPECT_TRUE(g.natural);
  EXPECT_TRUE(g.composite_is_identity);
  EXPECT_EQ(g.summands.size(), 2u);

  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    CauchyData r = representable_cauchy_data(C, uniform(rng, 0, 1), uniform(rng, -2, 2));
    const int extra = uniform(rng, 0, 2);
    for (int j = 0; j < extra; ++j) r = oplus(r, representable_cauchy_data(C, uniform(rng, 0, 1), uniform(rng, -2, 2)));
    GRetraction gr = g_retraction_from_cauchy(r);
    EXPECT_TRUE(gr.natural);
    EXPECT_TRUE(gr.composite_is_identity);
  }

  auto D = std::make_shared<const FiniteDGCategory>(dgab_full_subcategory({"L"}, {LZ()}));
  ASSERT_FALSE(is_g_category(*D));
  EXPECT_THROW(g_retraction_from_cauchy(representable_cauchy_data(D, 0)), CauchyDataInvalid);
}

TEST(ProtosplitQuotient, SplitIdempotentOnRepresentable) {
  auto C = std::make_shared<const FiniteDGCategory>(
      dgab_full_subcategory({"X", "L"}, {Complex::K(0, 2), LZ()}));
  ASSERT_TRUE(validate_dg_category(*C).ok());
  Elem e0{0, {1, 0, 0, 0}};
  SplitRepresentable s = split_representable(C, 0, e0);
  EXPECT_TRUE(validate_right_module(s.M).ok());
  auto rep = verify_protosplit_quotient(s.M, 0, s.gamma, s.sigma);
  EXPECT_TRUE(rep.ok) << rep.failure;
  EXPECT_EQ(rep.e, e0);
}

TEST(ProtosplitQuotient, TorsionModuleIsNotARetract) {
  auto I = std::make_shared<const FiniteDGCategory>(unit_category());
  Complex M2(0, {1, 1}, {{1, IntMatrix{{2}}}});
  RightModule M = constant_right(I, M2);
  EXPECT_EQ(format_graded(homology_H(M2)), "H_0 = Z/2, H_1 = 0");
  // every chain map K(0) -> M2 is c at degree 0; every chain map M2 -> K(0) is 0
  EXPECT_TRUE(chain_maps_basis(M2, Complex::K(0)).empty());
  for (int c = -3; c <= 3; ++c) {
    ProtonatTransform gamma{0, {ChainMap(Complex::K(0), M2, 0, {{0, IntMatrix{{c}}}})}};
    ProtonatTransform sigma{0, {zero_proto(M2, Complex::K(0))}};
    EXPECT_FALSE(verify_protosplit_quotient(M, 0, gamma, sigma).ok);
  }
}

TEST(Presentation, Representable) {
  Rng rng(10);
  auto C = small_dgab(rng);
  for (int K = 0; K < C->size(); ++K) {
    RightModule M = representable_right(C, K);
    bool nonzero = false;
    for (const auto& v : M.values) nonzero = nonzero || !v.is_zero_object();
    if (!nonzero) continue;
    ModulePresentation p = module_presentation(M);
    EXPECT_EQ(p.cover.gens.size(), 1u);
    EXPECT_TRUE(p.relations.gens.empty());
    EXPECT_TRUE(p.verify(M));
  }
}

TEST(Presentation, TorsionHomology) {
  auto I = std::make_shared<const FiniteDGCategory>(unit_category());
  Complex M2(0, {1, 1}, {{1, IntMatrix{{2}}}});
  RightModule M = constant_right(I, M2);
  ModulePresentation p = module_presentation(M);
  EXPECT_TRUE(p.verify(M));
  // the cokernel of phi recovers H_0 = Z/2
  const Proto& phi = p.phi.comps[0];
  const Complex& F0 = p.cover.F.value(0);
  PresentedComplex pc{F0, phi};
  auto q = pc.to_complex();
  EXPECT_EQ(format_graded(homology_H(q.complex)), "H_0 = Z/2, H_1 = 0");
}

TEST(Presentation, RandomModules) {
  Rng rng(11);
  for (int i = 0; i < 3; ++i) {
    auto C = small_dgab(rng);
    RightModule M = oplus(suspend(representable_right(C, 0), uniform(rng, -1, 1)), representable_right(C, 1));
    ModulePresentation p = module_presentation(M);
    EXPECT_TRUE(p.verify(M));
  }
}
