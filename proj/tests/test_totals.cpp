#include <gtest/gtest.h>

#include "dgkit/random.hpp"
#include "dgkit/totals.hpp"

using namespace dgkit;

namespace {

// Z -> Z^2 -> Z with [1;-1] and [1 1] as a square: columns 0 and 1, each Z -> Z.
DoubleComplex square() {
  DoubleComplex A;
  Complex z2(0, {1, 1}, {{1, IntMatrix{{1}}}});
  A.columns[0] = z2;
  A.columns[1] = z2;
  A.delta[1] = identity(z2);
  return A;
}

DGHomElement random_dg_element(Rng& rng, const DoubleComplex& A, const DoubleComplex& B, int n) {
  DGHomElement f{n, {}};
  for (const auto& [p, bp] : B.columns)
    for (const auto& [q, aq] : A.columns) f.comps.emplace(std::make_pair(p, q), random_proto(rng, aq, bp, n - p + q));
  return f;
}

}  // namespace

TEST(Tot, Examples) {
  Complex a(0, {1, 2}, {{1, IntMatrix{{1, -1}}}});
  DoubleComplex single;
  single.columns[0] = a;
  EXPECT_EQ(total_complex(single), a);

  DoubleComplex entry;
  entry.columns[1] = Complex::K(0);
  EXPECT_EQ(total_complex(entry), Complex::K(1));

  Complex t = total_complex(square());
  EXPECT_EQ(t.ranks(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(t.d(1), (IntMatrix{{1, 1}}));
  EXPECT_EQ(t.d(2), (IntMatrix{{1}, {-1}}));
  EXPECT_TRUE(is_acyclic(t));
}

TEST(Tot, SquareZeroAndRanks) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    DoubleComplex A = random_double_complex(rng);
    ASSERT_TRUE(A.validate().ok());
    Complex t = total_complex(A);  // the constructor checks d^2 = 0
    for (int n = t.lo() - 1; n <= t.hi() + 1; ++n) {
      std::size_t r = 0;
      for (const auto& [m, c] : A.columns) r += c.rank(n - m);
      EXPECT_EQ(t.rank(n), r);
    }
  }
}

TEST(Tot, EmbedI) {
  EXPECT_TRUE(embed_i(Complex()).columns.empty());
  EXPECT_EQ(embed_i(Complex::K(0)).columns.size(), 1u);
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    Complex X = random_complex(rng);
    EXPECT_EQ(total_complex(embed_i(X)), X);
    DGHomElement u = tot_unit(embed_i(X));
    EXPECT_TRUE(u == dg_identity(embed_i(X)));
  }
}

TEST(DGHom, IdentityIsCycle) {
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    DoubleComplex A = random_double_complex(rng);
    EXPECT_TRUE(dg_hom_differential(A, A, dg_identity(A)).is_zero());
  }
}

TEST(DGHom, SingleEntryCollapses) {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    DoubleComplex A, B;
    const int p = uniform(rng, -1, 1), q = uniform(rng, -1, 1);
    A.columns[q] = random_complex(rng);
    B.columns[p] = random_complex(rng);
    const int n = uniform(rng, -1, 1);
    DGHomElement f = random_dg_element(rng, A, B, n);
    DGHomElement df = dg_hom_differential(A, B, f);
    EXPECT_EQ(dg_comp(df, A, B, p, q), Int(sign_pow(p)) * d_hom(f.comps.at({p, q})));
  }
}

TEST(DGHom, SquareZeroAndLeibniz) {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    DoubleComplex A = random_double_complex(rng, 2), B = random_double_complex(rng, 2), C = random_double_complex(rng, 2);
    const int n = uniform(rng, -1, 1), k = uniform(rng, -1, 1);
    DGHomElement f = random_dg_element(rng, A, B, n), g = random_dg_element(rng, B, C, k);
    EXPECT_TRUE(dg_hom_differential(A, B, dg_hom_differential(A, B, f)).is_zero());
    DGHomElement lhs = dg_hom_differential(A, C, dg_compose(A, B, C, g, f));
    DGHomElement r1 = dg_compose(A, B, C, dg_hom_differential(B, C, g), f);
    DGHomElement r2 = dg_compose(A, B, C, g, dg_hom_differential(A, B, f));
    for (auto& [key, v] : r2.comps) v = Int(sign_pow(k)) * v;
    DGHomElement rhs{lhs.degree, {}};
    for (const auto& [p, cp] : C.columns)
      for (const auto& [q, aq] : A.columns)
        rhs.comps.emplace(std::make_pair(p, q), dg_comp(r1, A, C, p, q) + dg_comp(r2, A, C, p, q));
    EXPECT_TRUE(lhs == rhs);
  }
}

TEST(DGHom, CompositionUnitAndAssociativity) {
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    DoubleComplex A = random_double_complex(rng, 2), B = random_double_complex(rng, 2), C = random_double_complex(rng, 2),
                  D = random_double_complex(rng, 2);
    DGHomElement f = random_dg_element(rng, A, B, uniform(rng, -1, 1));
    DGHomElement g = random_dg_element(rng, B, C, uniform(rng, -1, 1));
    DGHomElement h = random_dg_element(rng, C, D, uniform(rng, -1, 1));
    EXPECT_TRUE(dg_compose(A, B, B, dg_identity(B), f) == f);
    EXPECT_TRUE(dg_compose(A, A, B, f, dg_identity(A)) == f);
    EXPECT_TRUE(dg_compose(A, C, D, h, dg_compose(A, B, C, g, f)) == dg_compose(A, B, D, dg_compose(B, C, D, h, g), f));
  }
  // single entries multiply at the matching index
  DoubleComplex A = embed_i(Complex::K(0)), B = embed_i(Complex::K(0));
  DGHomElement f{0, {{{0, 0}, Proto(Complex::K(0), Complex::K(0), 0, {{0, IntMatrix{{3}}}})}}};
  DGHomElement g{0, {{{0, 0}, Proto(Complex::K(0), Complex::K(0), 0, {{0, IntMatrix{{5}}}})}}};
  EXPECT_EQ(dg_compose(A, B, B, g, f).comps.at({0, 0}).comp(0), (IntMatrix{{15}}));
}

TEST(DGHom, ComplexSquaresToZero) {
  Rng rng(7);
  for (int i = 0; i < 10; ++i) {
    DoubleComplex A = random_double_complex(rng, 2), B = random_double_complex(rng, 2);
    DGHomSpace H(A, B);  // the Complex constructor rejects d^2 != 0
    EXPECT_GE(H.complex().total_rank(), 0u);
    const int n = uniform(rng, -1, 1);
    DGHomElement f = random_dg_element(rng, A, B, n);
    EXPECT_TRUE(H.unflatten(n, H.flatten(f)) == f);
  }
}

TEST(WeightJ, Shape) {
  LeftModule J = weight_J(3);
  EXPECT_TRUE(validate_left_module(J).ok());
  EXPECT_EQ(J.value(window_index(0, 3)), LZ());
  // delta^1 delta^0 = 0: the composite of two generator actions
  const int i = window_index(-1, 3);
  Proto d0 = compose(J.action(i, i + 1), left_unitor_inverse(J.value(i)));
  Proto d1 = compose(J.action(i + 1, i + 2), left_unitor_inverse(J.value(i + 1)));
  EXPECT_TRUE(compose(d1, d0).is_zero());
  LeftModule J2 = weight_J(2);
  for (int m = -2; m <= 2; ++m) {
    EXPECT_EQ(J2.value(window_index(m, 2)), J.value(window_index(m, 3)));
    if (m < 2) {
      EXPECT_EQ(J2.action(window_index(m, 2), window_index(m + 1, 2)).comp(m),
                J.action(window_index(m, 3), window_index(m + 1, 3)).comp(m));
    }
  }
}

TEST(TotColimit, Examples) {
  DoubleComplex single;
  single.columns[0] = Complex(0, {1, 1}, {{1, IntMatrix{{2}}}});
  TotViaColimit t = tot_via_weighted_colimit(single);
  EXPECT_TRUE(t.verify());
  for (int n = 0; n <= 1; ++n) EXPECT_EQ(t.forward.comp(n), IntMatrix::identity(1));

  TotViaColimit s = tot_via_weighted_colimit(square());
  EXPECT_TRUE(s.verify());
  EXPECT_TRUE(same_graded_groups(homology_H(s.wc.colim()), homology_H(s.tot)));

  DoubleComplex far;
  far.columns[4] = Complex::K(0);
  EXPECT_THROW(tot_via_weighted_colimit(far, 2), SupportExceedsWindow);
  EXPECT_TRUE(tot_via_weighted_colimit(far).verify());
}

TEST(TotColimit, Random) {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    DoubleComplex A = random_double_complex(rng);
    TotViaColimit t = tot_via_weighted_colimit(A);
    EXPECT_TRUE(t.verify());
    EXPECT_EQ(t.wc.colim().ranks(), t.tot.ranks());
  }
}

TEST(TotAdjunction, Examples) {
  Rng rng(9);
  for (int i = 0; i < 5; ++i) {
    Complex X = random_complex(rng);
    DoubleComplex single = embed_i(random_complex(rng));
    EXPECT_TRUE(tot_adjunction_check(single, X));
  }
  // two columns joined by the identity, X = K(0)
  DoubleComplex A;
  A.columns[0] = Complex::K(0);
  A.columns[1] = Complex::K(0);
  A.delta[1] = identity(Complex::K(0));
  EXPECT_TRUE(tot_adjunction_check(A, Complex::K(0)));
  DGHomSpace dg(A, embed_i(Complex::K(0)));
  // prod_m S^{-m}[A_m, K(0)]: Z in degree 0 (m = 0) and Z in degree -1 (m = 1)
  EXPECT_EQ(dg.complex().lo(), -1);
  EXPECT_EQ(dg.complex().ranks(), (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(dg.complex().d(0), (IntMatrix{{-1}}));
}

TEST(TotAdjunction, RandomAndNatural) {
  Rng rng(10);
  for (int i = 0; i < 20; ++i) {
    DoubleComplex A = random_double_complex(rng, 2);
    Complex X = random_complex(rng, {-1, 1, 2, 2, 2});
    EXPECT_TRUE(tot_adjunction_check(A, X));
    // naturality in X: Phi(i(g) o f) = g o Phi(f)
    Complex X2 = random_complex(rng, {-1, 1, 2, 2, 2});
    ChainMap g = random_chain_map(rng, X, X2);
    DoubleComplex iX = embed_i(X), iX2 = embed_i(X2);
    DGHomElement ig{0, {}};
    if (!X.is_zero_object() && !X2.is_zero_object()) ig.comps.emplace(std::make_pair(0, 0), g);
    const int n = uniform(rng, -1, 1);
    DGHomElement f = random_dg_element(rng, A, iX, n);
    EXPECT_EQ(dg_to_tot_map(A, X2, dg_compose(A, iX, iX2, ig, f)), compose(g, dg_to_tot_map(A, X, f)));
  }
}
