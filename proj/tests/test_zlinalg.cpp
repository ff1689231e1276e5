#include <gtest/gtest.h>

#include <random>

#include "dgkit/zlinalg.hpp"

using namespace dgkit;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// Cofactor expansion; independent of the Bareiss routine.
Int det_cofactor(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Int total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != j) minor(i - 1, kk++) = m(i, k);
    Int term = m(0, j) * det_cofactor(minor);
    total += (j % 2 == 0) ? term : Int(-term);
  }
  return total;
}

void expect_smith_form(const IntMatrix& M, const SmithDecomposition& s) {
  EXPECT_EQ(s.U * M * s.V, s.D);
  EXPECT_EQ(s.U * s.U_inv, IntMatrix::identity(M.rows()));
  EXPECT_EQ(s.V * s.V_inv, IntMatrix::identity(M.cols()));
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) EXPECT_EQ(s.D(i, j), 0);
  for (std::size_t i = 0; i < s.rank; ++i) {
    EXPECT_GT(s.D(i, i), 0);
    if (i + 1 < s.rank) EXPECT_EQ(s.D(i + 1, i + 1) % s.D(i, i), 0);
  }
  for (std::size_t i = s.rank; i < std::min(M.rows(), M.cols()); ++i) EXPECT_EQ(s.D(i, i), 0);
}

}  // namespace

TEST(Smith, OneByOne) {
  auto s = smith_normal_form(IntMatrix{{6}});
  EXPECT_EQ(s.D, (IntMatrix{{6}}));
  EXPECT_EQ(s.U, (IntMatrix{{1}}));
  EXPECT_EQ(s.V, (IntMatrix{{1}}));
}

TEST(Smith, DiagTwoThree) {
  IntMatrix M{{2, 0}, {0, 3}};
  auto s = smith_normal_form(M);
  // gcd(2,3) = 1 and the product of invariant factors is |det| = 6.
  EXPECT_EQ(s.D, (IntMatrix{{1, 0}, {0, 6}}));
  expect_smith_form(M, s);
}

TEST(Smith, Empty) {
  auto s = smith_normal_form(IntMatrix(0, 0));
  EXPECT_EQ(s.rank, 0u);
  EXPECT_EQ(s.D.rows(), 0u);
  auto t = smith_normal_form(IntMatrix(3, 0));
  EXPECT_EQ(t.U, IntMatrix::identity(3));
}

TEST(Smith, RandomProperties) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> dim(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    IntMatrix M = random_matrix(rng, dim(rng), dim(rng), -5, 5);
    auto s = smith_normal_form(M);
    expect_smith_form(M, s);
    Int du = det_cofactor(s.U), dv = det_cofactor(s.V);
    EXPECT_TRUE(du == 1 || du == -1);
    EXPECT_TRUE(dv == 1 || dv == -1);
    EXPECT_EQ(determinant(s.U), du);
    EXPECT_EQ(s.rank + kernel_basis(M).cols(), M.cols());
  }
}

TEST(Smith, LargeEntriesStayExact) {
  std::mt19937_64 rng(3);
  IntMatrix M = random_matrix(rng, 9, 9, -1000000, 1000000);
  auto s = smith_normal_form(M);
  expect_smith_form(M, s);
  Int prod = 1;
  for (std::size_t i = 0; i < s.rank; ++i) prod *= s.D(i, i);
  Int d = det_cofactor(M.block(0, 0, 6, 6));
  EXPECT_EQ(determinant(M.block(0, 0, 6, 6)), d);
  Int full = determinant(M);
  EXPECT_EQ(prod, full < 0 ? Int(-full) : full);
}

TEST(Solve, Examples) {
  EXPECT_EQ(solve(IntMatrix{{2}}, {4}), (IntVec{2}));
  EXPECT_FALSE(solve(IntMatrix{{2}}, {3}).has_value());
  EXPECT_EQ(solve(IntMatrix{{1, 1}, {0, 2}}, {3, 4}), (IntVec{1, 2}));
  EXPECT_THROW(solve(IntMatrix{{1, 1}}, {1, 2}), DimensionMismatch);
}

TEST(Solve, RandomConsistent) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix M = random_matrix(rng, 4, 3, -4, 4);
    IntMatrix x = random_matrix(rng, 3, 1, -3, 3);
    IntVec b = (M * x).col(0);
    auto y = solve(M, b);
    ASSERT_TRUE(y.has_value());
    EXPECT_EQ(M.apply(*y), b);
  }
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(IntMatrix{{0}}).cols(), 1u);
  auto k = kernel_basis(IntMatrix{{1, 1}});
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_TRUE(same_lattice(k, IntMatrix{{1}, {-1}}));
  auto k2 = kernel_basis(IntMatrix{{2, 4}});
  ASSERT_EQ(k2.cols(), 1u);
  EXPECT_TRUE(same_lattice(k2, IntMatrix{{2}, {-1}}));
  EXPECT_TRUE((IntMatrix{{2, 4}} * k2).is_zero());
}

TEST(Cokernel, Examples) {
  EXPECT_EQ(cokernel(IntMatrix{{2}}).group.to_string(), "Z/2");
  EXPECT_TRUE(cokernel(IntMatrix{{1}}).group.is_trivial());
  EXPECT_EQ(cokernel(IntMatrix(1, 0)).group.to_string(), "Z");
  auto c = cokernel(IntMatrix{{2, 0}, {0, 3}, {0, 0}});
  EXPECT_EQ(c.group.to_string(), "Z + Z/6");
  EXPECT_EQ(c.projection * c.section, IntMatrix::identity(2));
}

TEST(Cokernel, ProjectionKillsImage) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix M = random_matrix(rng, 4, 3, -3, 3);
    auto c = cokernel(M);
    IntMatrix img = c.projection * M;
    // image lands in the relation subgroup of the canonical presentation
    for (std::size_t j = 0; j < img.cols(); ++j)
      EXPECT_TRUE(element_equal(c.group, img.col(j), IntVec(img.rows())));
    EXPECT_EQ(c.projection * c.section, IntMatrix::identity(c.projection.rows()));
  }
}

TEST(Group, ToString) {
  EXPECT_EQ(FPAbGroup::free(0).to_string(), "0");
  EXPECT_EQ(FPAbGroup::free(2).to_string(), "Z^2");
  EXPECT_EQ(FPAbGroup::from_presentation(IntMatrix{{0}, {3}}).to_string(), "Z + Z/3");
}

TEST(ElementEqual, Examples) {
  auto z2 = FPAbGroup::cyclic(2);
  EXPECT_TRUE(element_equal(z2, {1}, {3}));
  EXPECT_FALSE(element_equal(FPAbGroup::free(1), {1}, {2}));
  auto g = FPAbGroup::from_presentation(IntMatrix{{0}, {3}});
  EXPECT_TRUE(element_equal(g, {2, 5}, {2, 2}));
  EXPECT_FALSE(element_equal(g, {2, 5}, {2, 3}));
  EXPECT_THROW(element_equal(g, {1}, {1}), DimensionMismatch);
}

TEST(ElementEqual, EquivalenceRelation) {
  std::mt19937_64 rng(23);
  auto g = FPAbGroup::from_presentation(IntMatrix{{2, 0}, {0, 6}, {0, 0}});
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 300; ++trial) {
    IntVec x{d(rng), d(rng), d(rng)}, y{d(rng), d(rng), d(rng)}, z{d(rng), d(rng), d(rng)};
    y[2] = x[2];
    z[2] = x[2];
    EXPECT_TRUE(element_equal(g, x, x));
    EXPECT_EQ(element_equal(g, x, y), element_equal(g, y, x));
    if (element_equal(g, x, y) && element_equal(g, y, z)) EXPECT_TRUE(element_equal(g, x, z));
  }
}

TEST(Matrix, Kron) {
  IntMatrix a{{1, 2}}, b{{0}, {3}};
  EXPECT_EQ(kron(a, b), (IntMatrix{{0, 0}, {3, 6}}));
  EXPECT_THROW(IntMatrix{{1}} * IntMatrix(2, 2), ShapeMismatch);
}
