#include <gtest/gtest.h>

#include <chrono>

#include "dgkit/monoidal.hpp"
#include "dgkit/random.hpp"

using namespace dgkit;

namespace {

// Direct evaluation of (f (x) g)(a (x) b) = (-1)^{|g||a|} f(a) (x) g(b) on one basis tensor,
// returned as a coordinate vector in the target tensor basis.
IntVec tensor_on_basis(const Proto& f, const Proto& g, const TensorBasisIndex& b) {
  TensorProduct tgt(f.target(), g.target());
  const int n = b.p + b.q + f.degree() + g.degree();
  IntVec out(tgt.complex().rank(n));
  IntMatrix fa = f.comp(b.p), gb = g.comp(b.q);
  const int s = sign_pow(static_cast<long long>(g.degree()) * b.p);
  for (std::size_t i = 0; i < fa.rows(); ++i)
    for (std::size_t j = 0; j < gb.rows(); ++j)
      out[tgt.position({b.p + f.degree(), b.q + g.degree(), i, j})] += s * fa(i, b.left) * gb(j, b.right);
  return out;
}

}  // namespace

TEST(Tensor, UnitAndRanks) {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    Complex a = random_complex(rng);
    EXPECT_EQ(tensor(Complex::K(0), a), a);
    EXPECT_EQ(tensor(a, Complex::K(0)), a);
    EXPECT_TRUE(is_chain_map(left_unitor(a)));
  }
  Complex t = tensor(LZ(), LZ());
  EXPECT_EQ(t.lo(), -2);
  EXPECT_EQ(t.ranks(), (std::vector<std::size_t>{1, 2, 1}));
}

TEST(Tensor, RanksAreConvolutions) {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    Complex a = random_complex(rng), b = random_complex(rng);
    Complex t = tensor(a, b);
    for (int n = a.lo() + b.lo() - 1; n <= a.hi() + b.hi() + 1; ++n) {
      std::size_t expect = 0;
      for (int p = a.lo(); p <= a.hi(); ++p) expect += a.rank(p) * b.rank(n - p);
      EXPECT_EQ(t.rank(n), expect);
    }
  }
}

TEST(Tensor, LeibnizOnBasis) {
  // d(a (x) b) = da (x) b + (-1)^p a (x) db, checked as d = d^A (x) 1 + 1 (x) d^B with
  // the proto tensor of the differentials viewed as degree -1 maps.
  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    Complex a = random_complex(rng), b = random_complex(rng);
    Proto da(a, a, -1), db(b, b, -1);
    for (int q = a.lo(); q <= a.hi(); ++q) da.set(q, a.d(q));
    for (int q = b.lo(); q <= b.hi(); ++q) db.set(q, b.d(q));
    Proto d = tensor_proto(da, identity(b)) + tensor_proto(identity(a), db);
    Complex t = tensor(a, b);
    for (int n = t.lo(); n <= t.hi(); ++n) EXPECT_EQ(d.comp(n), t.d(n));
  }
}

TEST(TensorProto, MatchesDirectEvaluation) {
  Rng rng(4);
  for (int i = 0; i < 30; ++i) {
    Complex a = random_complex(rng), b = random_complex(rng), c = random_complex(rng), e = random_complex(rng);
    Proto f = random_proto(rng, a, c, uniform(rng, -1, 1)), g = random_proto(rng, b, e, uniform(rng, -1, 1));
    Proto fg = tensor_proto(f, g);
    TensorProduct src(a, b);
    for (int n = src.complex().lo(); n <= src.complex().hi(); ++n)
      for (std::size_t k = 0; k < src.complex().rank(n); ++k)
        EXPECT_EQ(fg.comp(n).col(k), tensor_on_basis(f, g, src.basis_index(n, k)));
  }
}

TEST(TensorProto, IdentityAndInterchange) {
  Complex k1 = Complex::K(1);
  EXPECT_EQ(tensor_proto(identity(LZ()), identity(k1)), identity(tensor(LZ(), k1)));
  // Degree-1 maps K(0) -> K(1): (f (x) 1)(1 (x) g) = -(1 (x) g)(f (x) 1).
  Proto f(Complex::K(0), k1, 1, {{0, IntMatrix{{1}}}});
  Proto g = f;
  Proto lhs = compose(tensor_proto(f, identity(k1)), tensor_proto(identity(Complex::K(0)), g));
  Proto rhs = compose(tensor_proto(identity(k1), g), tensor_proto(f, identity(Complex::K(0))));
  EXPECT_EQ(lhs.comp(0), (IntMatrix{{1}}));
  EXPECT_EQ(rhs.comp(0), (IntMatrix{{-1}}));
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    Complex a = random_complex(rng), b = random_complex(rng), c = random_complex(rng), e = random_complex(rng);
    Proto f2 = random_proto(rng, a, c, uniform(rng, -2, 2)), g2 = random_proto(rng, b, e, uniform(rng, -2, 2));
    Proto l = compose(tensor_proto(f2, identity(e)), tensor_proto(identity(a), g2));
    Proto r = compose(tensor_proto(identity(c), g2), tensor_proto(f2, identity(b)));
    EXPECT_EQ(l, Int(sign_pow(f2.degree() * g2.degree())) * r);
    EXPECT_EQ(l, tensor_proto(f2, g2));
    ChainMap u = random_chain_map(rng, a, c), v = random_chain_map(rng, b, e);
    EXPECT_TRUE(is_chain_map(tensor_proto(u, v)));
  }
}

TEST(Symmetry, Examples) {
  EXPECT_EQ(symmetry(Complex::K(0), Complex::K(0)).comp(0), (IntMatrix{{1}}));
  EXPECT_EQ(symmetry(Complex::K(1), Complex::K(1)).comp(2), (IntMatrix{{-1}}));
}

TEST(Symmetry, InvolutiveAndNatural) {
  Rng rng(6);
  for (int i = 0; i < 40; ++i) {
    Complex a = random_complex(rng), b = random_complex(rng), c = random_complex(rng), e = random_complex(rng);
    ChainMap s = symmetry(a, b);
    EXPECT_TRUE(is_chain_map(s));
    EXPECT_EQ(compose(symmetry(b, a), s), identity(tensor(a, b)));
    Proto f = random_proto(rng, a, c, uniform(rng, -2, 2)), g = random_proto(rng, b, e, uniform(rng, -2, 2));
    EXPECT_EQ(compose(symmetry(c, e), tensor_proto(f, g)),
              Int(sign_pow(f.degree() * g.degree())) * compose(tensor_proto(g, f), symmetry(a, b)));
  }
}

TEST(Associator, ChainIso) {
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    Complex a = random_complex(rng), b = random_complex(rng), c = random_complex(rng);
    IsoPair iso{associator(a, b, c), associator_inverse(a, b, c)};
    EXPECT_TRUE(iso.verify());
    EXPECT_EQ(tensor(tensor(a, b), c).ranks(), tensor(a, tensor(b, c)).ranks());
  }
}

TEST(Tensor, DistributesOverSum) {
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    Complex a = random_complex(rng), b = random_complex(rng), c = random_complex(rng);
    Complex l = tensor(oplus(a, b), c), r = oplus(tensor(a, c), tensor(b, c));
    ASSERT_EQ(l.ranks(), r.ranks());
    ASSERT_EQ(l.lo(), r.lo());
    // canonical reordering: a_i (x) c_k and b_j (x) c_k move from the interleaved
    // (p-blocked) order to the A-part-first order
    TensorProduct tl(oplus(a, b), c), ta(a, c), tb(b, c);
    Proto perm(l, r, 0);
    for (int n = l.lo(); n <= l.hi(); ++n) {
      IntMatrix m(r.rank(n), l.rank(n));
      for (std::size_t k = 0; k < l.rank(n); ++k) {
        auto idx = tl.basis_index(n, k);
        if (idx.left < a.rank(idx.p))
          m(ta.position(idx), k) = 1;
        else
          m(ta.complex().rank(n) + tb.position({idx.p, idx.q, idx.left - a.rank(idx.p), idx.right}), k) = 1;
      }
      perm.set(n, m);
    }
    EXPECT_TRUE(is_chain_map(perm));
    EXPECT_TRUE(invert_chain_map(perm).has_value());
  }
}

TEST(Sten, TensorSuspension) {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    Complex a = random_complex(rng), b = random_complex(rng);
    EXPECT_TRUE(sten_iso(a, b).verify());
    EXPECT_EQ(suspension(tensor(a, b)), tensor(suspension(a), b));
  }
  Complex b = random_complex(rng);
  EXPECT_EQ(suspension(b), tensor(Complex::K(1), b));
  EXPECT_TRUE(sten_iso(Complex::K(0), Complex::zero()).verify());
}

TEST(Sten, HomSuspension) {
  Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    Complex b = random_complex(rng), c = random_complex(rng);
    EXPECT_TRUE(sten_hom_right(b, c).verify());
    EXPECT_TRUE(sten_hom_left(b, c).verify());
  }
}

TEST(Decomposition, LZTensorLZ) {
  auto t0 = std::chrono::steady_clock::now();
  IsoPair iso = decompose_LZ_tensor();
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 1.0);
  EXPECT_TRUE(iso.verify());
  EXPECT_EQ(iso.forward.source().ranks(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(iso.forward.target().ranks(), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_TRUE(is_acyclic(iso.forward.source()));
  EXPECT_TRUE(is_acyclic(iso.forward.target()));
}

TEST(Duality, LZRZ) {
  auto t0 = std::chrono::steady_clock::now();
  DualityWitness w = verify_duality_LR();
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 1.0);
  EXPECT_TRUE(d_hom(w.unit).is_zero());
  EXPECT_TRUE(is_chain_map(w.counit));
  EXPECT_EQ(duality_triangle_L(w), identity(LZ()));
  EXPECT_EQ(duality_triangle_R(w), identity(RZ()));
}
