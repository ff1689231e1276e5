#include <gtest/gtest.h>

#include "dgkit/io.hpp"
#include "dgkit/random.hpp"

using namespace dgkit;
using io::json;

namespace {

std::string parse_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

CategoryPtr graded_category() {
  return std::make_shared<const FiniteDGCategory>(
      dgab_full_subcategory({"A", "B"}, {Complex::K(0), Complex::graded(0, {1, 1})}));
}

}  // namespace

TEST(IoRoundTrip, ComplexesAndMaps) {
  Rng rng(1);
  for (int i = 0; i < 30; ++i) {
    Complex a = random_complex(rng), b = random_complex(rng);
    EXPECT_EQ(io::read_complex(io::write(a), "a"), a);
    Proto f = random_proto(rng, a, b, uniform(rng, -1, 1));
    EXPECT_EQ(io::read_proto(io::write(f), "f"), f);
    EllModule F = encode(a);
    EXPECT_EQ(io::read_ell_module(io::write(F), "F"), F);
  }
  EXPECT_EQ(io::read_complex(io::write(Complex()), "zero"), Complex());
}

TEST(IoRoundTrip, BigIntegersSurvive) {
  Int big("123456789012345678901234567890");
  Complex a(0, {1, 1}, {{1, IntMatrix{{big}}}});
  json j = io::write(a);
  EXPECT_EQ(io::read_complex(json::parse(j.dump()), "a").d(1)(0, 0), big);
}

TEST(IoRoundTrip, PlainIntegersAccepted) {
  json j = json::parse(R"({"lo": 0, "ranks": [1, 1], "diffs": {"1": {"rows": 1, "cols": 1, "data": [2]}}})");
  EXPECT_EQ(homology_at(io::read_complex(j, "M2"), 0).to_string(), "Z/2");
}

TEST(IoRoundTrip, CategoriesModulesCauchyDoubleComplexes) {
  for (const FiniteDGCategory& C : {unit_category(), dual_numbers_category(), ell_window_category(2)}) {
    FiniteDGCategory back = io::read_category(io::write(C));
    EXPECT_EQ(back.objects, C.objects);
    EXPECT_TRUE(validate_dg_category(back).ok());
    EXPECT_EQ(io::write(back), io::write(C));
  }
  auto C = graded_category();
  RightModule M = oplus(representable_right(C, 0), suspend(representable_right(C, 1), 1));
  EXPECT_EQ(io::write_module(io::read_module<RightModule>(io::write_module(M), C, "M")), io::write_module(M));
  LeftModule N = representable_left(C, 1);
  EXPECT_EQ(io::write_module(io::read_module<LeftModule>(io::write_module(N), C, "N")), io::write_module(N));

  CauchyData cd = representable_cauchy_data(C, 1, 1);
  CauchyData back = io::read_cauchy(io::write(cd));
  EXPECT_EQ(io::write(back), io::write(cd));
  EXPECT_TRUE(verify_cauchy_data(back).ok);

  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    DoubleComplex A = random_double_complex(rng);
    EXPECT_EQ(total_complex(io::read_double_complex(io::write(A))), total_complex(A));
  }
}

TEST(IoErrors, NameFieldAndDegree) {
  json shape = json::parse(R"({"lo": 0, "ranks": [1, 1], "diffs": {"1": {"rows": 2, "cols": 1, "data": [2, 0]}}})");
  std::string msg = parse_error([&] { io::read_complex(shape, "A"); });
  EXPECT_NE(msg.find("A.diffs[1]"), std::string::npos) << msg;
  EXPECT_NE(msg.find("degree 1"), std::string::npos) << msg;

  json sq = json::parse(R"({"lo": 0, "ranks": [1, 1, 1],
    "diffs": {"1": {"rows": 1, "cols": 1, "data": [1]}, "2": {"rows": 1, "cols": 1, "data": [1]}}})");
  msg = parse_error([&] { io::read_complex(sq, "B"); });
  EXPECT_NE(msg.find("d^2 != 0 at degree"), std::string::npos) << msg;

  msg = parse_error([&] { io::read_complex(json::parse(R"({"ranks": [1]})"), "C"); });
  EXPECT_NE(msg.find("missing field 'lo'"), std::string::npos) << msg;

  msg = parse_error([&] { io::read_complex(json::parse(R"({"lo": "x", "ranks": [1]})"), "D"); });
  EXPECT_NE(msg.find("D.lo"), std::string::npos) << msg;

  json f = io::write(identity(Complex::K(0)));
  f["comps"]["0"]["rows"] = 2;
  f["comps"]["0"]["data"] = {1, 0};
  msg = parse_error([&] { io::read_proto(f, "f"); });
  EXPECT_NE(msg.find("degree 0 component"), std::string::npos) << msg;

  json m = json::parse(R"({"rows": 2, "cols": 2, "data": [1, 2, 3]})");
  EXPECT_FALSE(parse_error([&] { io::read_matrix(m, "m"); }).empty());
  EXPECT_FALSE(parse_error([&] { io::load("/nonexistent/file.json"); }).empty());
}
