#include <gtest/gtest.h>

#include "jouanolou/exactpoly.hpp"
#include "test_support.hpp"

using namespace jouanolou;
using jouanolou::testing::random_poly;

namespace {

ZPoly h_poly(const TablePtr& t, std::vector<long> coeffs, int D = 8) {
  ZPoly p(t, D);
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term(std::vector<int>{static_cast<int>(k)}, coeffs[k]);
  return p;
}

}  // namespace

TEST(ExactPoly, MulTruncatedHandExpansion) {
  auto t = make_table({"h"});
  const ZPoly a = h_poly(t, {1, 1}), b = h_poly(t, {1, 2});
  EXPECT_EQ(mul_truncated(a, b, 2).to_string(), "1+3*h+2*h^2");
}

TEST(ExactPoly, MulByOneIsIdentity) {
  auto t = make_table({"h", "z"});
  std::mt19937 rng(3);
  const ZPoly p = random_poly<mpz_class>(rng, t, 4, 6, 8);
  EXPECT_EQ(mul_truncated(p, ZPoly::constant(t, 1), 8), p);
}

TEST(ExactPoly, MulTelescopes) {
  auto t = make_table({"z"});
  const ZPoly a = h_poly(t, {1, -1}), b = h_poly(t, {1, 1, 1});
  EXPECT_EQ(mul_truncated(a, b, 2).to_string(), "1");
}

TEST(ExactPoly, MulRejectsMixedTables) {
  const ZPoly a = ZPoly::variable(make_table({"h"}), 0);
  const ZPoly b = ZPoly::variable(make_table({"z"}), 0);
  EXPECT_THROW(mul_truncated(a, b, 2), MixedVariableTables);
}

TEST(ExactPoly, MulHasNoOverflow) {
  auto t = make_table({"h"});
  ZPoly p = ZPoly::constant(t, mpz_class("123456789012345678901234567890"));
  p = p * p;
  EXPECT_EQ(p.to_string(), "15241578753238836750495351562536198787501905199875019052100");
}

TEST(ExactPoly, InvertOnePlusGeometric) {
  auto t = make_table({"z"});
  EXPECT_EQ(invert_one_plus(ZPoly::variable(t, 0), 3).to_string(), "1-1*z+1*z^2-1*z^3");
  EXPECT_EQ(invert_one_plus(ZPoly(t), 3).to_string(), "1");
  auto th = make_table({"h"});
  EXPECT_EQ(invert_one_plus(h_poly(th, {0, 3}), 2).to_string(), "1-3*h+9*h^2");
}

TEST(ExactPoly, InvertRejectsConstantTerm) {
  auto t = make_table({"z"});
  EXPECT_THROW(invert_one_plus(h_poly(t, {1, 1}), 3), NonzeroConstantTerm);
}

TEST(ExactPoly, ExactDivideExamples) {
  auto t = make_table({"y1", "y2"});
  ZPoly p(t);
  p.add_term({1, 1}, 1);
  p.add_term({2, 1}, 1);
  EXPECT_EQ(exact_divide(p, 0).to_string(), "1*y2+1*y1*y2");
  EXPECT_TRUE(exact_divide(ZPoly(t), 0).is_zero());
  ZPoly q = p;
  q.add_term({0, 1}, 1);
  EXPECT_THROW(exact_divide(q, 0), DivisionRemainderNonzero);
}

TEST(ExactPoly, HomogeneousPartExamples) {
  auto t = make_table({"h"});
  EXPECT_EQ(homogeneous_part(h_poly(t, {1, 3, 2}), 1).to_string(), "3*h");
  EXPECT_TRUE(homogeneous_part(h_poly(t, {1, 3, 2}), 5).is_zero());
  auto x = make_table({"xi"});
  EXPECT_EQ(homogeneous_part(h_poly(x, {1, 0, -1}), 2).to_string(), "-1*xi^2");
}

TEST(ExactPoly, CanonicalSerialization) {
  auto t = make_table({"a", "b"});
  ZPoly p(t);
  p.add_term({0, 2}, 1);
  p.add_term({1, 1}, -2);
  p.add_term({2, 0}, 3);
  p.add_term({0, 0}, 5);
  // Degree first, then exponent vectors descending.
  EXPECT_EQ(p.to_string(), "5+3*a^2-2*a*b+1*b^2");
  EXPECT_EQ(ZPoly(t).to_string(), "0");
}

TEST(ExactPoly, WeightedTruncation) {
  auto t = make_table({"c1", "c2"}, {1, 2});
  ZPoly p = ZPoly::variable(t, "c2", 3) * ZPoly::variable(t, "c2", 3);
  EXPECT_TRUE(p.is_zero());
  ZPoly q = ZPoly::variable(t, "c1", 3) * ZPoly::variable(t, "c2", 3);
  EXPECT_EQ(q.to_string(), "1*c1*c2");
}

TEST(ExactPoly, SubstituteAndEmbed) {
  auto src = make_table({"u"});
  auto dst = make_table({"a", "b"});
  const ZPoly p = h_poly(src, {1, 2, 1});
  std::vector<ZPoly> images{ZPoly::variable(dst, 0) + ZPoly::variable(dst, 1)};
  EXPECT_EQ(substitute<mpz_class>(p, images, 8).to_string(), "1+2*a+2*b+1*a^2+2*a*b+1*b^2");
  auto big = make_table({"v", "u"});
  EXPECT_EQ(embed(p, big, 8).to_string(), "1+2*u+1*u^2");
}

TEST(ExactPoly, RationalIntegralConversion) {
  auto t = make_table({"h"});
  QPoly q(t);
  q.add_term({1}, mpq_class(1, 2));
  EXPECT_FALSE(is_integral(q));
  EXPECT_THROW(to_integral(q), NonIntegralCoefficient);
  q *= mpq_class(2);
  EXPECT_EQ(to_integral(q).to_string(), "1*h");
}

// Property tests.

TEST(ExactPolyProperty, RingLaws) {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    const int nvars = 1 + static_cast<int>(rng() % 4);
    std::vector<std::string> names;
    for (int i = 0; i < nvars; ++i) names.push_back("v" + std::to_string(i));
    auto t = make_table(names);
    const int D = 2 + static_cast<int>(rng() % 7);
    const auto a = random_poly<mpz_class>(rng, t, D, 5, D);
    const auto b = random_poly<mpz_class>(rng, t, D, 5, D);
    const auto c = random_poly<mpz_class>(rng, t, D, 5, D);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a + b, b + a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(ExactPolyProperty, InverseOfOnePlus) {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    auto t = make_table({"p", "q", "r"});
    const int D = 1 + static_cast<int>(rng() % 8);
    const auto u = random_poly<mpz_class>(rng, t, D, 4, D, true);
    const auto inv = invert_one_plus(u, D);
    EXPECT_EQ(mul_truncated(ZPoly::constant(t, 1, D) + u, inv, D).to_string(), "1");
  }
}

TEST(ExactPolyProperty, ExactDivideUndoesMultiplication) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto t = make_table({"a", "b", "c"});
    const auto p = random_poly<mpz_class>(rng, t, 6, 6, 8);
    const std::size_t v = rng() % 3;
    EXPECT_EQ(exact_divide(p * ZPoly::variable(t, v), v), p.with_truncation(7));
  }
}

TEST(ExactPolyProperty, DeterministicSerialization) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = make_table({"a", "b"});
    const auto p = random_poly<mpq_class>(rng, t, 5, 8, 8);
    QPoly rebuilt(make_table({"a", "b"}), 8);
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) rebuilt.add_term(it->first, it->second);
    EXPECT_EQ(p.to_string(), rebuilt.to_string());
  }
}

TEST(ExactPolyProperty, DenseSeriesMatchesSparseProducts) {
  std::mt19937 rng(17);
  auto t = make_table({"a", "b", "c"});
  const int D = 5;
  auto index = std::make_shared<const MonomialIndex>(t, D);
  for (int trial = 0; trial < 20; ++trial) {
    DenseSeries<mpz_class> dense(index);
    ZPoly sparse = ZPoly::constant(t, 1, D);
    for (int f = 0; f < 4; ++f) {
      LinearTerms form;
      ZPoly lin(t, D);
      for (std::size_t v = 0; v < 3; ++v) {
        const long c = jouanolou::testing::draw(rng, -2, 2);
        if (c == 0) continue;
        form.emplace_back(v, c);
        lin += ZPoly::variable(t, v, D) * mpz_class(c);
      }
      if (rng() % 2) {
        dense.multiply_one_plus(form);
        sparse = sparse * (ZPoly::constant(t, 1, D) + lin);
      } else {
        dense.divide_one_plus(form);
        sparse = sparse * invert_one_plus(lin, D);
      }
    }
    EXPECT_EQ(dense.to_polynomial(), sparse);
  }
}
