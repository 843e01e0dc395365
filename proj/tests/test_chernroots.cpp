#include <gtest/gtest.h>

#include <random>

#include "jouanolou/chernroots.hpp"
#include "test_support.hpp"

using namespace jouanolou;
using jouanolou::testing::draw;

namespace {

LinearForm lf(std::vector<long> c) { return LinearForm(std::move(c)); }

VirtualBundle random_bundle(std::mt19937& rng, const TablePtr& t, int max_roots, bool honest) {
  VirtualBundle v(t);
  const long n = draw(rng, 0, max_roots);
  for (long i = 0; i < n; ++i) {
    std::vector<long> c(t->size());
    for (auto& x : c) x = draw(rng, -2, 2);
    v.add_root(LinearForm(c), honest || rng() % 2 ? 1 : -1);
  }
  return v;
}

}  // namespace

TEST(ChernRoots, TotalChernExamples) {
  auto t = make_table({"h"});
  EXPECT_EQ(total_chern_polynomial(VirtualBundle::honest(t, {lf({4})}), 8).to_string(), "1+4*h");
  EXPECT_EQ(total_chern_polynomial(VirtualBundle::honest(t, {lf({1}), lf({2})}), 8).to_string(),
            "1+3*h+2*h^2");
  VirtualBundle cancel(t, {{lf({1}), 1}, {lf({1}), -1}});
  EXPECT_EQ(total_chern_polynomial(cancel, 8).to_string(), "1");
  EXPECT_EQ(cancel.rank(), 0);
}

TEST(ChernRoots, TensorExamples) {
  auto t = make_table({"u", "v", "w"});
  const auto L = VirtualBundle::honest(t, {lf({1, 0, 0})});
  const auto M = VirtualBundle::honest(t, {lf({0, 1, 0})});
  EXPECT_TRUE(tensor(L, M).same_multiset(VirtualBundle::honest(t, {lf({1, 1, 0})})));
  const auto trivial = VirtualBundle::honest(t, {LinearForm::zero(3)});
  EXPECT_TRUE(tensor(L, trivial).same_multiset(L));
  VirtualBundle virt(t, {{lf({1, 0, 0}), 1}, {lf({0, 1, 0}), -1}});
  const auto W = VirtualBundle::honest(t, {lf({0, 0, 1})});
  VirtualBundle expected(t, {{lf({1, 0, 1}), 1}, {lf({0, 1, 1}), -1}});
  EXPECT_TRUE(tensor(virt, W).same_multiset(expected));
}

TEST(ChernRoots, DualExamples) {
  auto t = make_table({"h"});
  EXPECT_TRUE(dual(VirtualBundle::honest(t, {lf({1})})).same_multiset(VirtualBundle::honest(t, {lf({-1})})));
  const auto V = VirtualBundle::honest(t, {lf({1}), lf({2})});
  EXPECT_EQ(total_chern(dual(V), 2)[1].to_string(), "-3*h");
}

TEST(ChernRoots, LambdaMinusOneExamples) {
  auto t = make_table({"y1", "y2"});
  const auto one = lambda_minus1_dual(VirtualBundle::honest(t, {lf({1, 0})}));
  EXPECT_TRUE(one.same_multiset(VirtualBundle(t, {{LinearForm::zero(2), 1}, {lf({-1, 0}), -1}})));
  EXPECT_EQ(one.rank(), 0);
  const auto two = lambda_minus1_dual(VirtualBundle::honest(t, {lf({1, 0}), lf({0, 1})}));
  EXPECT_TRUE(two.same_multiset(VirtualBundle(
      t, {{LinearForm::zero(2), 1}, {lf({-1, 0}), -1}, {lf({0, -1}), -1}, {lf({-1, -1}), 1}})));
  const auto empty = lambda_minus1_dual(VirtualBundle(t));
  EXPECT_EQ(empty.rank(), 1);
  EXPECT_TRUE(empty.same_multiset(VirtualBundle::honest(t, {LinearForm::zero(2)})));
}

TEST(ChernRoots, LambdaGuards) {
  auto t = make_table({"y"});
  VirtualBundle neg(t, {{lf({1}), -1}});
  EXPECT_THROW(lambda_minus1_dual(neg), NegativeSignInput);
  std::vector<LinearForm> many(kLambdaRankGuard + 1, lf({1}));
  EXPECT_THROW(lambda_minus1_dual(VirtualBundle::honest(t, many)), RankGuardExceeded);
}

TEST(ChernRoots, ChernCharacterExamples) {
  auto t = make_table({"u"});
  EXPECT_EQ(chern_character(VirtualBundle::honest(t, {lf({1})}), 2).total().to_string(),
            "1+1*u+1/2*u^2");
  VirtualBundle zero(t, {{lf({1}), 1}, {lf({1}), -1}});
  EXPECT_TRUE(chern_character(zero, 4).total().is_zero());
  auto th = make_table({"h"});
  VirtualBundle v(th, {{LinearForm::zero(1), 1}, {lf({-1}), -1}});
  EXPECT_EQ(chern_character(v, 2).total().to_string(), "1*h-1/2*h^2");
}

TEST(ChernRoots, ToddInverseExamples) {
  auto t = make_table({"n"});
  EXPECT_EQ(todd_inverse(VirtualBundle::honest(t, {lf({1})}), 2).total().to_string(),
            "1-1/2*n+1/6*n^2");
  EXPECT_EQ(todd_inverse(VirtualBundle(t), 3).total().to_string(), "1");
  auto ty = make_table({"y1", "y2"});
  EXPECT_EQ(todd_inverse(VirtualBundle::honest(ty, {lf({1, 0}), lf({0, 1})}), 1).total().to_string(),
            "1-1/2*y1-1/2*y2");
  EXPECT_THROW(todd_inverse(VirtualBundle(t, {{lf({1}), -1}}), 2), NegativeSignInput);
}

TEST(ChernRoots, ChernFromCharacterExamples) {
  auto t = make_table({"u"});
  const auto line = chern_character(VirtualBundle::honest(t, {lf({1})}), 2);
  EXPECT_EQ(chern_from_character(line, 1, 2).total().to_string(), "1+1*u");
  const auto two = chern_character(VirtualBundle::honest(t, {LinearForm::zero(1), LinearForm::zero(1)}), 3);
  EXPECT_EQ(chern_from_character(two, 2, 3).total().to_string(), "1");
  auto th = make_table({"h"});
  VirtualBundle v(th, {{LinearForm::zero(1), 1}, {lf({-1}), -1}});
  // Quotient ring Z[h]/(h^3): truncation at 2 plays that role here.
  EXPECT_EQ(chern_from_character(chern_character(v, 2), 0, 2).total().to_string(), "1+1*h+1*h^2");
}

TEST(ChernRoots, ChernFromCharacterRejectsNonIntegral) {
  auto t = make_table({"u"});
  auto ch = chern_character(VirtualBundle::honest(t, {lf({1})}), 2);
  ch.components[1] *= mpq_class(1, 2);
  EXPECT_THROW(chern_from_character(ch, 1, 2), NonIntegralResult);
}

// Properties.

TEST(ChernRootsProperty, Whitney) {
  std::mt19937 rng(71);
  auto t = make_table({"a", "b", "c"});
  for (int trial = 0; trial < 50; ++trial) {
    const auto V = random_bundle(rng, t, 4, false);
    const auto W = random_bundle(rng, t, 4, false);
    EXPECT_EQ(total_chern_polynomial(direct_sum(V, W), 6),
              total_chern_polynomial(V, 6) * total_chern_polynomial(W, 6));
  }
}

TEST(ChernRootsProperty, DualAlternatesSigns) {
  std::mt19937 rng(72);
  auto t = make_table({"a", "b"});
  for (int trial = 0; trial < 50; ++trial) {
    const auto V = random_bundle(rng, t, 5, false);
    const auto c = total_chern(V, 6), cd = total_chern(dual(V), 6);
    for (std::size_t i = 0; i < c.size(); ++i) {
      ZPoly expect = c[i];
      if (i % 2) expect *= mpz_class(-1);
      EXPECT_EQ(cd[i], expect) << "i=" << i;
    }
  }
}

TEST(ChernRootsProperty, CharacterRoundTrip) {
  std::mt19937 rng(73);
  auto t = make_table({"a", "b"});
  for (int trial = 0; trial < 30; ++trial) {
    const auto V = random_bundle(rng, t, 4, true);
    const auto ch = chern_character(V, 6);
    EXPECT_EQ(chern_from_character(ch, V.rank(), 6), total_chern(V, 6));
  }
}

TEST(ChernRootsProperty, LambdaMultiplicativity) {
  std::mt19937 rng(74);
  auto t = make_table({"a", "b", "c"});
  for (int trial = 0; trial < 30; ++trial) {
    const auto A = random_bundle(rng, t, 3, true);
    const auto B = random_bundle(rng, t, 3, true);
    const auto lhs = lambda_minus1_dual(direct_sum(A, B));
    const auto rhs = tensor(lambda_minus1_dual(A), lambda_minus1_dual(B));
    EXPECT_TRUE(lhs.same_multiset(rhs));
  }
}

TEST(ChernRootsProperty, KoszulVanishesBelowRank) {
  for (int d = 1; d <= 4; ++d) {
    std::vector<std::string> names;
    for (int j = 1; j <= d; ++j) names.push_back("y" + std::to_string(j));
    auto t = make_table(names);
    std::vector<LinearForm> roots;
    for (int j = 0; j < d; ++j) roots.push_back(LinearForm::unit(static_cast<std::size_t>(d), static_cast<std::size_t>(j)));
    const auto c = total_chern(lambda_minus1_dual(VirtualBundle::honest(t, roots)), d);
    for (int k = 1; k < d; ++k) EXPECT_TRUE(c[static_cast<std::size_t>(k)].is_zero()) << "d=" << d << " k=" << k;
    EXPECT_FALSE(c[static_cast<std::size_t>(d)].is_zero()) << "d=" << d;
  }
}
