#include <gtest/gtest.h>

#include <random>

#include "jouanolou/kmodel.hpp"
#include "test_support.hpp"

using namespace jouanolou;
using jouanolou::testing::draw;

namespace {

KClass O(Twist t, long mult = 1) { return KClass::line(t, mult); }

TowerSpec over(int n, std::vector<Twist> v) { return TowerSpec{n, {std::move(v)}}; }

KClass random_kclass(std::mt19937& rng, std::size_t max_level) {
  KClass k;
  const long terms = draw(rng, 1, 3);
  for (long i = 0; i < terms; ++i) {
    Twist t{draw(rng, -2, 2)};
    for (std::size_t l = 0; l < max_level; ++l) t.push_back(draw(rng, -1, 1));
    k.add(t, draw(rng, -2, 2));
  }
  return k;
}

std::vector<TowerSpec> grid_models() {
  return {over(0, {{0}}),         over(0, {{0}, {0}}),        over(0, {{0}, {0}, {0}}),
          over(1, {{1}}),         over(1, {{-1}, {2}}),       over(2, {{1}}),
          over(2, {{1}, {2}}),    over(2, {{1}, {-1}, {2}}),  TowerSpec{2, {{{1}}, {{1, 1}}}},
          TowerSpec{2, {{{1}}, {{0, 1}, {-1}}}}};
}

}  // namespace

TEST(KModel, ClassArithmetic) {
  const KClass a = O({0}) - O({1}, 2) + O({2});
  EXPECT_EQ(a.to_string(), "[O]-2[O(1)]+[O(2)]");
  EXPECT_EQ(a.rank(), 0);
  EXPECT_EQ(KClass().to_string(), "0");
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((O({1}) * O({2, 1})).to_string(), "[O(3,1)]");
  EXPECT_EQ(O({1, -1}).dual(), O({-1, 1}));
  EXPECT_EQ(O({1, 0, 0}), O({1}));
  EXPECT_EQ(O({0, 0, 1}).level(), 2u);
}

TEST(KModel, LambdaPowers) {
  const auto l = lambda_powers(KClass::trivial(3), 3);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[2], KClass::trivial(3));
  EXPECT_EQ(l[3], KClass::trivial(1));
  const auto m = lambda_powers(O({1}) + O({2}), 2);
  EXPECT_EQ(m[1], O({1}) + O({2}));
  EXPECT_EQ(m[2], O({3}));
  EXPECT_THROW(lambda_powers(-O({1}), 1), NegativeSignInput);
}

TEST(KModel, KoszulExamples) {
  const auto p2 = SpaceModel::build(over(0, {{0}, {0}}));
  const KClass k = koszul_pushforward(KClass::trivial(), p2, 0);
  EXPECT_EQ(k.to_string(), "[O]-2[O(0,1)]+[O(0,2)]");
  const auto line = SpaceModel::build(over(2, {{1}}));
  // Representatives are not unique without the projective-bundle relation;
  // the resolution 1 - [Q^dual] with Q = O(1,1) gives the same c and ch.
  const KClass k1 = koszul_pushforward(KClass::trivial(), line, 0);
  EXPECT_EQ(k1.to_string(), "-[O(-1)]+[O(0,1)]");
  const KClass resolution = O({0}) - O({-1, -1});
  EXPECT_EQ(total_chern_of_kclass(k1, line), total_chern_of_kclass(resolution, line));
  EXPECT_EQ(chern_character_of_kclass(k1, line), chern_character_of_kclass(resolution, line));
  EXPECT_TRUE(koszul_pushforward(KClass(), line, 0).is_zero());
  EXPECT_THROW(koszul_pushforward(O({0, 1}), line, 0), ModelError);
}

TEST(KModel, KoszulRankGuard) {
  std::vector<Twist> many(kKoszulRankGuard + 1, Twist{0});
  const auto m = SpaceModel::build(over(0, many));
  EXPECT_THROW(koszul_pushforward(KClass::trivial(), m, 0), RankGuardExceeded);
}

TEST(KModel, ChernExamples) {
  const auto P2 = SpaceModel::build(TowerSpec{2, {}});
  EXPECT_EQ(chern_of_kclass(O({0}) - O({1}, 2) + O({2}), 2, P2).to_string(), "-1*h^2");
  EXPECT_EQ(chern_of_kclass(O({0}) - O({-1}), 1, P2).to_string(), "1*h");
  EXPECT_EQ(total_chern_of_kclass(O({0}) - O({-1}), P2).to_string(), "1+1*h+1*h^2");
  for (int q = 1; q <= 2; ++q) EXPECT_TRUE(chern_of_kclass(O({0}), q, P2).is_zero());
  const auto over_point = SpaceModel::build(over(0, {{0}, {0}}));
  EXPECT_EQ(chern_of_kclass(koszul_pushforward(KClass::trivial(), over_point, 0), 2, over_point).to_string(),
            "-1*x1^2");
}

TEST(KModel, ChernCharacterOfKoszul) {
  const auto P2 = SpaceModel::build(TowerSpec{2, {}});
  EXPECT_EQ(chern_character_of_kclass(O({0}) - O({-1}), P2).to_string(), "1*h-1/2*h^2");
}

TEST(KModel, RefinedChernExamples) {
  const auto m = SpaceModel::build(over(0, {{0}, {0}}));
  const auto s = refined_chern(KClass::trivial(), 2, m, 0, generate(2, 2));
  EXPECT_EQ(s.thom_coordinate.to_string(), "-1");
  EXPECT_EQ(s.ambient.to_string(), "-1*x1^2");
  EXPECT_EQ(s.ambient, m.normal_form(s.thom_coordinate * m.thom_class(0)));
  const auto v = refined_chern(KClass::trivial(), 1, m, 0, generate(2, 1));
  EXPECT_TRUE(v.thom_coordinate.is_zero());
  EXPECT_TRUE(v.ambient.is_zero());
  const long expected[] = {1, -1, 2};
  for (int d = 1; d <= 3; ++d) {
    const auto md = SpaceModel::build(over(0, std::vector<Twist>(static_cast<std::size_t>(d), Twist{0})));
    const auto r = refined_chern(KClass::trivial(), d, md, 0, generate(d, d));
    EXPECT_EQ(r.thom_coordinate.to_string(), std::to_string(expected[d - 1])) << d;
  }
}

TEST(KModel, RefinedChernRejectsWrongPolynomial) {
  const auto m = SpaceModel::build(over(2, {{1}, {2}}));
  JouanolouPolynomial wrong = generate(2, 3);
  for (auto& term : wrong.terms)
    for (auto& c : term.xi_binomial) c = -c;
  EXPECT_THROW(refined_chern(O({1}), 3, m, 0, wrong), IdentityViolation);
  EXPECT_THROW(refined_chern(O({1}), 3, m, 0, generate(2, 2)), ModelError);
}

TEST(KModel, DivisorPushforward) {
  const DivisorModel div(2);
  EXPECT_EQ(divisor_pushforward_k(O({0}), div), O({0}) - O({-1}));
  EXPECT_EQ(divisor_pushforward_k(O({2}) - O({1}), div), O({2}) - O({1}, 2) + O({0}));
  // Both routes to c_2 of i_*O_Z on P^2 give h^2.
  const auto& P2 = div.ambient();
  EXPECT_EQ(chern_of_kclass(divisor_pushforward_k(O({0}), div), 2, P2).to_string(), "1*h^2");
}

TEST(KModel, EvaluateOnModelAtNormalBundle) {
  const auto m = SpaceModel::build(TowerSpec{2, {}});
  // P_1^1 = xi: rank of a times the fundamental class.
  EXPECT_EQ(evaluate_on_model(generate(1, 1), KClass::trivial(3), O({1}), m).to_string(), "3");
}

// Properties.

TEST(KModelProperty, TotalChernMultiplicative) {
  std::mt19937 rng(51);
  for (const auto& spec : {TowerSpec{2, {}}, TowerSpec{2, {{{1}}, {{1, 1}}}}}) {
    const auto m = SpaceModel::build(spec);
    for (int i = 0; i < 20; ++i) {
      const KClass a = random_kclass(rng, m.layer_count());
      const KClass b = random_kclass(rng, m.layer_count());
      EXPECT_EQ(total_chern_of_kclass(a + b, m),
                m.normal_form(total_chern_of_kclass(a, m) * total_chern_of_kclass(b, m)))
          << a.to_string() << " , " << b.to_string();
    }
  }
}

TEST(KModelProperty, KoszulAcrossLayers) {
  std::mt19937 rng(52);
  for (const auto& spec : {TowerSpec{2, {{{1}}, {{1, 1}}}}, TowerSpec{2, {{{1}}, {{0, 1}, {-1}}}}}) {
    const auto m = SpaceModel::build(spec);
    for (int i = 0; i < 10; ++i) {
      const KClass b = random_kclass(rng, 0);
      const KClass once = koszul_pushforward(b, m, 0);
      EXPECT_EQ(koszul_pushforward(once, m, 1), once * koszul_pushforward(KClass::trivial(), m, 1));
    }
  }
}

TEST(KModelProperty, KoszulHasRankZeroAndVanishesBelowCodimension) {
  std::mt19937 rng(53);
  for (const auto& spec : grid_models()) {
    const auto m = SpaceModel::build(spec);
    const std::size_t l = m.top_layer();
    for (int i = 0; i < 5; ++i) {
      const KClass b = random_kclass(rng, l);
      const KClass k = koszul_pushforward(b, m, l);
      EXPECT_EQ(k.rank(), 0);
      for (int q = 1; q < m.layer(l).rank(); ++q)
        EXPECT_TRUE(chern_of_kclass(k, q, m).is_zero()) << spec.to_string() << " q=" << q;
    }
  }
}
