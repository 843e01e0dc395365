#include <gtest/gtest.h>

#include <algorithm>

#include "json.hpp"
#include "jouanolou/verifier.hpp"

using namespace jouanolou;

namespace {

CheckResult run_one(const std::string& suite, const std::string& variant, const std::string& model,
                    const std::string& klass = {}, int q = 0) {
  for (const auto& in : enumerate_suite(suite, Grid{}))
    if (in.variant == variant && in.model == model && in.klass == klass && in.q == q) {
      PolynomialStore store;
      return run_check(in, store);
    }
  ADD_FAILURE() << "no instance " << suite << "/" << variant << "/" << model;
  return {};
}

class SuitePasses : public ::testing::TestWithParam<std::string> {};

}  // namespace

TEST_P(SuitePasses, OnDefaultGrid) {
  PolynomialStore store;
  const Report r = run_suite(GetParam(), Grid{}, 0, store);
  EXPECT_FALSE(r.results.empty());
  for (const auto& res : r.results) {
    EXPECT_EQ(res.status, Status::Pass) << res.instance.key() << "\n  lhs " << res.lhs << "\n  rhs "
                                        << res.rhs << "\n  " << res.detail;
  }
  EXPECT_TRUE(r.passed());
}

INSTANTIATE_TEST_SUITE_P(Suites, SuitePasses,
                         ::testing::Values("main", "ky2", "thom", "grr", "excess", "projection",
                                           "functoriality", "normalization", "structure"));

TEST(Verifier, ThomExampleOnSplitBundle) {
  const auto r = run_one("thom", "push_one@1", "proj(P2; O(1)+O(2))");
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.lhs, "2*h^2-3*h*x1+1*x1^2");
  EXPECT_EQ(r.lhs, r.rhs);
}

TEST(Verifier, DivisorExampleOnPlane) {
  const auto r = run_one("main", "divisor", "hyperplane(P2)", "[O]", 2);
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.lhs, "1*h^2");
  EXPECT_EQ(r.rhs, "1*h^2");
}

TEST(Verifier, PullbackOfThomIsTopChernClass) {
  const auto r = run_one("thom", "pullback@1", "proj(P2; O(1)+O(2))");
  EXPECT_EQ(r.status, Status::Pass);
  EXPECT_EQ(r.lhs, "2*h^2");
}

TEST(Verifier, MainGridCoverage) {
  const auto main = enumerate_suite("main", Grid{});
  EXPECT_GE(main.size(), 20u);
  const bool negative_rank = std::any_of(main.begin(), main.end(), [](const CheckInstance& in) {
    return in.klass == "-2[O]" || in.klass == "[O]-2[O(1)]";
  });
  EXPECT_TRUE(negative_rank);
  for (const auto& in : main) EXPECT_LE(in.q, 5);
}

TEST(Verifier, EmptyGridIsVacuousPassWithWarning) {
  Grid g;
  g.max_codim = 0;
  PolynomialStore store;
  const Report r = run_suite("main", g, 1, store);
  EXPECT_TRUE(r.results.empty());
  EXPECT_TRUE(r.passed());
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("vacuous"), std::string::npos);
}

TEST(Verifier, UnknownSuite) {
  EXPECT_FALSE(is_suite("nope"));
  EXPECT_TRUE(is_suite("all"));
  EXPECT_THROW(enumerate_suite("nope", Grid{}), std::invalid_argument);
}

TEST(Verifier, ReportsAreDeterministicAcrossJobCounts) {
  PolynomialStore s1, s2;
  const Report a = run_suite("excess", Grid{}, 1, s1);
  const Report b = run_suite("excess", Grid{}, 4, s2);
  EXPECT_EQ(report_json(a, false), report_json(b, false));
  EXPECT_EQ(report_table(a, false), report_table(b, false));
}

TEST(Verifier, FailureReproducibleFromInstance) {
  PolynomialStore store;
  const Report r = run_suite("projection", Grid{}, 2, store);
  for (const auto& res : r.results) {
    PolynomialStore fresh;
    const auto again = run_check(res.instance, fresh);
    EXPECT_EQ(again.lhs, res.lhs);
    EXPECT_EQ(again.rhs, res.rhs);
  }
}

TEST(Verifier, WrongPolynomialSurfacesAsIntegralityGap) {
  PolynomialStore store;
  JouanolouPolynomial wrong = store.get(2, 3);
  for (auto& t : wrong.terms)
    for (auto& c : t.xi_binomial) c += 1;
  store.put(wrong);
  CheckInstance in{"main", "koszul", "proj(P2; O(1)+O(2))", "[O(1)]", 3, 0};
  const auto r = run_check(in, store);
  EXPECT_EQ(r.status, Status::IntegralityGap);
  EXPECT_NE(r.lhs, r.rhs);
  EXPECT_THROW(expect_pass(r), CheckFailed);
  const Report rep = run_instances("main", {in}, 1, store);
  EXPECT_FALSE(rep.passed());
  EXPECT_NE(report_table(rep, false).find("integrality-gap"), std::string::npos);
  CheckInstance grr{"grr", "koszul", "proj(P2; O(1)+O(2))", "[O(1)]", 4, 0};
  EXPECT_EQ(run_check(grr, store).status, Status::IntegralityGap);
}

TEST(Verifier, ReportJsonFields) {
  PolynomialStore store;
  const Report r = run_suite("normalization", Grid{}, 2, store);
  const auto doc = nlohmann::json::parse(report_json(r, true));
  EXPECT_EQ(doc["suite"], "normalization");
  EXPECT_EQ(doc["engine_version"], kEngineVersion);
  EXPECT_EQ(doc["seed"], 7);
  EXPECT_TRUE(doc["passed"].get<bool>());
  EXPECT_EQ(doc["summary"]["total"], r.results.size());
  ASSERT_FALSE(doc["instances"].empty());
  const auto& first = doc["instances"][0];
  EXPECT_TRUE(first.contains("check_id"));
  EXPECT_TRUE(first["params"].contains("model"));
  EXPECT_TRUE(first.contains("millis"));
  EXPECT_FALSE(nlohmann::json::parse(report_json(r, false))["instances"][0].contains("millis"));
}

TEST(Verifier, SeedChangesRandomDraws) {
  Grid a, b;
  b.seed = 8;
  const auto ia = enumerate_suite("excess", a), ib = enumerate_suite("excess", b);
  ASSERT_EQ(ia.size(), ib.size());
  EXPECT_NE(ia, ib);
  EXPECT_EQ(ia, enumerate_suite("excess", a));
}
