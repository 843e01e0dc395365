#pragma once

// Catalog of identity checks. Each check computes two sides independently
// and compares them exactly.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "jouanolou/jouanolou.hpp"

namespace jouanolou {

inline constexpr const char* kEngineVersion = "0.1.0";

enum class Status { Pass, Fail, IntegralityGap };
std::string status_name(Status s);  // "pass", "fail", "integrality-gap"

// Model strings use the CLI grammar; divisor checks use "hyperplane(P<n>)".
// Empty class and zero seed mean "not used".
struct CheckInstance {
  std::string check_id;
  std::string variant;
  std::string model;
  std::string klass;
  int q = 0;
  std::uint64_t seed = 0;

  std::string key() const;
  friend auto operator<=>(const CheckInstance&, const CheckInstance&) = default;
};

struct CheckResult {
  CheckInstance instance;
  Status status = Status::Pass;
  std::string lhs;
  std::string rhs;
  std::string detail;
  double millis = 0;
};

struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> results;  // sorted by instance
  std::vector<std::string> warnings;

  bool passed() const;
  std::size_t count(Status s) const;
};

struct Grid {
  int max_codim = 3;
  int max_degree = 5;
  int structure_max_degree = 6;
  int max_base = 2;
  int draws = 10;
  int grr_degree = 6;
  std::uint64_t seed = 7;
};

// main, ky2, thom, grr, excess, projection, functoriality, normalization,
// structure, all.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Throws std::invalid_argument for an unknown suite.
std::vector<CheckInstance> enumerate_suite(const std::string& suite, const Grid& grid);

CheckResult run_check(const CheckInstance& instance, PolynomialStore& store);
// Throws CheckFailed with both sides unless the result passed.
void expect_pass(const CheckResult& result);

// jobs <= 0 uses the available hardware parallelism.
Report run_instances(const std::string& suite, std::vector<CheckInstance> instances, int jobs,
                     PolynomialStore& store, std::uint64_t seed = 0);
Report run_suite(const std::string& suite, const Grid& grid, int jobs, PolynomialStore& store);

std::string report_json(const Report& report, bool timings);
std::string report_table(const Report& report, bool timings);

}  // namespace jouanolou
