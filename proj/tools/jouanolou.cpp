// Command-line front end: gen, verify, eval, cache.

#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "jouanolou/expr.hpp"
#include "jouanolou/jouanolou.hpp"
#include "jouanolou/polynomial_cache.hpp"
#include "jouanolou/verifier.hpp"

namespace {

using namespace jouanolou;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct GenArgs {
  int codim = 0;
  int degree = 0;
  std::string format = "text";
  std::string cache_dir;
  bool no_cache = false;
};

struct VerifyArgs {
  std::string suite;
  std::optional<int> max_codim;
  std::optional<int> max_degree;
  std::optional<int> draws;
  std::uint64_t seed = 7;
  int jobs = 0;
  std::string report;
  std::string format = "text";
  bool timings = false;
};

struct EvalArgs {
  std::string model;
  std::string expr;
  std::string format = "text";
};

struct CacheArgs {
  std::string action;
  std::string cache_dir;
};

PolynomialCache open_cache(const std::string& dir) {
  return PolynomialCache(dir.empty() ? PolynomialCache::default_dir() : std::filesystem::path(dir));
}

int run_gen(const GenArgs& a) {
  if (a.codim < 1 || a.degree < 0) {
    std::cerr << "error: gen needs --codim >= 1 and --degree >= 0\n";
    return kExitUsage;
  }
  std::optional<PolynomialCache> cache;
  GenerateOptions opts;
  if (!a.no_cache) {
    cache.emplace(open_cache(a.cache_dir));
    opts.cache = &*cache;
  }
  const JouanolouPolynomial P = generate(a.codim, a.degree, opts);
  if (a.format == "json")
    std::cout << to_cache_json(P);
  else if (a.format == "latex")
    std::cout << to_latex(P) << "\n";
  else
    std::cout << to_text(P) << "\n";
  return kExitOk;
}

int run_verify(const VerifyArgs& a) {
  Grid grid;
  grid.seed = a.seed;
  if (a.max_codim) grid.max_codim = *a.max_codim;
  if (a.max_degree) grid.max_degree = grid.structure_max_degree = *a.max_degree;
  if (a.draws) grid.draws = *a.draws;
  PolynomialStore store;
  const Report report = run_suite(a.suite, grid, a.jobs, store);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  const std::string json = report_json(report, a.timings);
  if (!a.report.empty()) {
    std::ofstream out(a.report, std::ios::binary | std::ios::trunc);
    if (!out || !(out << json)) {
      std::cerr << "error: cannot write report to " << a.report << "\n";
      return kExitFailure;
    }
  }
  if (a.format == "json")
    std::cout << json;
  else
    std::cout << report_table(report, a.timings);
  return report.passed() ? kExitOk : kExitFailure;
}

int run_eval(const EvalArgs& a) {
  const SpaceModel model = SpaceModel::build(parse_model_spec(a.model));
  const ExprPtr e = parse_class_expr(a.expr);
  PolynomialStore store;
  const Value v = evaluate_expr(*e, model, store);
  if (a.format == "json") {
    nlohmann::ordered_json doc;
    doc["model"] = model.spec().to_string();
    doc["expr"] = print(*e);
    doc["kind"] = v.kind_name();
    doc["value"] = v.to_string();
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << v.to_string() << "\n";
  }
  return kExitOk;
}

int run_cache(const CacheArgs& a) {
  const PolynomialCache cache = open_cache(a.cache_dir);
  if (a.action == "list") {
    for (const auto& p : cache.list()) std::cout << p.string() << "\n";
    return kExitOk;
  }
  const std::size_t removed = cache.clear();
  std::cout << "removed " << removed << " file" << (removed == 1 ? "" : "s") << " from "
            << cache.dir().string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate and verify the universal Chern-class polynomials P_q^d", "jouanolou"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kEngineVersion));

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate P_q^d");
  gen_cmd->add_option("--codim,-d", gen.codim, "Codimension d")->required();
  gen_cmd->add_option("--degree,-q", gen.degree, "Degree q")->required();
  gen_cmd->add_option("--format", gen.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "latex"}));
  gen_cmd->add_option("--cache-dir", gen.cache_dir, "Polynomial cache directory");
  gen_cmd->add_flag("--no-cache", gen.no_cache, "Neither read nor write the cache");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("--suite", verify.suite, "Suite name")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--max-codim", verify.max_codim, "Largest codimension d")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--max-degree", verify.max_degree, "Largest degree q")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--draws", verify.draws, "Random draws per model")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--seed", verify.seed, "Seed for random class choices");
  verify.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  verify_cmd->add_option("--jobs,-j", verify.jobs, "Parallel workers")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--report", verify.report, "Write the JSON report to this path");
  verify_cmd->add_option("--format", verify.format, "Standard output format")
      ->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_flag("--timings", verify.timings, "Include per-check milliseconds");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a class expression in a model");
  eval_cmd->add_option("--model", eval.model, "Model spec, e.g. proj(P2; O(1)+O(2))")->required();
  eval_cmd->add_option("--expr", eval.expr, "Class expression")->required();
  eval_cmd->add_option("--format", eval.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));

  CacheArgs cache;
  auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear the polynomial cache");
  cache_cmd->add_option("action", cache.action, "list or clear")
      ->required()
      ->check(CLI::IsMember({"list", "clear"}));
  cache_cmd->add_option("--cache-dir", cache.cache_dir, "Polynomial cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*verify_cmd) return run_verify(verify);
    if (*eval_cmd) return run_eval(eval);
    if (*cache_cmd) return run_cache(cache);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const TowerTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
