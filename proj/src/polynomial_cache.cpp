#include "jouanolou/polynomial_cache.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

#include <unistd.h>

#include "json.hpp"

namespace jouanolou {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string to_cache_json(const JouanolouPolynomial& P) {
  ordered_json doc;
  doc["schema_version"] = kCacheSchemaVersion;
  doc["d"] = P.d;
  doc["q"] = P.q;
  doc["base_rank"] = P.base_rank;
  ordered_json terms = ordered_json::array();
  for (const auto& t : P.terms) {
    ordered_json term;
    term["c_exps"] = t.c_exps;
    term["cp_exps"] = t.cp_exps;
    ordered_json xi = ordered_json::array();
    for (std::size_t k = 0; k < t.xi_binomial.size(); ++k) {
      if (sgn(t.xi_binomial[k]) == 0) continue;
      xi.push_back({{"k", k}, {"coeff", t.xi_binomial[k].get_str()}});
    }
    term["xi_binomial"] = std::move(xi);
    terms.push_back(std::move(term));
  }
  doc["terms"] = std::move(terms);
  return doc.dump(2) + "\n";
}

JouanolouPolynomial from_cache_json(const std::string& text) {
  try {
    const auto doc = ordered_json::parse(text);
    if (doc.at("schema_version").get<int>() != kCacheSchemaVersion)
      throw CacheError("unsupported cache schema version");
    JouanolouPolynomial P;
    P.d = doc.at("d").get<int>();
    P.q = doc.at("q").get<int>();
    P.base_rank = doc.at("base_rank").get<int>();
    const auto m = static_cast<std::size_t>(P.arity());
    for (const auto& term : doc.at("terms")) {
      JouanolouTerm t;
      t.c_exps = term.at("c_exps").get<std::vector<int>>();
      t.cp_exps = term.at("cp_exps").get<std::vector<int>>();
      if (t.c_exps.size() != m || t.cp_exps.size() != m)
        throw CacheError("cache term arity does not match (d, q)");
      for (const auto& entry : term.at("xi_binomial")) {
        const auto k = entry.at("k").get<std::size_t>();
        if (t.xi_binomial.size() <= k) t.xi_binomial.resize(k + 1);
        mpz_class c;
        if (c.set_str(entry.at("coeff").get<std::string>(), 10) != 0)
          throw CacheError("bad decimal coefficient in cache");
        t.xi_binomial[k] = c;
      }
      P.terms.push_back(std::move(t));
    }
    return P;
  } catch (const nlohmann::json::exception& e) {
    throw CacheError(std::string("malformed cache document: ") + e.what());
  }
}

PolynomialCache::PolynomialCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path PolynomialCache::default_dir() {
  if (const char* env = std::getenv("JOUANOLOU_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return fs::path(xdg) / "jouanolou";
  if (const char* home = std::getenv("HOME"); home && *home)
    return fs::path(home) / ".cache" / "jouanolou";
  return ".jouanolou-cache";
}

fs::path PolynomialCache::file_for(int d, int q) const {
  return dir_ / ("P_d" + std::to_string(d) + "_q" + std::to_string(q) + ".json");
}

std::optional<JouanolouPolynomial> PolynomialCache::load(int d, int q) const {
  const fs::path path = file_for(d, q);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  JouanolouPolynomial P = from_cache_json(buffer.str());
  if (P.d != d || P.q != q)
    throw CacheError("cache file " + path.string() + " holds a different (d, q)");
  return P;
}

void PolynomialCache::store(const JouanolouPolynomial& P) const {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw CacheError("cannot create cache directory " + dir_.string());
  const fs::path target = file_for(P.d, P.q);
  const fs::path temp =
      dir_ / (target.filename().string() + ".tmp." + std::to_string(::getpid()) + "." +
              std::to_string(counter.fetch_add(1)));
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + temp.string());
    out << to_cache_json(P);
    if (!out.flush()) throw CacheError("write failed for " + temp.string());
  }
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    throw CacheError("cannot rename into " + target.string());
  }
}

std::vector<fs::path> PolynomialCache::list() const {
  static const std::regex pattern(R"(P_d\d+_q\d+\.json)");
  std::vector<fs::path> files;
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return files;
  for (const auto& entry : fs::directory_iterator(dir_))
    if (entry.is_regular_file() &&
        std::regex_match(entry.path().filename().string(), pattern))
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

std::size_t PolynomialCache::clear() const {
  std::size_t removed = 0;
  for (const auto& path : list())
    if (fs::remove(path)) ++removed;
  return removed;
}

}  // namespace jouanolou
