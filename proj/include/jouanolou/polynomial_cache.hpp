#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "jouanolou/jouanolou.hpp"

namespace jouanolou {

inline constexpr int kCacheSchemaVersion = 1;

// {schema_version, d, q, base_rank, terms: [{c_exps, cp_exps,
// xi_binomial: [{k, coeff}]}]}; coefficients are decimal strings.
std::string to_cache_json(const JouanolouPolynomial& P);
// Throws CacheError on a malformed or mismatched document.
JouanolouPolynomial from_cache_json(const std::string& text);

// One JSON file per (d, q) in a directory.
class PolynomialCache {
 public:
  explicit PolynomialCache(std::filesystem::path dir);

  // JOUANOLOU_CACHE_DIR, else $XDG_CACHE_HOME/jouanolou, else
  // ~/.cache/jouanolou, else ./.jouanolou-cache.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(int d, int q) const;

  std::optional<JouanolouPolynomial> load(int d, int q) const;
  // Writes to a temporary file in the same directory and renames it over
  // the target.
  void store(const JouanolouPolynomial& P) const;

  std::vector<std::filesystem::path> list() const;
  std::size_t clear() const;

 private:
  std::filesystem::path dir_;
};

}  // namespace jouanolou
