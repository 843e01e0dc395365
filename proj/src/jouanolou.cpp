#include "jouanolou/jouanolou.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "jouanolou/polynomial_cache.hpp"

namespace jouanolou {

UniversalRing UniversalRing::make(int e, int d) {
  if (e < 0 || d < 0) throw std::invalid_argument("negative universal ring size");
  std::vector<std::string> names;
  for (int i = 1; i <= e; ++i) names.push_back("x" + std::to_string(i));
  for (int j = 1; j <= d; ++j) names.push_back("y" + std::to_string(j));
  return {e, d, make_table(std::move(names))};
}

std::vector<std::size_t> UniversalRing::x_vars() const {
  std::vector<std::size_t> v(e);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<std::size_t> UniversalRing::y_vars() const {
  std::vector<std::size_t> v(d);
  std::iota(v.begin(), v.end(), static_cast<std::size_t>(e));
  return v;
}

ZPoly universal_cq(int e, int d, int q, int truncation) {
  if (e < 1 || d < 1) throw std::invalid_argument("universal_cq needs e, d >= 1");
  if (q < 0) throw std::invalid_argument("universal_cq: negative degree");
  if (q > truncation)
    throw TruncationExceeded("universal_cq: degree " + std::to_string(q) +
                             " exceeds truncation " + std::to_string(truncation));
  const UniversalRing ring = UniversalRing::make(e, d);
  const std::size_t n = ring.table->size();
  if (q == 0) return ZPoly::constant(ring.table, 1, truncation);

  std::vector<LinearForm> b_roots, q_roots;
  for (auto v : ring.x_vars()) b_roots.push_back(LinearForm::unit(n, v));
  for (auto v : ring.y_vars()) q_roots.push_back(LinearForm::unit(n, v));
  const auto b = VirtualBundle::honest(ring.table, b_roots);
  const auto koszul = lambda_minus1_dual(VirtualBundle::honest(ring.table, q_roots));
  const ZPoly total = total_chern_polynomial(tensor(b, koszul), q);
  return homogeneous_part(total, q).with_truncation(truncation);
}

// ---------------------------------------------------------------------------
// Elementary symmetric rewriting

namespace {

using Partition = std::vector<int>;
using BlockKey = std::vector<Partition>;

Partition conjugate(const Partition& p) {
  Partition c;
  if (p.empty()) return c;
  for (int k = 1; k <= p.front(); ++k) {
    int count = 0;
    for (int part : p)
      if (part >= k) ++count;
    c.push_back(count);
  }
  return c;
}

void partitions_of(int total, int max_part, int max_len, Partition& current,
                   std::vector<Partition>& out) {
  if (total == 0) {
    out.push_back(current);
    return;
  }
  if (max_len == 0) return;
  for (int part = std::min(total, max_part); part >= 1; --part) {
    current.push_back(part);
    partitions_of(total - part, part, max_len - 1, current, out);
    current.pop_back();
  }
}

// Number of 0/1 matrices with the given row and column sums.
class ZeroOneCounter {
 public:
  std::uint64_t count(const Partition& rows, const Partition& cols) {
    return count_from(rows, 0, cols);
  }

 private:
  std::uint64_t count_from(const Partition& rows, std::size_t row,
                           Partition cols) {
    if (row == rows.size())
      return std::all_of(cols.begin(), cols.end(), [](int c) { return c == 0; })
                 ? 1
                 : 0;
    std::sort(cols.begin(), cols.end(), std::greater<>());
    auto key = std::make_pair(Partition(rows.begin() + row, rows.end()), cols);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t total = 0;
    choose(rows, row, cols, 0, rows[row], total);
    memo_.emplace(std::move(key), total);
    return total;
  }

  void choose(const Partition& rows, std::size_t row, Partition& cols,
              std::size_t start, int remaining, std::uint64_t& total) {
    if (remaining == 0) {
      total += count_from(rows, row + 1, cols);
      return;
    }
    for (std::size_t j = start; j < cols.size(); ++j) {
      if (cols[j] == 0) continue;
      --cols[j];
      choose(rows, row, cols, j + 1, remaining - 1, total);
      ++cols[j];
    }
  }

  std::map<std::pair<Partition, Partition>, std::uint64_t> memo_;
};

// Monomial expansion of e_{alpha'} (leading monomial x^alpha) restricted to
// partitions, in n variables.
class ElementaryExpansions {
 public:
  explicit ElementaryExpansions(int n) : n_(n) {}

  const std::vector<std::pair<Partition, std::uint64_t>>& of(const Partition& alpha) {
    if (auto it = memo_.find(alpha); it != memo_.end()) return it->second;
    const int size = std::accumulate(alpha.begin(), alpha.end(), 0);
    const Partition rows = conjugate(alpha);
    std::vector<Partition> candidates;
    Partition current;
    partitions_of(size, size, n_, current, candidates);
    std::vector<std::pair<Partition, std::uint64_t>> out;
    for (const auto& mu : candidates) {
      const std::uint64_t k = counter_.count(rows, mu);
      if (k != 0) out.emplace_back(mu, k);
    }
    return memo_.emplace(alpha, std::move(out)).first->second;
  }

 private:
  int n_;
  ZeroOneCounter counter_;
  std::map<Partition, std::vector<std::pair<Partition, std::uint64_t>>> memo_;
};

std::uint64_t orbit_size(const std::vector<int>& exps) {
  // n! / prod (multiplicity of each exponent value)!
  std::map<int, int> mult;
  for (int e : exps) ++mult[e];
  std::uint64_t result = 1;
  int placed = 0;
  for (const auto& [value, m] : mult) {
    for (int i = 1; i <= m; ++i) {
      ++placed;
      result = result * static_cast<std::uint64_t>(placed) / static_cast<std::uint64_t>(i);
    }
  }
  return result;
}

Partition strip_zeros(std::vector<int> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

}  // namespace

TablePtr elementary_table(const VariableTable& source,
                          std::span<const SymmetricBlock> blocks) {
  std::vector<std::string> names;
  std::vector<int> weights;
  for (const auto& block : blocks) {
    const int w = block.vars.empty() ? 1 : source.weight(block.vars.front());
    for (int k = 1; k <= block.max_index; ++k) {
      names.push_back(block.prefix + std::to_string(k));
      weights.push_back(k * w);
    }
  }
  return make_table(std::move(names), std::move(weights));
}

ZPoly express_in_elementary(const ZPoly& p, std::span<const SymmetricBlock> blocks) {
  return express_in_elementary(p, blocks, elementary_table(*p.table(), blocks));
}

ZPoly express_in_elementary(const ZPoly& p, std::span<const SymmetricBlock> blocks,
                            const TablePtr& target) {
  const VariableTable& table = *p.table();
  std::vector<int> owner(table.size(), -1);
  std::vector<std::size_t> offset;  // first target variable of each block
  std::size_t next = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    offset.push_back(next);
    next += static_cast<std::size_t>(blocks[b].max_index);
    for (auto v : blocks[b].vars) {
      if (v >= table.size() || owner[v] != -1)
        throw std::invalid_argument("express_in_elementary: bad block layout");
      owner[v] = static_cast<int>(b);
      if (table.weight(v) != table.weight(blocks[b].vars.front()))
        throw std::invalid_argument("express_in_elementary: mixed weights in a block");
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end())
    throw std::invalid_argument("express_in_elementary: variable outside every block");
  if (target->size() != next)
    throw std::invalid_argument("express_in_elementary: target table size mismatch");

  auto block_exponents = [&](const Monomial& m, std::size_t b) {
    std::vector<int> e;
    for (auto v : blocks[b].vars) e.push_back(m.exponents[v]);
    return e;
  };

  // Dominant terms (non-increasing exponents inside every block).
  std::map<BlockKey, mpz_class> work;
  for (const auto& [m, c] : p.terms()) {
    bool dominant = true;
    BlockKey key;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      auto e = block_exponents(m, b);
      dominant = dominant && std::is_sorted(e.begin(), e.end(), std::greater<>());
      key.push_back(strip_zeros(std::move(e)));
    }
    if (dominant) work.emplace(std::move(key), c);
  }

  // Every term must match its dominant representative, and each orbit must
  // be complete.
  std::map<BlockKey, std::uint64_t> seen;
  for (const auto& [m, c] : p.terms()) {
    BlockKey key;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      key.push_back(strip_zeros(block_exponents(m, b)));
    auto it = work.find(key);
    if (it == work.end() || it->second != c)
      throw NonSymmetricInput("express_in_elementary: input is not symmetric");
    ++seen[key];
  }
  for (const auto& [m, c] : p.terms()) {
    BlockKey key;
    std::uint64_t expected = 1;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      auto e = block_exponents(m, b);
      expected *= orbit_size(e);
      key.push_back(strip_zeros(std::move(e)));
    }
    if (seen[key] != expected)
      throw NonSymmetricInput("express_in_elementary: incomplete symmetric orbit");
  }

  std::vector<ElementaryExpansions> expansions;
  for (const auto& block : blocks)
    expansions.emplace_back(static_cast<int>(block.vars.size()));

  ZPoly result(target, p.truncation());
  while (!work.empty()) {
    auto lead = std::prev(work.end());
    const BlockKey key = lead->first;
    const mpz_class coeff = lead->second;

    std::vector<int> out(target->size(), 0);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const Partition& alpha = key[b];
      for (std::size_t k = 0; k < alpha.size(); ++k) {
        const int next_part = k + 1 < alpha.size() ? alpha[k + 1] : 0;
        const int power = alpha[k] - next_part;
        if (power == 0) continue;
        if (static_cast<int>(k) + 1 > blocks[b].max_index)
          throw std::invalid_argument("express_in_elementary: target table too small");
        out[offset[b] + k] = power;
      }
    }
    result.add_term(std::move(out), coeff);

    // Subtract coeff * prod_b e_{alpha_b'} expressed on dominant monomials.
    std::function<void(std::size_t, BlockKey&, mpz_class)> subtract =
        [&](std::size_t b, BlockKey& partial, mpz_class factor) {
          if (b == blocks.size()) {
            auto it = work.find(partial);
            if (it == work.end()) {
              work.emplace(partial, -factor);
            } else {
              it->second -= factor;
              if (sgn(it->second) == 0) work.erase(it);
            }
            return;
          }
          for (const auto& [mu, k] : expansions[b].of(key[b])) {
            partial.push_back(mu);
            subtract(b + 1, partial, factor * mpz_class(std::to_string(k)));
            partial.pop_back();
          }
        };
    BlockKey partial;
    subtract(0, partial, coeff);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Rank interpolation

TablePtr JouanolouPolynomial::coefficient_table() const {
  const int m = arity();
  std::vector<std::string> names;
  std::vector<int> weights;
  for (int i = 1; i <= m; ++i) {
    names.push_back("c" + std::to_string(i));
    weights.push_back(i);
  }
  for (int j = 1; j <= m; ++j) {
    names.push_back("cp" + std::to_string(j));
    weights.push_back(j);
  }
  return make_table(std::move(names), std::move(weights));
}

mpz_class binomial(const mpz_class& n, unsigned long k) {
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

mpz_class xi_value(const JouanolouTerm& term, int base_rank, const mpz_class& xi) {
  mpz_class value = 0;
  const mpz_class shifted = xi - base_rank;
  for (std::size_t k = 0; k < term.xi_binomial.size(); ++k)
    if (sgn(term.xi_binomial[k]) != 0) value += term.xi_binomial[k] * binomial(shifted, k);
  return value;
}

std::vector<mpq_class> xi_monomial_coefficients(const JouanolouTerm& term,
                                                int base_rank) {
  // binom(xi - r, k) = prod_{i<k} (xi - r - i) / k!
  std::vector<mpq_class> out(std::max<std::size_t>(term.xi_binomial.size(), 1));
  std::vector<mpq_class> basis{1};  // coefficients of the running product
  mpz_class fact = 1;
  for (std::size_t k = 0; k < term.xi_binomial.size(); ++k) {
    if (k > 0) {
      const mpq_class root = base_rank + static_cast<long>(k) - 1;
      std::vector<mpq_class> next(basis.size() + 1);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        next[i + 1] += basis[i];
        next[i] -= basis[i] * root;
      }
      basis = std::move(next);
      fact *= static_cast<long>(k);
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
      out[i] += mpq_class(term.xi_binomial[k]) * basis[i] / mpq_class(fact);
  }
  for (auto& c : out) c.canonicalize();
  while (out.size() > 1 && sgn(out.back()) == 0) out.pop_back();
  return out;
}

int base_rank_for(int d, int q) { return std::max(1, q - d); }

JouanolouPolynomial interpolate_rank(std::span<const RankSample> samples, int d,
                                     int q, int max_xi_degree) {
  if (samples.size() < static_cast<std::size_t>(max_xi_degree) + 2)
    throw RankSamplesInsufficient("interpolate_rank: " + std::to_string(samples.size()) +
                                  " samples, need " +
                                  std::to_string(max_xi_degree + 2));
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].rank != samples[0].rank + static_cast<int>(i))
      throw RankSamplesInsufficient("interpolate_rank: ranks are not consecutive");
  const TablePtr& table = samples[0].value.table();
  for (const auto& s : samples)
    if (!same_table(table, s.value.table()))
      throw MixedVariableTables("interpolate_rank: samples over different tables");

  std::map<Monomial, std::vector<mpz_class>> series;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (const auto& [m, c] : samples[i].value.terms()) {
      auto& values = series[m];
      values.resize(samples.size());
      values[i] = c;
    }

  JouanolouPolynomial P;
  P.d = d;
  P.q = q;
  P.base_rank = samples[0].rank;
  const int m_arity = P.arity();
  if (static_cast<int>(table->size()) != 2 * m_arity)
    throw std::invalid_argument("interpolate_rank: table does not match (d, q)");

  for (auto& [mono, values] : series) {
    values.resize(samples.size());
    std::vector<mpz_class> diffs;
    std::vector<mpz_class> row = values;
    while (!row.empty()) {
      diffs.push_back(row.front());
      for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = row[i + 1] - row[i];
      row.pop_back();
    }
    for (std::size_t k = static_cast<std::size_t>(max_xi_degree) + 1; k < diffs.size(); ++k)
      if (sgn(diffs[k]) != 0)
        throw StabilizationFailure("interpolate_rank: finite difference of order " +
                                   std::to_string(k) + " does not vanish");
    while (!diffs.empty() && sgn(diffs.back()) == 0) diffs.pop_back();
    if (diffs.empty()) continue;
    JouanolouTerm term;
    term.c_exps.assign(mono.exponents.begin(), mono.exponents.begin() + m_arity);
    term.cp_exps.assign(mono.exponents.begin() + m_arity, mono.exponents.end());
    term.xi_binomial = std::move(diffs);
    P.terms.push_back(std::move(term));
  }
  return P;
}

// ---------------------------------------------------------------------------
// Generation

ZPoly universal_quotient(int e, int d, int q, const TablePtr& coefficient_table) {
  const int m = q - d;
  ZPoly C = universal_cq(e, d, q, std::max(q, kDefaultTruncation));
  const UniversalRing ring = UniversalRing::make(e, d);
  for (auto y : ring.y_vars()) C = exact_divide(C, y);
  const SymmetricBlock blocks[] = {{ring.x_vars(), "c", m}, {ring.y_vars(), "cp", m}};
  return express_in_elementary(C, blocks, coefficient_table)
      .with_truncation(std::max(q, kDefaultTruncation));
}

namespace {

JouanolouPolynomial constant_polynomial(int d, int q, long value) {
  JouanolouPolynomial P;
  P.d = d;
  P.q = q;
  P.base_rank = base_rank_for(d, q);
  if (value != 0) P.terms.push_back({{}, {}, {mpz_class(value)}});
  return P;
}

}  // namespace

JouanolouPolynomial generate(int d, int q, const GenerateOptions& options) {
  if (d < 1) throw std::invalid_argument("generate: codimension must be >= 1");
  if (q < 0) throw std::invalid_argument("generate: negative degree");
  if (q == 0) return constant_polynomial(d, q, 1);
  if (q < d) return constant_polynomial(d, q, 0);

  const bool plain = options.extra_samples == 0;
  if (plain && options.cache)
    if (auto cached = options.cache->load(d, q)) return *std::move(cached);

  const int e0 = base_rank_for(d, q);
  JouanolouPolynomial probe;
  probe.d = d;
  probe.q = q;
  const TablePtr table = probe.coefficient_table();

  const int fit_count = q + 2 + options.extra_samples;
  std::vector<RankSample> samples;
  for (int i = 0; i < fit_count; ++i)
    samples.push_back({e0 + i, universal_quotient(e0 + i, d, q, table)});
  JouanolouPolynomial P = interpolate_rank(samples, d, q, q);

  for (int i = 0; i < options.validation_ranks; ++i) {
    const int e = e0 + fit_count + i;
    const ZPoly expected = universal_quotient(e, d, q, table);
    if (evaluate_at_rank(P, e) != expected)
      throw StabilizationFailure("generate: interpolated P_" + std::to_string(q) + "^" +
                                 std::to_string(d) + " disagrees with rank " +
                                 std::to_string(e));
  }

  if (plain && options.cache) options.cache->store(P);
  return P;
}

// ---------------------------------------------------------------------------
// Evaluation

ZPoly evaluate(const JouanolouPolynomial& P, const mpz_class& rank,
               std::span<const ZPoly> c, std::span<const ZPoly> cp,
               const TablePtr& target, int truncation,
               const Reducer<mpz_class>& reduce) {
  auto apply = [&](const ZPoly& p) { return reduce ? reduce(p) : p; };
  const int m = P.arity();
  auto input = [&](std::span<const ZPoly> list, int i) {
    if (i < static_cast<int>(list.size())) {
      if (!same_table(list[i].table(), target))
        throw MixedVariableTables("evaluate: class over a foreign table");
      return list[i].with_truncation(truncation);
    }
    return ZPoly(target, truncation);
  };
  std::vector<ZPoly> images;
  for (int i = 0; i < m; ++i) images.push_back(input(c, i));
  for (int j = 0; j < m; ++j) images.push_back(input(cp, j));

  std::vector<std::vector<ZPoly>> powers(images.size());
  auto power_of = [&](std::size_t v, int e) -> const ZPoly& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(ZPoly::constant(target, 1, truncation));
    while (static_cast<int>(list.size()) <= e)
      list.push_back(apply(mul_truncated(list.back(), images[v], truncation)));
    return list[e];
  };

  ZPoly result(target, truncation);
  for (const auto& term : P.terms) {
    const mpz_class scalar = xi_value(term, P.base_rank, rank);
    if (sgn(scalar) == 0) continue;
    ZPoly product = ZPoly::constant(target, scalar, truncation);
    for (int i = 0; i < m && !product.is_zero(); ++i) {
      if (term.c_exps[i] > 0)
        product = apply(mul_truncated(product, power_of(i, term.c_exps[i]), truncation));
    }
    for (int j = 0; j < m && !product.is_zero(); ++j) {
      if (term.cp_exps[j] > 0)
        product = apply(
            mul_truncated(product, power_of(m + j, term.cp_exps[j]), truncation));
    }
    result += product;
  }
  return apply(result);
}

namespace {

std::vector<int> term_exponents(const JouanolouTerm& t) {
  std::vector<int> e = t.c_exps;
  e.insert(e.end(), t.cp_exps.begin(), t.cp_exps.end());
  return e;
}

}  // namespace

ZPoly evaluate_at_rank(const JouanolouPolynomial& P, const mpz_class& xi) {
  const TablePtr table = P.coefficient_table();
  ZPoly out(table, std::max(P.arity(), kDefaultTruncation));
  for (const auto& t : P.terms) out.add_term(term_exponents(t), xi_value(t, P.base_rank, xi));
  return out;
}

ZPoly evaluate_at_rank_monomial_basis(const JouanolouPolynomial& P,
                                      const mpz_class& xi) {
  const TablePtr table = P.coefficient_table();
  ZPoly out(table, std::max(P.arity(), kDefaultTruncation));
  for (const auto& t : P.terms) {
    const auto coeffs = xi_monomial_coefficients(t, P.base_rank);
    mpq_class value = 0;
    mpq_class xi_power = 1;
    for (const auto& a : coeffs) {
      value += a * xi_power;
      xi_power *= mpq_class(xi);
    }
    value.canonicalize();
    if (value.get_den() != 1)
      throw NonIntegralEvaluation("P_" + std::to_string(P.q) + "^" + std::to_string(P.d) +
                                  " has coefficient " + value.get_str() +
                                  " at xi = " + xi.get_str());
    out.add_term(term_exponents(t), mpz_class(value.get_num()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string monomial_text(const JouanolouTerm& t, const char* c_name,
                          const char* cp_name, const char* joiner, bool latex) {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const char* name, int index, int e) {
    if (e == 0) return;
    if (!first) out << joiner;
    first = false;
    if (latex)
      out << name << "_{" << index << "}";
    else
      out << name << index;
    if (e > 1) out << (latex ? "^{" : "^") << e << (latex ? "}" : "");
  };
  for (std::size_t i = 0; i < t.c_exps.size(); ++i)
    emit(c_name, static_cast<int>(i) + 1, t.c_exps[i]);
  for (std::size_t j = 0; j < t.cp_exps.size(); ++j)
    emit(cp_name, static_cast<int>(j) + 1, t.cp_exps[j]);
  return out.str();
}

std::string header(const JouanolouPolynomial& P, bool latex) {
  std::ostringstream out;
  if (latex)
    out << "P_{" << P.q << "}^{" << P.d << "} = ";
  else
    out << "P_" << P.q << "^" << P.d << " = ";
  return out.str();
}

}  // namespace

std::string to_text(const JouanolouPolynomial& P) {
  std::ostringstream out;
  out << header(P, false);
  if (P.terms.empty()) return out.str() + "0";
  bool first = true;
  for (const auto& t : P.terms) {
    const auto coeffs = xi_monomial_coefficients(t, P.base_rank);
    std::size_t nonzero = 0;
    for (const auto& a : coeffs)
      if (sgn(a) != 0) ++nonzero;
    const std::string mono = monomial_text(t, "c", "cp", "*", false);

    if (nonzero == 1) {
      std::size_t k = 0;
      while (sgn(coeffs[k]) == 0) ++k;
      const mpq_class a = coeffs[k];
      out << (sgn(a) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
      std::string body;
      const mpq_class mag = abs(a);
      if (mag != 1 || (k == 0 && mono.empty())) body = mag.get_str();
      if (k > 0) {
        if (!body.empty()) body += "*";
        body += k == 1 ? "xi" : "xi^" + std::to_string(k);
      }
      if (!mono.empty()) {
        if (!body.empty()) body += "*";
        body += mono;
      }
      out << body;
    } else {
      out << (first ? "" : " + ") << "(";
      bool inner_first = true;
      for (std::size_t k = coeffs.size(); k-- > 0;) {
        const mpq_class& a = coeffs[k];
        if (sgn(a) == 0) continue;
        out << (sgn(a) < 0 ? "-" : (inner_first ? "" : "+"));
        inner_first = false;
        const mpq_class mag = abs(a);
        if (k == 0) {
          out << mag.get_str();
        } else {
          if (mag != 1) out << mag.get_str() << "*";
          out << (k == 1 ? std::string("xi") : "xi^" + std::to_string(k));
        }
      }
      out << ")";
      if (!mono.empty()) out << "*" << mono;
    }
    first = false;
  }
  return out.str();
}

std::string to_latex(const JouanolouPolynomial& P) {
  std::ostringstream out;
  out << header(P, true);
  if (P.terms.empty()) return out.str() + "0";
  bool first = true;
  for (const auto& t : P.terms) {
    std::ostringstream coeff;
    bool inner_first = true;
    std::size_t nonzero = 0;
    for (std::size_t k = 0; k < t.xi_binomial.size(); ++k) {
      const mpz_class& a = t.xi_binomial[k];
      if (sgn(a) == 0) continue;
      ++nonzero;
      coeff << (sgn(a) < 0 ? "-" : (inner_first ? "" : "+"));
      inner_first = false;
      const mpz_class mag = abs(a);
      if (k == 0) {
        coeff << mag.get_str();
      } else {
        if (mag != 1) coeff << mag.get_str();
        coeff << "\\binom{\\xi-" << P.base_rank << "}{" << k << "}";
      }
    }
    const std::string mono = monomial_text(t, "c", "c'", " ", true);
    out << (first ? "" : " + ");
    if (mono.empty())
      out << coeff.str();
    else if (nonzero == 1 && t.xi_binomial.size() == 1 && abs(t.xi_binomial[0]) == 1)
      out << (sgn(t.xi_binomial[0]) < 0 ? "-" : "") << mono;
    else
      out << "\\left(" << coeff.str() << "\\right) " << mono;
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

const JouanolouPolynomial& PolynomialStore::get(int d, int q) {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(d, q);
  if (auto it = memo_.find(key); it != memo_.end()) return *it->second;
  GenerateOptions options;
  options.cache = cache_;
  auto P = std::make_shared<const JouanolouPolynomial>(generate(d, q, options));
  return *memo_.emplace(key, std::move(P)).first->second;
}

void PolynomialStore::put(JouanolouPolynomial P) {
  std::lock_guard lock(mutex_);
  const auto key = std::make_pair(P.d, P.q);
  memo_[key] = std::make_shared<const JouanolouPolynomial>(std::move(P));
}

}  // namespace jouanolou
