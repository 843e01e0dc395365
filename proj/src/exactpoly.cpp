#include "jouanolou/exactpoly.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace jouanolou {

VariableTable::VariableTable(std::vector<std::string> names)
    : VariableTable(names, std::vector<int>(names.size(), 1)) {}

VariableTable::VariableTable(std::vector<std::string> names,
                             std::vector<int> weights)
    : names_(std::move(names)), weights_(std::move(weights)) {
  if (names_.size() != weights_.size())
    throw std::invalid_argument("variable table: names/weights size mismatch");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (weights_[i] < 1)
      throw std::invalid_argument("variable table: weight of '" + names_[i] +
                                  "' must be >= 1");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j])
        throw std::invalid_argument("variable table: duplicate name '" +
                                    names_[i] + "'");
  }
}

std::optional<std::size_t> VariableTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t VariableTable::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw std::out_of_range("unknown variable '" + std::string(name) + "'");
}

TablePtr make_table(std::vector<std::string> names) {
  return std::make_shared<const VariableTable>(std::move(names));
}

TablePtr make_table(std::vector<std::string> names, std::vector<int> weights) {
  return std::make_shared<const VariableTable>(std::move(names),
                                               std::move(weights));
}

bool same_table(const TablePtr& a, const TablePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Monomial::Monomial(const VariableTable& table, std::vector<int> exps)
    : exponents(std::move(exps)) {
  if (exponents.size() != table.size())
    throw std::invalid_argument("monomial arity does not match its table");
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0)
      throw std::invalid_argument("negative exponent");
    degree += exponents[i] * table.weight(i);
  }
}

namespace {

void require_same_table(const TablePtr& a, const TablePtr& b) {
  if (!same_table(a, b))
    throw MixedVariableTables("operands live over different variable tables");
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

template <class Coeff>
Polynomial<Coeff>::Polynomial(TablePtr table, int truncation)
    : table_(std::move(table)), truncation_(truncation) {
  if (!table_) throw std::invalid_argument("polynomial without a table");
  if (truncation_ < 0) throw std::invalid_argument("negative truncation");
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::constant(TablePtr table, const Coeff& c,
                                              int truncation) {
  Polynomial p(std::move(table), truncation);
  p.add_term(std::vector<int>(p.table_->size(), 0), c);
  return p;
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::variable(TablePtr table, std::size_t var,
                                              int truncation) {
  std::vector<int> e(table->size(), 0);
  e.at(var) = 1;
  return monomial(std::move(table), std::move(e), Coeff(1), truncation);
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::variable(TablePtr table,
                                              std::string_view name,
                                              int truncation) {
  std::size_t var = table->index(name);
  return variable(std::move(table), var, truncation);
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::monomial(TablePtr table,
                                              std::vector<int> exponents,
                                              const Coeff& c, int truncation) {
  Polynomial p(std::move(table), truncation);
  p.add_term(std::move(exponents), c);
  return p;
}

template <class Coeff>
int Polynomial<Coeff>::degree() const {
  return terms_.empty() ? -1 : terms_.rbegin()->first.degree;
}

template <class Coeff>
Coeff Polynomial<Coeff>::coefficient(const std::vector<int>& exponents) const {
  auto it = terms_.find(Monomial(*table_, exponents));
  return it == terms_.end() ? Coeff(0) : it->second;
}

template <class Coeff>
Coeff Polynomial<Coeff>::constant_term() const {
  if (terms_.empty() || terms_.begin()->first.degree != 0) return Coeff(0);
  return terms_.begin()->second;
}

template <class Coeff>
void Polynomial<Coeff>::add_term(const Monomial& m, const Coeff& c) {
  if (m.degree > truncation_ || sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

template <class Coeff>
void Polynomial<Coeff>::add_term(std::vector<int> exponents, const Coeff& c) {
  add_term(Monomial(*table_, std::move(exponents)), c);
}

template <class Coeff>
Polynomial<Coeff>& Polynomial<Coeff>::operator+=(const Polynomial& other) {
  require_same_table(table_, other.table_);
  truncation_ = std::min(truncation_, other.truncation_);
  while (!terms_.empty() && terms_.rbegin()->first.degree > truncation_)
    terms_.erase(std::prev(terms_.end()));
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

template <class Coeff>
Polynomial<Coeff>& Polynomial<Coeff>::operator-=(const Polynomial& other) {
  require_same_table(table_, other.table_);
  truncation_ = std::min(truncation_, other.truncation_);
  while (!terms_.empty() && terms_.rbegin()->first.degree > truncation_)
    terms_.erase(std::prev(terms_.end()));
  for (const auto& [m, c] : other.terms_) add_term(m, Coeff(-c));
  return *this;
}

template <class Coeff>
Polynomial<Coeff>& Polynomial<Coeff>::operator*=(const Coeff& scalar) {
  if (sgn(scalar) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= scalar;
  return *this;
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

template <class Coeff>
Polynomial<Coeff> Polynomial<Coeff>::with_truncation(int truncation) const {
  Polynomial r(table_, truncation);
  for (const auto& [m, c] : terms_)
    if (m.degree <= truncation) r.terms_.emplace_hint(r.terms_.end(), m, c);
  return r;
}

std::string coefficient_string(const mpz_class& c) { return c.get_str(); }
std::string coefficient_string(const mpq_class& c) { return c.get_str(); }

template <class Coeff>
std::string Polynomial<Coeff>::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Coeff magnitude = abs(c);
    if (sgn(c) < 0)
      out << '-';
    else if (!first)
      out << '+';
    first = false;
    out << coefficient_string(magnitude);
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
      if (m.exponents[i] == 0) continue;
      out << '*' << table_->name(i);
      if (m.exponents[i] > 1) out << '^' << m.exponents[i];
    }
  }
  return out.str();
}

template <class Coeff>
Polynomial<Coeff> mul_truncated(const Polynomial<Coeff>& p,
                                const Polynomial<Coeff>& q, int D) {
  require_same_table(p.table_, q.table_);
  if (D > p.truncation_ || D > q.truncation_)
    throw std::invalid_argument(
        "mul_truncated: requested degree exceeds an operand's truncation");
  Polynomial<Coeff> r(p.table_, D);
  const std::size_t n = p.table_->size();
  Monomial m;
  m.exponents.resize(n);
  for (const auto& [a, ca] : p.terms_) {
    if (a.degree > D) break;
    for (const auto& [b, cb] : q.terms_) {
      if (a.degree + b.degree > D) break;
      m.degree = a.degree + b.degree;
      for (std::size_t i = 0; i < n; ++i)
        m.exponents[i] = a.exponents[i] + b.exponents[i];
      auto [it, inserted] = r.terms_.try_emplace(m, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  std::erase_if(r.terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
  return r;
}

template <class Coeff>
Polynomial<Coeff> invert_one_plus(const Polynomial<Coeff>& u, int D) {
  if (sgn(u.constant_term()) != 0)
    throw NonzeroConstantTerm("invert_one_plus: argument has a constant term");
  D = std::min(D, u.truncation());
  // r = 1 - u*r, solved degree by degree: every term of u has degree >= 1.
  auto one = Polynomial<Coeff>::constant(u.table(), Coeff(1), D);
  Polynomial<Coeff> result = one;
  Polynomial<Coeff> power_term = one;
  auto minus_u = (-u).with_truncation(D);
  for (int k = 1; k <= D; ++k) {
    power_term = mul_truncated(power_term, minus_u, D);
    if (power_term.is_zero()) break;
    result += power_term;
  }
  return result;
}

template <class Coeff>
Polynomial<Coeff> exact_divide(const Polynomial<Coeff>& p, std::size_t var) {
  const auto& table = *p.table();
  if (var >= table.size())
    throw std::out_of_range("exact_divide: variable out of range");
  Polynomial<Coeff> r(p.table(), p.truncation());
  for (const auto& [m, c] : p.terms()) {
    if (m.exponents[var] == 0)
      throw DivisionRemainderNonzero("exact_divide: a term is not divisible by " +
                                     table.name(var));
    auto e = m.exponents;
    --e[var];
    r.add_term(std::move(e), c);
  }
  return r;
}

template <class Coeff>
Polynomial<Coeff> homogeneous_part(const Polynomial<Coeff>& p, int k) {
  if (k < 0) throw std::invalid_argument("homogeneous_part: negative degree");
  Polynomial<Coeff> r(p.table(), p.truncation());
  for (const auto& [m, c] : p.terms())
    if (m.degree == k) r.add_term(m, c);
  return r;
}

template <class Coeff>
Polynomial<Coeff> power(const Polynomial<Coeff>& p, unsigned exponent) {
  auto result = Polynomial<Coeff>::constant(p.table(), Coeff(1), p.truncation());
  auto base = p;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

template <class Coeff>
Polynomial<Coeff> substitute(const Polynomial<Coeff>& p,
                             std::span<const Polynomial<Coeff>> images,
                             int truncation) {
  if (images.size() != p.table()->size())
    throw std::invalid_argument("substitute: one image per variable required");
  if (images.empty()) {
    throw std::invalid_argument("substitute: empty image list");
  }
  const TablePtr& target = images[0].table();
  for (const auto& img : images) require_same_table(target, img.table());

  // Cache powers of each image.
  std::vector<std::vector<Polynomial<Coeff>>> powers(images.size());
  auto power_of = [&](std::size_t var, int e) -> const Polynomial<Coeff>& {
    auto& list = powers[var];
    if (list.empty())
      list.push_back(Polynomial<Coeff>::constant(target, Coeff(1), truncation));
    while (static_cast<int>(list.size()) <= e)
      list.push_back(mul_truncated(list.back(),
                                   images[var].with_truncation(truncation),
                                   truncation));
    return list[e];
  };

  Polynomial<Coeff> result(target, truncation);
  for (const auto& [m, c] : p.terms()) {
    auto term = Polynomial<Coeff>::constant(target, c, truncation);
    for (std::size_t i = 0; i < m.exponents.size() && !term.is_zero(); ++i)
      if (m.exponents[i] > 0)
        term = mul_truncated(term, power_of(i, m.exponents[i]), truncation);
    result += term;
  }
  return result;
}

template <class Coeff>
Polynomial<Coeff> embed(const Polynomial<Coeff>& p, const TablePtr& target,
                        int truncation) {
  const auto& source = *p.table();
  std::vector<std::size_t> position(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    auto j = target->find(source.name(i));
    if (!j || target->weight(*j) != source.weight(i))
      throw MixedVariableTables("embed: variable '" + source.name(i) +
                                "' missing from target table");
    position[i] = *j;
  }
  Polynomial<Coeff> r(target, truncation);
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> e(target->size(), 0);
    for (std::size_t i = 0; i < source.size(); ++i) e[position[i]] = m.exponents[i];
    r.add_term(std::move(e), c);
  }
  return r;
}

QPoly to_rational(const ZPoly& p) {
  QPoly r(p.table(), p.truncation());
  for (const auto& [m, c] : p.terms()) r.add_term(m, mpq_class(c));
  return r;
}

bool is_integral(const QPoly& p) {
  return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& kv) {
    return kv.second.get_den() == 1;
  });
}

ZPoly to_integral(const QPoly& p) {
  ZPoly r(p.table(), p.truncation());
  for (const auto& [m, c] : p.terms()) {
    if (c.get_den() != 1)
      throw NonIntegralCoefficient("coefficient " + c.get_str() +
                                   " is not an integer");
    r.add_term(m, mpz_class(c.get_num()));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Dense series

namespace {

void enumerate_monomials(const VariableTable& table, int D, std::size_t var,
                         std::vector<int>& current, int degree,
                         std::vector<Monomial>& out) {
  if (var == table.size()) {
    Monomial m;
    m.degree = degree;
    m.exponents = current;
    out.push_back(std::move(m));
    return;
  }
  const int w = table.weight(var);
  for (int e = 0; degree + e * w <= D; ++e) {
    current[var] = e;
    enumerate_monomials(table, D, var + 1, current, degree + e * w, out);
  }
  current[var] = 0;
}

}  // namespace

MonomialIndex::MonomialIndex(TablePtr table, int truncation)
    : table_(std::move(table)), truncation_(truncation) {
  const std::size_t n = table_->size();
  std::vector<int> current(n, 0);
  enumerate_monomials(*table_, truncation_, 0, current, 0, monomials_);
  std::sort(monomials_.begin(), monomials_.end());

  // Pack exponents into a 64-bit key when they fit; otherwise fall back to
  // an ordered map on the exponent vectors.
  const int bits = std::max(1, static_cast<int>(std::bit_width(
                                   static_cast<unsigned>(truncation_))));
  raise_.assign(monomials_.size() * n, -1);
  if (static_cast<std::size_t>(bits) * n <= 64) {
    auto pack = [&](const std::vector<int>& e) {
      std::uint64_t key = 0;
      for (std::size_t i = 0; i < n; ++i)
        key |= static_cast<std::uint64_t>(e[i]) << (bits * i);
      return key;
    };
    std::unordered_map<std::uint64_t, std::int32_t> lookup;
    lookup.reserve(monomials_.size() * 2);
    for (std::size_t i = 0; i < monomials_.size(); ++i)
      lookup.emplace(pack(monomials_[i].exponents), static_cast<std::int32_t>(i));
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
      const std::uint64_t key = pack(monomials_[i].exponents);
      for (std::size_t v = 0; v < n; ++v) {
        if (monomials_[i].degree + table_->weight(v) > truncation_) continue;
        raise_[i * n + v] = lookup.at(key + (std::uint64_t{1} << (bits * v)));
      }
    }
  } else {
    std::map<std::vector<int>, std::int32_t> lookup;
    for (std::size_t i = 0; i < monomials_.size(); ++i)
      lookup.emplace(monomials_[i].exponents, static_cast<std::int32_t>(i));
    for (std::size_t i = 0; i < monomials_.size(); ++i) {
      auto e = monomials_[i].exponents;
      for (std::size_t v = 0; v < n; ++v) {
        if (monomials_[i].degree + table_->weight(v) > truncation_) continue;
        ++e[v];
        raise_[i * n + v] = lookup.at(e);
        --e[v];
      }
    }
  }
}

template <class Coeff>
DenseSeries<Coeff>::DenseSeries(std::shared_ptr<const MonomialIndex> index)
    : index_(std::move(index)), coeffs_(index_->size()) {
  coeffs_[0] = 1;  // the constant monomial sorts first
}

namespace {

void check_linear_form(const VariableTable& table, const LinearTerms& form) {
  for (const auto& [v, a] : form)
    if (v >= table.size() || table.weight(v) != 1)
      throw std::invalid_argument(
          "dense series: linear forms must use weight-1 variables");
}

inline void add_scaled(mpz_class& target, const mpz_class& source, long k) {
  if (k == 1)
    target += source;
  else if (k == -1)
    target -= source;
  else if (k >= 0)
    mpz_addmul_ui(target.get_mpz_t(), source.get_mpz_t(),
                  static_cast<unsigned long>(k));
  else
    mpz_submul_ui(target.get_mpz_t(), source.get_mpz_t(),
                  static_cast<unsigned long>(-k));
}

inline void add_scaled(mpq_class& target, const mpq_class& source, long k) {
  target += source * k;
}

}  // namespace

template <class Coeff>
void DenseSeries<Coeff>::multiply_one_plus(const LinearTerms& form) {
  check_linear_form(*index_->table(), form);
  // Walk downwards in degree so every read sees the old coefficient.
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (const auto& [v, a] : form) {
      const std::int32_t j = index_->raise(i, v);
      if (j >= 0) add_scaled(coeffs_[j], coeffs_[i], a);
    }
  }
}

template <class Coeff>
void DenseSeries<Coeff>::divide_one_plus(const LinearTerms& form) {
  check_linear_form(*index_->table(), form);
  // r + form*r = p, solved upwards in degree.
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (const auto& [v, a] : form) {
      const std::int32_t j = index_->raise(i, v);
      if (j >= 0) add_scaled(coeffs_[j], coeffs_[i], -a);
    }
  }
}

template <class Coeff>
Polynomial<Coeff> DenseSeries<Coeff>::to_polynomial() const {
  Polynomial<Coeff> p(index_->table(), index_->truncation());
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (sgn(coeffs_[i]) != 0) p.add_term(index_->at(i), coeffs_[i]);
  return p;
}

// ---------------------------------------------------------------------------

#define JOUANOLOU_INSTANTIATE(C)                                              \
  template class Polynomial<C>;                                               \
  template Polynomial<C> mul_truncated(const Polynomial<C>&,                  \
                                       const Polynomial<C>&, int);            \
  template Polynomial<C> invert_one_plus(const Polynomial<C>&, int);          \
  template Polynomial<C> exact_divide(const Polynomial<C>&, std::size_t);     \
  template Polynomial<C> homogeneous_part(const Polynomial<C>&, int);         \
  template Polynomial<C> power(const Polynomial<C>&, unsigned);               \
  template Polynomial<C> substitute(const Polynomial<C>&,                     \
                                    std::span<const Polynomial<C>>, int);     \
  template Polynomial<C> embed(const Polynomial<C>&, const TablePtr&, int);   \
  template class DenseSeries<C>;

JOUANOLOU_INSTANTIATE(mpz_class)
JOUANOLOU_INSTANTIATE(mpq_class)

#undef JOUANOLOU_INSTANTIATE

}  // namespace jouanolou
