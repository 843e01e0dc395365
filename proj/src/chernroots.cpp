#include "jouanolou/chernroots.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace jouanolou {

LinearForm LinearForm::unit(std::size_t n, std::size_t var, long a) {
  LinearForm f = zero(n);
  f.coeffs.at(var) = a;
  return f;
}

bool LinearForm::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](long a) { return a == 0; });
}

LinearTerms LinearForm::sparse() const {
  LinearTerms t;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) t.emplace_back(i, coeffs[i]);
  return t;
}

LinearForm LinearForm::operator-() const {
  LinearForm r = *this;
  for (auto& a : r.coeffs) a = -a;
  return r;
}

LinearForm operator+(const LinearForm& a, const LinearForm& b) {
  if (a.coeffs.size() != b.coeffs.size())
    throw MixedVariableTables("linear forms of different arity");
  LinearForm r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += b.coeffs[i];
  return r;
}

template <class Coeff>
Polynomial<Coeff> LinearForm::to_polynomial(const TablePtr& table,
                                            int truncation) const {
  if (coeffs.size() != table->size())
    throw MixedVariableTables("linear form does not match the table");
  Polynomial<Coeff> p(table, truncation);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (table->weight(i) != 1)
      throw std::invalid_argument("Chern roots must have weight 1");
    std::vector<int> e(coeffs.size(), 0);
    e[i] = 1;
    p.add_term(std::move(e), Coeff(coeffs[i]));
  }
  return p;
}

template ZPoly LinearForm::to_polynomial<mpz_class>(const TablePtr&, int) const;
template QPoly LinearForm::to_polynomial<mpq_class>(const TablePtr&, int) const;

// ---------------------------------------------------------------------------

VirtualBundle::VirtualBundle(TablePtr table, std::vector<SignedRoot> roots)
    : table_(std::move(table)) {
  for (auto& r : roots) add_root(std::move(r.form), r.sign);
}

VirtualBundle VirtualBundle::honest(TablePtr table,
                                    std::vector<LinearForm> roots) {
  VirtualBundle v(std::move(table));
  for (auto& r : roots) v.add_root(std::move(r), 1);
  return v;
}

long VirtualBundle::rank() const {
  long r = 0;
  for (const auto& root : roots_) r += root.sign;
  return r;
}

bool VirtualBundle::is_honest() const {
  return std::all_of(roots_.begin(), roots_.end(),
                     [](const SignedRoot& r) { return r.sign > 0; });
}

void VirtualBundle::add_root(LinearForm form, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("root sign must be +1 or -1");
  if (form.coeffs.size() != table_->size())
    throw MixedVariableTables("root does not match the bundle's table");
  for (std::size_t i = 0; i < form.coeffs.size(); ++i)
    if (form.coeffs[i] != 0 && table_->weight(i) != 1)
      throw std::invalid_argument("Chern roots must have weight 1");
  roots_.push_back({std::move(form), sign});
}

bool VirtualBundle::same_multiset(const VirtualBundle& other) const {
  if (!same_table(table_, other.table_)) return false;
  auto a = roots_;
  auto b = other.roots_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

namespace {

void require_same(const VirtualBundle& a, const VirtualBundle& b) {
  if (!same_table(a.table(), b.table()))
    throw MixedVariableTables("bundles over different tables");
}

// Groups equal roots; value is the net signed multiplicity.
std::map<LinearForm, long> net_roots(const VirtualBundle& v) {
  std::map<LinearForm, long> out;
  for (const auto& r : v.roots()) out[r.form] += r.sign;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace

VirtualBundle direct_sum(const VirtualBundle& a, const VirtualBundle& b) {
  require_same(a, b);
  VirtualBundle r = a;
  for (const auto& root : b.roots()) r.add_root(root.form, root.sign);
  return r;
}

VirtualBundle tensor(const VirtualBundle& a, const VirtualBundle& b) {
  require_same(a, b);
  VirtualBundle r(a.table());
  for (const auto& u : a.roots())
    for (const auto& v : b.roots()) r.add_root(u.form + v.form, u.sign * v.sign);
  return r;
}

VirtualBundle dual(const VirtualBundle& v) {
  VirtualBundle r(v.table());
  for (const auto& root : v.roots()) r.add_root(-root.form, root.sign);
  return r;
}

VirtualBundle lambda_minus1_dual(const VirtualBundle& v) {
  if (!v.is_honest())
    throw NegativeSignInput("lambda_minus1_dual needs an honest bundle");
  const std::size_t d = v.roots().size();
  if (d > static_cast<std::size_t>(kLambdaRankGuard))
    throw RankGuardExceeded("lambda_minus1_dual: rank " + std::to_string(d) +
                            " exceeds the guard of " +
                            std::to_string(kLambdaRankGuard));
  VirtualBundle r(v.table());
  const std::size_t n = v.table()->size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    LinearForm f = LinearForm::zero(n);
    int sign = 1;
    for (std::size_t j = 0; j < d; ++j) {
      if (mask & (std::size_t{1} << j)) {
        f = f + (-v.roots()[j].form);
        sign = -sign;
      }
    }
    r.add_root(std::move(f), sign);
  }
  return r;
}

// ---------------------------------------------------------------------------

template <class Coeff>
Polynomial<Coeff> TotalClass<Coeff>::total() const {
  if (components.empty()) throw std::logic_error("empty total class");
  Polynomial<Coeff> p = components.front();
  for (std::size_t k = 1; k < components.size(); ++k) p += components[k];
  return p;
}

template <class Coeff>
TotalClass<Coeff> split_by_degree(const Polynomial<Coeff>& p, int D) {
  TotalClass<Coeff> t;
  t.components.reserve(D + 1);
  for (int k = 0; k <= D; ++k)
    t.components.push_back(homogeneous_part(p, k).with_truncation(D));
  return t;
}

template struct TotalClass<mpz_class>;
template struct TotalClass<mpq_class>;
template TotalClass<mpz_class> split_by_degree(const ZPoly&, int);
template TotalClass<mpq_class> split_by_degree(const QPoly&, int);

ZPoly total_chern_polynomial(const VirtualBundle& v, int D) {
  auto index = std::make_shared<const MonomialIndex>(v.table(), D);
  DenseSeries<mpz_class> series(index);
  for (const auto& [form, mult] : net_roots(v)) {
    if (form.is_zero()) continue;
    const auto terms = form.sparse();
    for (long k = 0; k < std::abs(mult); ++k) {
      if (mult > 0)
        series.multiply_one_plus(terms);
      else
        series.divide_one_plus(terms);
    }
  }
  return series.to_polynomial();
}

TotalClass<mpz_class> total_chern(const VirtualBundle& v, int D) {
  return split_by_degree(total_chern_polynomial(v, D), D);
}

namespace {

mpz_class factorial(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// sum_{k=0}^{D} a_k r^k for a linear form r.
QPoly linear_series(const TablePtr& table, const LinearForm& form, int D,
                    const std::vector<mpq_class>& a) {
  QPoly root = form.to_polynomial<mpq_class>(table, D);
  QPoly power = QPoly::constant(table, 1, D);
  QPoly out(table, D);
  for (int k = 0; k <= D && k < static_cast<int>(a.size()); ++k) {
    if (k > 0) power = mul_truncated(power, root, D);
    if (power.is_zero()) break;
    out += power * a[k];
  }
  return out;
}

}  // namespace

TotalClass<mpq_class> chern_character(const VirtualBundle& v, int D) {
  std::vector<mpq_class> exp_coeffs;
  for (int k = 0; k <= D; ++k) exp_coeffs.emplace_back(mpz_class(1), factorial(k));
  QPoly sum(v.table(), D);
  for (const auto& [form, mult] : net_roots(v))
    sum += linear_series(v.table(), form, D, exp_coeffs) * mpq_class(mult);
  return split_by_degree(sum, D);
}

TotalClass<mpq_class> todd_inverse(const VirtualBundle& v, int D) {
  if (!v.is_honest())
    throw NegativeSignInput("todd_inverse needs an honest bundle");
  // (1 - e^{-r}) / r = sum_k (-1)^k r^k / (k+1)!
  std::vector<mpq_class> coeffs;
  for (int k = 0; k <= D; ++k)
    coeffs.emplace_back(mpz_class(k % 2 == 0 ? 1 : -1), factorial(k + 1));
  QPoly product = QPoly::constant(v.table(), 1, D);
  for (const auto& root : v.roots())
    product = mul_truncated(product, linear_series(v.table(), root.form, D, coeffs), D);
  return split_by_degree(product, D);
}

TotalClass<mpz_class> chern_from_character(const TotalClass<mpq_class>& ch,
                                           long rank, int D,
                                           const Reducer<mpq_class>& reduce) {
  if (ch.size() == 0) throw std::invalid_argument("empty Chern character");
  if (static_cast<int>(ch.size()) <= D)
    throw std::invalid_argument("Chern character shorter than the requested degree");
  const TablePtr& table = ch[0].table();
  auto apply = [&](const QPoly& p) { return reduce ? reduce(p) : p; };
  if (apply(ch[0]) != QPoly::constant(table, mpq_class(rank), D))
    throw std::invalid_argument("ch_0 does not equal the rank");

  // Power sums of the roots: p_k = k! ch_k.
  std::vector<QPoly> p(D + 1, QPoly(table, D));
  for (int k = 1; k <= D; ++k)
    p[k] = apply(ch[k].with_truncation(D) * mpq_class(factorial(k)));

  // k c_k = sum_{i=1}^{k} (-1)^{i-1} c_{k-i} p_i
  std::vector<QPoly> c(D + 1, QPoly(table, D));
  c[0] = QPoly::constant(table, 1, D);
  for (int k = 1; k <= D; ++k) {
    QPoly acc(table, D);
    for (int i = 1; i <= k; ++i) {
      QPoly term = apply(mul_truncated(c[k - i], p[i], D));
      if (i % 2 == 0)
        acc -= term;
      else
        acc += term;
    }
    c[k] = apply(acc * mpq_class(1, k));
  }

  TotalClass<mpz_class> out;
  for (int k = 0; k <= D; ++k) {
    if (!is_integral(c[k]))
      throw NonIntegralResult("chern_from_character: c_" + std::to_string(k) +
                              " = " + c[k].to_string() + " is not integral");
    out.components.push_back(to_integral(c[k]));
  }
  return out;
}

}  // namespace jouanolou
