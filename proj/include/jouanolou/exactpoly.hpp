#pragma once

// Exact truncated multivariate polynomials with a weighted grading.
//
// Coefficients are GMP integers (ZPoly) or rationals (QPoly). Every
// polynomial carries a truncation bound D: terms of weighted degree > D are
// discarded on construction and by every operation. Terms are kept in the
// canonical graded-lex order: ascending weighted degree, and within a degree
// lexicographically descending exponent vectors in table order.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "jouanolou/errors.hpp"

namespace jouanolou {

inline constexpr int kDefaultTruncation = 8;

class VariableTable {
 public:
  VariableTable() = default;
  // All weights 1.
  explicit VariableTable(std::vector<std::string> names);
  VariableTable(std::vector<std::string> names, std::vector<int> weights);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& weights() const { return weights_; }

  std::optional<std::size_t> find(std::string_view name) const;
  // Throws std::out_of_range for an undeclared name.
  std::size_t index(std::string_view name) const;

  bool operator==(const VariableTable&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
};

using TablePtr = std::shared_ptr<const VariableTable>;

TablePtr make_table(std::vector<std::string> names);
TablePtr make_table(std::vector<std::string> names, std::vector<int> weights);

bool same_table(const TablePtr& a, const TablePtr& b);

struct Monomial {
  int degree = 0;
  std::vector<int> exponents;

  Monomial() = default;
  Monomial(const VariableTable& table, std::vector<int> exps);

  friend bool operator==(const Monomial&, const Monomial&) = default;
  // Graded order: degree first, then lexicographically *descending*.
  friend std::strong_ordering operator<=>(const Monomial& a,
                                          const Monomial& b) {
    if (auto c = a.degree <=> b.degree; c != 0) return c;
    return b.exponents <=> a.exponents;
  }
};

template <class Coeff>
class Polynomial {
 public:
  using Terms = std::map<Monomial, Coeff>;

  Polynomial() = default;
  explicit Polynomial(TablePtr table, int truncation = kDefaultTruncation);

  static Polynomial constant(TablePtr table, const Coeff& c,
                             int truncation = kDefaultTruncation);
  static Polynomial variable(TablePtr table, std::size_t var,
                             int truncation = kDefaultTruncation);
  static Polynomial variable(TablePtr table, std::string_view name,
                             int truncation = kDefaultTruncation);
  static Polynomial monomial(TablePtr table, std::vector<int> exponents,
                             const Coeff& c,
                             int truncation = kDefaultTruncation);

  const TablePtr& table() const { return table_; }
  int truncation() const { return truncation_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // Highest weighted degree present; -1 for the zero polynomial.
  int degree() const;
  Coeff coefficient(const std::vector<int>& exponents) const;
  Coeff constant_term() const;

  // Accumulates c into the given monomial; zero results are erased and
  // monomials above the truncation are dropped.
  void add_term(const Monomial& m, const Coeff& c);
  void add_term(std::vector<int> exponents, const Coeff& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Coeff& scalar);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Coeff& s, Polynomial a) { return a *= s; }
  // Product truncated at the smaller of the two truncation bounds.
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    return mul_truncated(a, b, std::min(a.truncation(), b.truncation()));
  }

  // Same table content, same terms. The truncation bound is not compared.
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return same_table(a.table_, b.table_) && a.terms_ == b.terms_;
  }

  Polynomial with_truncation(int truncation) const;

  // Canonical text form, e.g. "1+3*h+2*h^2"; "0" for the zero polynomial.
  std::string to_string() const;

  template <class C>
  friend Polynomial<C> mul_truncated(const Polynomial<C>&, const Polynomial<C>&,
                                     int);

 private:
  TablePtr table_;
  int truncation_ = kDefaultTruncation;
  Terms terms_;
};

using ZPoly = Polynomial<mpz_class>;
using QPoly = Polynomial<mpq_class>;

// Throws MixedVariableTables if the tables differ and std::invalid_argument
// if D exceeds either operand's truncation.
template <class Coeff>
Polynomial<Coeff> mul_truncated(const Polynomial<Coeff>& p,
                                const Polynomial<Coeff>& q, int D);

// Sum_{k>=0} (-u)^k truncated at D. Throws NonzeroConstantTerm.
template <class Coeff>
Polynomial<Coeff> invert_one_plus(const Polynomial<Coeff>& u, int D);

// p / v for a variable v dividing every term. Throws DivisionRemainderNonzero
// if some term is free of v.
template <class Coeff>
Polynomial<Coeff> exact_divide(const Polynomial<Coeff>& p, std::size_t var);

template <class Coeff>
Polynomial<Coeff> homogeneous_part(const Polynomial<Coeff>& p, int k);

template <class Coeff>
Polynomial<Coeff> power(const Polynomial<Coeff>& p, unsigned exponent);

// Ring map sending variable i of p's table to images[i]. All images must
// share one table; the result is truncated at `truncation`.
template <class Coeff>
Polynomial<Coeff> substitute(const Polynomial<Coeff>& p,
                             std::span<const Polynomial<Coeff>> images,
                             int truncation);

// Re-expresses p over a larger table whose variables include p's by name.
template <class Coeff>
Polynomial<Coeff> embed(const Polynomial<Coeff>& p, const TablePtr& target,
                        int truncation);

QPoly to_rational(const ZPoly& p);
// Throws NonIntegralCoefficient.
ZPoly to_integral(const QPoly& p);
bool is_integral(const QPoly& p);

std::string coefficient_string(const mpz_class& c);
std::string coefficient_string(const mpq_class& c);

// Dense coefficient store over every monomial of weighted degree <= D, used
// for long products of (1 + linear form)^{+-1} factors where a sparse map
// would dominate the running time.
class MonomialIndex {
 public:
  MonomialIndex(TablePtr table, int truncation);

  const TablePtr& table() const { return table_; }
  int truncation() const { return truncation_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& at(std::size_t i) const { return monomials_[i]; }
  // Index of at(i) * var, or -1 when that exceeds the truncation.
  std::int32_t raise(std::size_t i, std::size_t var) const {
    return raise_[i * table_->size() + var];
  }

 private:
  TablePtr table_;
  int truncation_;
  std::vector<Monomial> monomials_;
  std::vector<std::int32_t> raise_;
};

// Sparse linear form: (variable index, integer coefficient) pairs.
using LinearTerms = std::vector<std::pair<std::size_t, long>>;

template <class Coeff>
class DenseSeries {
 public:
  explicit DenseSeries(std::shared_ptr<const MonomialIndex> index);

  // Multiplies in place by 1 + form. Variables of the form must have weight 1.
  void multiply_one_plus(const LinearTerms& form);
  // Divides in place by 1 + form.
  void divide_one_plus(const LinearTerms& form);

  Polynomial<Coeff> to_polynomial() const;

 private:
  std::shared_ptr<const MonomialIndex> index_;
  std::vector<Coeff> coeffs_;
};

}  // namespace jouanolou
