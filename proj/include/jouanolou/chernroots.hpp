#pragma once

// Splitting-principle calculus on virtual bundles given by signed Chern roots.

#include <functional>
#include <vector>

#include "jouanolou/exactpoly.hpp"

namespace jouanolou {

// Integer linear form over the weight-1 variables of a table.
struct LinearForm {
  std::vector<long> coeffs;

  LinearForm() = default;
  explicit LinearForm(std::vector<long> c) : coeffs(std::move(c)) {}
  static LinearForm zero(std::size_t n) { return LinearForm(std::vector<long>(n, 0)); }
  static LinearForm unit(std::size_t n, std::size_t var, long a = 1);

  bool is_zero() const;
  LinearTerms sparse() const;
  LinearForm operator-() const;
  friend LinearForm operator+(const LinearForm& a, const LinearForm& b);
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  friend auto operator<=>(const LinearForm&, const LinearForm&) = default;

  template <class Coeff>
  Polynomial<Coeff> to_polynomial(const TablePtr& table, int truncation) const;
};

struct SignedRoot {
  LinearForm form;
  int sign = 1;  // +1 or -1

  friend bool operator==(const SignedRoot&, const SignedRoot&) = default;
  friend auto operator<=>(const SignedRoot&, const SignedRoot&) = default;
};

class VirtualBundle {
 public:
  explicit VirtualBundle(TablePtr table) : table_(std::move(table)) {}
  VirtualBundle(TablePtr table, std::vector<SignedRoot> roots);

  // Honest bundle with the given roots, all signs +.
  static VirtualBundle honest(TablePtr table, std::vector<LinearForm> roots);

  const TablePtr& table() const { return table_; }
  const std::vector<SignedRoot>& roots() const { return roots_; }
  long rank() const;
  bool is_honest() const;

  void add_root(LinearForm form, int sign);

  // Root multisets agree up to order.
  bool same_multiset(const VirtualBundle& other) const;

 private:
  TablePtr table_;
  std::vector<SignedRoot> roots_;
};

VirtualBundle direct_sum(const VirtualBundle& a, const VirtualBundle& b);
VirtualBundle tensor(const VirtualBundle& a, const VirtualBundle& b);
VirtualBundle dual(const VirtualBundle& v);

inline constexpr int kLambdaRankGuard = 12;

// Koszul class sum_S (-1)^{|S|} [tensor_{j in S} L_j^dual] of an honest
// bundle. Throws NegativeSignInput and RankGuardExceeded.
VirtualBundle lambda_minus1_dual(const VirtualBundle& v);

// Components c_0..c_D, component k homogeneous of weighted degree k.
template <class Coeff>
struct TotalClass {
  std::vector<Polynomial<Coeff>> components;

  const Polynomial<Coeff>& operator[](std::size_t k) const {
    return components.at(k);
  }
  std::size_t size() const { return components.size(); }
  Polynomial<Coeff> total() const;
  friend bool operator==(const TotalClass&, const TotalClass&) = default;
};

// Splits p into homogeneous components 0..D.
template <class Coeff>
TotalClass<Coeff> split_by_degree(const Polynomial<Coeff>& p, int D);

// Applied after every ring product when computing inside a quotient ring.
template <class Coeff>
using Reducer = std::function<Polynomial<Coeff>(const Polynomial<Coeff>&)>;

// prod_{(r,+)} (1+r) * prod_{(r,-)} (1+r)^{-1}, truncated at D.
TotalClass<mpz_class> total_chern(const VirtualBundle& v, int D);
// Same product as a single polynomial.
ZPoly total_chern_polynomial(const VirtualBundle& v, int D);

// sum_{(r,s)} s * exp(r), truncated at D.
TotalClass<mpq_class> chern_character(const VirtualBundle& v, int D);

// prod_roots (1 - e^{-r}) / r for an honest bundle. Throws NegativeSignInput.
TotalClass<mpq_class> todd_inverse(const VirtualBundle& v, int D);

// Newton identities: the total Chern class whose character is ch. Throws
// NonIntegralResult if a (reduced) component has a non-integer coefficient.
TotalClass<mpz_class> chern_from_character(
    const TotalClass<mpq_class>& ch, long rank, int D,
    const Reducer<mpq_class>& reduce = nullptr);

}  // namespace jouanolou
