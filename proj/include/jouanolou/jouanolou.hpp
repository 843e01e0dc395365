#pragma once

// Generation of the universal Riemann-Roch-without-denominators polynomials
// P_q^d(xi, c_1..c_{q-d}; c'_1..c'_{q-d}).
//
// For a sample rank e the class b = x_1 + ... + x_e (Chern roots) is
// tensored with the Koszul class of Q = y_1 + ... + y_d. The degree-q Chern
// class of that product is divisible by y_1...y_d; the quotient is symmetric
// in the x's and in the y's and is rewritten through c_i = e_i(x) and
// c'_j = e_j(y). The rank dependence of each coefficient is a numerical
// polynomial in xi, recovered by finite differences over consecutive ranks
// and stored in the binomial basis binom(xi - base_rank, k).

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "jouanolou/chernroots.hpp"
#include "jouanolou/exactpoly.hpp"

namespace jouanolou {

class PolynomialCache;

struct UniversalRing {
  int e = 0;  // sample rank of b
  int d = 0;  // codimension, rank of Q
  TablePtr table;  // x1..xe, y1..yd, all weight 1

  static UniversalRing make(int e, int d);
  std::vector<std::size_t> x_vars() const;
  std::vector<std::size_t> y_vars() const;
};

// Degree-q component of the total Chern class of b (x) lambda_{-1}(Q^dual)
// in the universal ring. q = 0 gives 1. Throws TruncationExceeded if q is
// above the truncation bound.
ZPoly universal_cq(int e, int d, int q, int truncation = kDefaultTruncation);

// A block of variables permuted by the symmetry, and the name prefix and
// highest index of the elementary symmetric functions replacing them.
struct SymmetricBlock {
  std::vector<std::size_t> vars;
  std::string prefix;
  int max_index = 0;
};

// Table prefix1..prefixN per block with weight k * (block variable weight).
TablePtr elementary_table(const VariableTable& source,
                          std::span<const SymmetricBlock> blocks);

// Rewrites p, symmetric within each block, as a polynomial in the elementary
// symmetric functions of the blocks. Throws NonSymmetricInput.
ZPoly express_in_elementary(const ZPoly& p,
                            std::span<const SymmetricBlock> blocks);
ZPoly express_in_elementary(const ZPoly& p,
                            std::span<const SymmetricBlock> blocks,
                            const TablePtr& target);

struct JouanolouTerm {
  std::vector<int> c_exps;
  std::vector<int> cp_exps;
  // Coefficient of binom(xi - base_rank, k) at index k; trailing zeros trimmed.
  std::vector<mpz_class> xi_binomial;

  friend bool operator==(const JouanolouTerm&, const JouanolouTerm&) = default;
};

struct JouanolouPolynomial {
  int d = 0;
  int q = 0;
  int base_rank = 1;
  // Canonical order of the (c, c') monomials in coefficient_table().
  std::vector<JouanolouTerm> terms;

  int arity() const { return q > d ? q - d : 0; }
  bool is_zero() const { return terms.empty(); }
  // c1..cm (weight i), cp1..cpm (weight j), m = arity().
  TablePtr coefficient_table() const;
  friend bool operator==(const JouanolouPolynomial&,
                         const JouanolouPolynomial&) = default;
};

// Generalized binomial coefficient binom(n, k) for any integer n.
mpz_class binomial(const mpz_class& n, unsigned long k);

// Value of a term's xi-coefficient at the integer xi.
mpz_class xi_value(const JouanolouTerm& term, int base_rank, const mpz_class& xi);

// The same coefficient in the monomial basis: entry k multiplies xi^k.
std::vector<mpq_class> xi_monomial_coefficients(const JouanolouTerm& term,
                                                int base_rank);

struct RankSample {
  int rank = 0;
  ZPoly value;  // over the coefficient table of (d, q)
};

// Fits the finite-difference polynomial through consecutive rank samples.
// Needs at least max_xi_degree + 2 samples (RankSamplesInsufficient) and a
// vanishing (max_xi_degree + 1)-st difference (StabilizationFailure).
JouanolouPolynomial interpolate_rank(std::span<const RankSample> samples, int d,
                                     int q, int max_xi_degree);

// First sample rank: max(1, q - d).
int base_rank_for(int d, int q);

// The quotient C_q / (y_1...y_d) at rank e written in c, c'.
ZPoly universal_quotient(int e, int d, int q, const TablePtr& coefficient_table);

struct GenerateOptions {
  PolynomialCache* cache = nullptr;
  int extra_samples = 0;     // beyond the q + 2 needed for interpolation
  int validation_ranks = 2;  // checked after interpolation
};

// Throws DivisionRemainderNonzero when C_q is not divisible by y_1...y_d.
JouanolouPolynomial generate(int d, int q, const GenerateOptions& options = {});

// Substitutes into a target ring: c[i] for c_{i+1}, cp[j] for c'_{j+1}
// (missing entries are 0). `reduce` is applied after each product.
ZPoly evaluate(const JouanolouPolynomial& P, const mpz_class& rank,
               std::span<const ZPoly> c, std::span<const ZPoly> cp,
               const TablePtr& target, int truncation,
               const Reducer<mpz_class>& reduce = nullptr);

// P at a fixed integer xi as a polynomial over coefficient_table().
ZPoly evaluate_at_rank(const JouanolouPolynomial& P, const mpz_class& xi);

// Same value computed from the monomial-basis form with rational arithmetic.
// Throws NonIntegralEvaluation if some coefficient is not an integer.
ZPoly evaluate_at_rank_monomial_basis(const JouanolouPolynomial& P,
                                      const mpz_class& xi);

// "P_2^1 = -c1 + (1/2*xi^2+1/2*xi)*cp1"
std::string to_text(const JouanolouPolynomial& P);
// Binomial basis printed verbatim.
std::string to_latex(const JouanolouPolynomial& P);

// Thread-safe memo of generated polynomials, optionally backed by a cache.
class PolynomialStore {
 public:
  explicit PolynomialStore(PolynomialCache* cache = nullptr) : cache_(cache) {}
  const JouanolouPolynomial& get(int d, int q);
  // Replaces the memoized entry for (P.d, P.q).
  void put(JouanolouPolynomial P);

 private:
  PolynomialCache* cache_;
  std::mutex mutex_;
  std::map<std::pair<int, int>, std::shared_ptr<const JouanolouPolynomial>> memo_;
};

}  // namespace jouanolou
