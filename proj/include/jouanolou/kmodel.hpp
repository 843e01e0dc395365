#pragma once

// K_0 classes on the spaces of chowmodel, stored as integer combinations of
// line-bundle monomials with no relations imposed. Chern classes are
// evaluated inside the Chow model, where the relations live.

#include <map>
#include <string>
#include <vector>

#include "jouanolou/chernroots.hpp"
#include "jouanolou/chowmodel.hpp"
#include "jouanolou/jouanolou.hpp"

namespace jouanolou {

inline constexpr int kKoszulRankGuard = 10;

class KClass {
 public:
  using Terms = std::map<Twist, mpz_class>;

  KClass() = default;
  static KClass line(const Twist& t, const mpz_class& multiplicity = 1);
  static KClass trivial(const mpz_class& rank = 1) { return line(Twist{0}, rank); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  mpz_class rank() const;
  // Highest generator index any twist touches (0 when only the base twist).
  std::size_t level() const;

  void add(const Twist& t, const mpz_class& multiplicity);
  KClass& operator+=(const KClass& o);
  KClass& operator-=(const KClass& o);
  KClass& operator*=(const mpz_class& s);
  KClass operator-() const;
  friend KClass operator+(KClass a, const KClass& b) { return a += b; }
  friend KClass operator-(KClass a, const KClass& b) { return a -= b; }
  friend KClass operator*(KClass a, const mpz_class& s) { return a *= s; }
  friend KClass operator*(const mpz_class& s, KClass a) { return a *= s; }
  // Tensor product: twists add.
  friend KClass operator*(const KClass& a, const KClass& b);
  friend bool operator==(const KClass&, const KClass&) = default;

  KClass dual() const;

  // "[O]-2[O(1)]+[O(2)]"; "0" for the zero class.
  std::string to_string() const;

 private:
  Terms terms_;  // canonical twists, nonzero multiplicities
};

// The class as signed roots in the model (|multiplicity| copies per monomial).
VirtualBundle to_virtual_bundle(const KClass& k, const SpaceModel& model);

// [V_l] as a sum of line monomials.
KClass bundle_class(const SpaceModel& model, std::size_t layer);

// lambda^i of an honest class (nonnegative multiplicities), i = 0..max_i.
std::vector<KClass> lambda_powers(const KClass& honest, int max_i);

// p^*b * sum_{i=0}^{d} (-1)^i [Lambda^i Q^dual] with [Q^dual] = [V^dual] + [O] - [O(1)]
// on layer l. Throws RankGuardExceeded above kKoszulRankGuard.
KClass koszul_pushforward(const KClass& b, const SpaceModel& model, std::size_t layer);

// Total Chern class in normal form, all degrees up to the model dimension.
ZPoly total_chern_of_kclass(const KClass& k, const SpaceModel& model);
ZPoly chern_of_kclass(const KClass& k, int q, const SpaceModel& model);
// c_1..c_count in normal form.
std::vector<ZPoly> chern_classes(const KClass& k, int count, const SpaceModel& model);
QPoly chern_character_of_kclass(const KClass& k, const SpaceModel& model);

// P at (rk a, c(a); c(normal)) in the model ring.
ZPoly evaluate_on_model(const JouanolouPolynomial& P, const KClass& a,
                        const KClass& normal, const SpaceModel& model);

// Refined q-th Chern class of koszul_pushforward(b): Thom coordinate from P,
// ambient from the K-side. Throws IdentityViolation when ambient differs from
// p^*(coordinate) t(V).
SupportedClass refined_chern(const KClass& b, int q, const SpaceModel& model,
                             std::size_t layer, const JouanolouPolynomial& P);

// i_!(O_Z(k)) = O(k) - O(k-1) for a hyperplane Z of P^n.
KClass divisor_pushforward_k(const KClass& a, const DivisorModel& divisor);

}  // namespace jouanolou
