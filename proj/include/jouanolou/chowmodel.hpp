#pragma once

// Chow-style rings of P^n and of towers of projective completions
// P(V + 1) of split bundles V = O(t_1) + ... + O(t_d).
//
// Generators: h (hyperplane class of the base P^n) and one x_l = c_1(O(-1))
// per layer, all of weight 1. Relations: h^{n+1} = 0 and, for layer l with
// roots r_1..r_d (linear forms in lower generators),
//     (r_1 - x_l) ... (r_d - x_l) (-x_l) = 0.
// Classes of every level of a tower share the tower's variable table; a
// class lives at level l when it only involves h, x_1..x_l.

#include <string>
#include <vector>

#include "jouanolou/chernroots.hpp"
#include "jouanolou/exactpoly.hpp"

namespace jouanolou {

inline constexpr int kMaxGenerators = 6;

// A line bundle O(a, m_1, ..., m_k) = O_{P^n}(a) (x) O_1(m_1) (x) ... where
// O_l(1) is the tautological quotient line of layer l, with first Chern
// class a*h - m_1*x_1 - ... - m_k*x_k. Trailing zeros are insignificant.
using Twist = std::vector<long>;

struct TowerSpec {
  int base_dim = 0;
  // layers[l] lists the summands of V_l; each twist has at most l + 1
  // entries (a, m_1, ..., m_l).
  std::vector<std::vector<Twist>> layers;

  // "P2", "proj(P2; O(1)+O(2))", "proj(proj(P1; O(1)); O(0)+O(1,1))".
  std::string to_string() const;
  std::size_t generator_count() const { return 1 + layers.size(); }
  friend bool operator==(const TowerSpec&, const TowerSpec&) = default;
};

Twist canonical_twist(Twist t);
std::string twist_string(const Twist& t);  // "O", "O(1)", "O(0,1)"

struct Layer {
  std::vector<Twist> twists;
  std::vector<LinearForm> roots;
  std::size_t generator = 0;  // table index of x_l
  int rank() const { return static_cast<int>(roots.size()); }
};

// A class with support on the zero section of a layer, kept in Thom
// coordinates together with its image in the ambient ring.
struct SupportedClass {
  std::size_t layer = 0;
  ZPoly thom_coordinate;  // class on the layer's base
  ZPoly ambient;          // p^*(thom_coordinate) * t(V), normal form
};

class SpaceModel {
 public:
  // Throws TowerTooLarge above kMaxGenerators generators and ModelError on
  // malformed layers.
  static SpaceModel build(const TowerSpec& spec);

  const TowerSpec& spec() const { return spec_; }
  const TablePtr& table() const { return table_; }
  int base_dim() const { return spec_.base_dim; }
  std::size_t layer_count() const { return layers_.size(); }
  const Layer& layer(std::size_t l) const { return layers_.at(l); }
  std::size_t top_layer() const;
  // Dimension of level l (0 = base, layer_count() = whole tower).
  int dimension(std::size_t level) const;
  int dimension() const { return dimension(layers_.size()); }
  int truncation() const { return dimension(); }

  ZPoly zero() const { return ZPoly(table_, truncation()); }
  ZPoly one() const { return constant(1); }
  ZPoly constant(const mpz_class& c) const;
  ZPoly generator(std::string_view name) const;
  ZPoly h() const { return generator("h"); }
  ZPoly x(std::size_t l) const;  // x_{l+1}, generator of layer l
  ZPoly root(const LinearForm& form) const;
  LinearForm twist_root(const Twist& t) const;

  // Highest level whose generators p uses (0 if only h).
  std::size_t level_of(const ZPoly& p) const;

  ZPoly normal_form(const ZPoly& p) const;
  QPoly normal_form(const QPoly& p) const;
  Reducer<mpz_class> reducer() const;
  Reducer<mpq_class> rational_reducer() const;

  // Monomial basis of level l: h^i x_1^k_1 ... x_l^k_l, i <= n, k_j <= d_j.
  std::vector<std::vector<int>> basis(std::size_t level) const;
  std::vector<std::vector<int>> basis() const { return basis(layers_.size()); }

  // (r_1 - x) ... (r_d - x) (-x) for layer l.
  ZPoly relation(std::size_t l) const;

  ZPoly bundle_chern(std::size_t l, int k) const;  // c_k(V_l)
  TotalClass<mpz_class> bundle_total_chern(std::size_t l) const;
  // t(V) = c_d(Q) = sum_i c_i(V) (-x)^{d-i} = prod_j (r_j - x).
  ZPoly thom_class(std::size_t l) const;

  // Linear map with p_*(x^d beta) = (-1)^d beta and p_* = 0 on lower powers
  // of x, for normal forms beta free of x.
  ZPoly proj_pushforward(const ZPoly& c, std::size_t l) const;
  SupportedClass zero_section_pushforward(const ZPoly& a, std::size_t l) const;
  // Image after forgetting support.
  ZPoly zero_section_pushforward_ambient(const ZPoly& a, std::size_t l) const;
  // Sets x_l = 0 and reduces.
  ZPoly zero_section_pullback(const ZPoly& c, std::size_t l) const;
  // Recovers the Thom coordinate of a supported ambient class as p_*(ambient).
  ZPoly recover_thom_coordinate(const ZPoly& ambient, std::size_t l) const;

 private:
  template <class Coeff>
  Polynomial<Coeff> reduce(const Polynomial<Coeff>& p) const;
  void require_level(const ZPoly& p, std::size_t max_level, const char* what) const;

  TowerSpec spec_;
  TablePtr table_;
  std::vector<Layer> layers_;
  // x_l^{d+1} = rewrite_[l] for layer l.
  std::vector<ZPoly> rewrite_;
  std::vector<QPoly> rational_rewrite_;
};

// A hyperplane Z = P^{n-1} in P^n. The ring of Z is modeled as P^{n-1} with
// its own hyperplane class, identified with h restricted to Z.
class DivisorModel {
 public:
  explicit DivisorModel(int n);

  int n() const { return n_; }
  const SpaceModel& ambient() const { return ambient_; }
  const SpaceModel& hyperplane() const { return hyperplane_; }

  // i_*(h_Z^k) = h^{k+1}.
  ZPoly pushforward(const ZPoly& a) const;
  QPoly pushforward(const QPoly& a) const;
  // h_Z = i^* h.
  ZPoly restrict(const ZPoly& c) const;
  // c_1 of the normal bundle O(1)|_Z.
  ZPoly normal_bundle_c1() const;

 private:
  template <class Coeff>
  Polynomial<Coeff> push(const Polynomial<Coeff>& a) const;

  int n_;
  SpaceModel ambient_;
  SpaceModel hyperplane_;
};

}  // namespace jouanolou
