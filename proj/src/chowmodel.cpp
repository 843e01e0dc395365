#include "jouanolou/chowmodel.hpp"

#include <algorithm>
#include <type_traits>

namespace jouanolou {

Twist canonical_twist(Twist t) {
  while (t.size() > 1 && t.back() == 0) t.pop_back();
  if (t.empty()) t.push_back(0);
  return t;
}

std::string twist_string(const Twist& t) {
  const Twist c = canonical_twist(t);
  if (c.size() == 1 && c[0] == 0) return "O";
  std::string s = "O(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

std::string TowerSpec::to_string() const {
  std::string s = "P" + std::to_string(base_dim);
  for (const auto& layer : layers) {
    std::string summands;
    for (std::size_t j = 0; j < layer.size(); ++j) {
      if (j) summands += "+";
      summands += twist_string(layer[j]);
    }
    s = "proj(" + s + "; " + summands + ")";
  }
  return s;
}

SpaceModel SpaceModel::build(const TowerSpec& spec) {
  if (spec.base_dim < 0) throw ModelError("base dimension must be >= 0");
  if (spec.generator_count() > static_cast<std::size_t>(kMaxGenerators))
    throw TowerTooLarge("tower " + spec.to_string() + " needs " +
                        std::to_string(spec.generator_count()) +
                        " generators (at most " + std::to_string(kMaxGenerators) +
                        ")");
  SpaceModel m;
  m.spec_ = spec;
  std::vector<std::string> names{"h"};
  for (std::size_t l = 0; l < spec.layers.size(); ++l)
    names.push_back("x" + std::to_string(l + 1));
  m.table_ = make_table(std::move(names));

  for (std::size_t l = 0; l < spec.layers.size(); ++l) {
    auto& twists = m.spec_.layers[l];
    if (twists.empty())
      throw ModelError("layer " + std::to_string(l + 1) + " has rank 0");
    Layer layer;
    layer.generator = l + 1;
    for (auto& t : twists) {
      t = canonical_twist(t);
      if (t.size() > l + 1)
        throw ModelError("twist " + twist_string(t) + " refers to a generator above layer " +
                         std::to_string(l + 1));
      layer.twists.push_back(t);
      layer.roots.push_back(m.twist_root(t));
    }
    m.layers_.push_back(std::move(layer));
  }

  for (std::size_t l = 0; l < m.layers_.size(); ++l) {
    const int d = m.layers_[l].rank();
    const int D = std::max(m.truncation(), d + 1);
    // Relation lead*x^{d+1} + rest = 0 with lead = (-1)^{d+1}.
    ZPoly rel = ZPoly::constant(m.table_, 1, D);
    const ZPoly x = ZPoly::variable(m.table_, m.layers_[l].generator, D);
    for (const auto& r : m.layers_[l].roots)
      rel = rel * (r.to_polynomial<mpz_class>(m.table_, D) - x);
    rel = rel * (-x);
    std::vector<int> top(m.table_->size(), 0);
    top[m.layers_[l].generator] = d + 1;
    const mpz_class lead = rel.coefficient(top);
    ZPoly rest = rel;
    rest.add_term(top, -lead);
    rest *= mpz_class(-lead);
    m.rewrite_.push_back(rest);
    m.rational_rewrite_.push_back(to_rational(rest));
  }
  return m;
}

std::size_t SpaceModel::top_layer() const {
  if (layers_.empty()) throw ModelError("model " + spec_.to_string() + " has no layer");
  return layers_.size() - 1;
}

int SpaceModel::dimension(std::size_t level) const {
  int dim = spec_.base_dim;
  for (std::size_t l = 0; l < level && l < layers_.size(); ++l) dim += layers_[l].rank();
  return dim;
}

ZPoly SpaceModel::constant(const mpz_class& c) const {
  return ZPoly::constant(table_, c, truncation());
}

ZPoly SpaceModel::generator(std::string_view name) const {
  return ZPoly::variable(table_, name, truncation());
}

ZPoly SpaceModel::x(std::size_t l) const {
  return ZPoly::variable(table_, layers_.at(l).generator, truncation());
}

ZPoly SpaceModel::root(const LinearForm& form) const {
  return form.to_polynomial<mpz_class>(table_, truncation());
}

LinearForm SpaceModel::twist_root(const Twist& t) const {
  if (t.size() > table_->size())
    throw ModelError("twist " + twist_string(t) + " has more entries than the model has generators");
  LinearForm f = LinearForm::zero(table_->size());
  for (std::size_t i = 0; i < t.size(); ++i) f.coeffs[i] = i == 0 ? t[0] : -t[i];
  return f;
}

std::size_t SpaceModel::level_of(const ZPoly& p) const {
  std::size_t level = 0;
  for (const auto& [m, c] : p.terms())
    for (std::size_t i = 1; i < m.exponents.size(); ++i)
      if (m.exponents[i] > 0) level = std::max(level, i);
  return level;
}

void SpaceModel::require_level(const ZPoly& p, std::size_t max_level,
                               const char* what) const {
  if (!same_table(p.table(), table_))
    throw MixedVariableTables(std::string(what) + ": class is not over the model's generators");
  if (level_of(p) > max_level)
    throw ModelError(std::string(what) + ": class involves generators above level " +
                     std::to_string(max_level));
}

template <class Coeff>
Polynomial<Coeff> SpaceModel::reduce(const Polynomial<Coeff>& p) const {
  if (!same_table(p.table(), table_))
    throw MixedVariableTables("normal_form: class is not over the model's generators");
  const int T = truncation();
  const int n = spec_.base_dim;
  auto drop_h = [&](const Polynomial<Coeff>& in) {
    Polynomial<Coeff> out(table_, T);
    for (const auto& [m, c] : in.terms())
      if (m.exponents[0] <= n) out.add_term(m, c);
    return out;
  };
  Polynomial<Coeff> cur = drop_h(p.with_truncation(T));
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const std::size_t g = layers_[l].generator;
    const int d = layers_[l].rank();
    Polynomial<Coeff> rewrite;
    if constexpr (std::is_same_v<Coeff, mpz_class>)
      rewrite = rewrite_[l];
    else
      rewrite = rational_rewrite_[l];
    for (;;) {
      Polynomial<Coeff> keep(table_, T);
      std::vector<std::pair<std::vector<int>, Coeff>> high;
      for (const auto& [m, c] : cur.terms()) {
        if (m.exponents[g] > d) {
          auto e = m.exponents;
          e[g] -= d + 1;
          high.emplace_back(std::move(e), c);
        } else {
          keep.add_term(m, c);
        }
      }
      if (high.empty()) break;
      for (auto& [e, c] : high)
        keep += Polynomial<Coeff>::monomial(table_, std::move(e), c, T) * rewrite;
      cur = std::move(keep);
    }
  }
  return drop_h(cur);
}

ZPoly SpaceModel::normal_form(const ZPoly& p) const { return reduce(p); }
QPoly SpaceModel::normal_form(const QPoly& p) const { return reduce(p); }

Reducer<mpz_class> SpaceModel::reducer() const {
  return [this](const ZPoly& p) { return reduce(p); };
}

Reducer<mpq_class> SpaceModel::rational_reducer() const {
  return [this](const QPoly& p) { return reduce(p); };
}

std::vector<std::vector<int>> SpaceModel::basis(std::size_t level) const {
  std::vector<std::vector<int>> out;
  std::vector<int> e(table_->size(), 0);
  const std::size_t top = std::min(level, layers_.size());
  // Odometer over h^i x_1^k_1 ... x_top^k_top.
  for (;;) {
    out.push_back(e);
    std::size_t i = 0;
    for (; i <= top; ++i) {
      const int bound = i == 0 ? spec_.base_dim : layers_[i - 1].rank();
      if (e[i] < bound) {
        ++e[i];
        break;
      }
      e[i] = 0;
    }
    if (i > top) break;
  }
  std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
    return Monomial(*table_, a) < Monomial(*table_, b);
  });
  return out;
}

ZPoly SpaceModel::relation(std::size_t l) const {
  const int D = std::max(truncation(), layers_.at(l).rank() + 1);
  ZPoly rel = ZPoly::constant(table_, 1, D);
  const ZPoly x = ZPoly::variable(table_, layers_[l].generator, D);
  for (const auto& r : layers_[l].roots) rel = rel * (r.to_polynomial<mpz_class>(table_, D) - x);
  return rel * (-x);
}

TotalClass<mpz_class> SpaceModel::bundle_total_chern(std::size_t l) const {
  const auto& layer = layers_.at(l);
  return total_chern(VirtualBundle::honest(table_, layer.roots), truncation());
}

ZPoly SpaceModel::bundle_chern(std::size_t l, int k) const {
  if (k < 0 || k > truncation()) return zero();
  return normal_form(bundle_total_chern(l)[static_cast<std::size_t>(k)]);
}

ZPoly SpaceModel::thom_class(std::size_t l) const {
  const auto& layer = layers_.at(l);
  ZPoly t = one();
  const ZPoly xl = x(l);
  for (const auto& r : layer.roots) t = t * (root(r) - xl);
  return normal_form(t);
}

ZPoly SpaceModel::proj_pushforward(const ZPoly& c, std::size_t l) const {
  const auto& layer = layers_.at(l);
  require_level(c, layer.generator, "proj_pushforward");
  const ZPoly nf = normal_form(c);
  const std::size_t g = layer.generator;
  const int d = layer.rank();
  ZPoly out = zero();
  for (const auto& [m, coeff] : nf.terms()) {
    if (m.exponents[g] != d) continue;
    auto e = m.exponents;
    e[g] = 0;
    out.add_term(std::move(e), d % 2 ? mpz_class(-coeff) : coeff);
  }
  return out;
}

SupportedClass SpaceModel::zero_section_pushforward(const ZPoly& a, std::size_t l) const {
  require_level(a, layers_.at(l).generator - 1, "zero_section_pushforward");
  SupportedClass s;
  s.layer = l;
  s.thom_coordinate = normal_form(a);
  s.ambient = normal_form(s.thom_coordinate * thom_class(l));
  return s;
}

ZPoly SpaceModel::zero_section_pushforward_ambient(const ZPoly& a, std::size_t l) const {
  return zero_section_pushforward(a, l).ambient;
}

ZPoly SpaceModel::zero_section_pullback(const ZPoly& c, std::size_t l) const {
  const std::size_t g = layers_.at(l).generator;
  require_level(c, g, "zero_section_pullback");
  ZPoly out = zero();
  for (const auto& [m, coeff] : c.terms())
    if (m.exponents[g] == 0) out.add_term(m, coeff);
  return normal_form(out);
}

ZPoly SpaceModel::recover_thom_coordinate(const ZPoly& ambient, std::size_t l) const {
  return proj_pushforward(ambient, l);
}

DivisorModel::DivisorModel(int n)
    : n_(n),
      ambient_(SpaceModel::build(TowerSpec{n, {}})),
      hyperplane_(SpaceModel::build(TowerSpec{n >= 1 ? n - 1 : 0, {}})) {
  if (n < 1) throw ModelError("a hyperplane needs n >= 1");
}

template <class Coeff>
Polynomial<Coeff> DivisorModel::push(const Polynomial<Coeff>& a) const {
  if (!same_table(a.table(), hyperplane_.table()))
    throw MixedVariableTables("divisor pushforward: class is not on the hyperplane");
  Polynomial<Coeff> out(ambient_.table(), ambient_.truncation());
  const Polynomial<Coeff> nf = hyperplane_.normal_form(a);
  for (const auto& [m, c] : nf.terms())
    out.add_term(std::vector<int>{m.exponents[0] + 1}, c);
  return ambient_.normal_form(out);
}

ZPoly DivisorModel::pushforward(const ZPoly& a) const { return push(a); }
QPoly DivisorModel::pushforward(const QPoly& a) const { return push(a); }

ZPoly DivisorModel::restrict(const ZPoly& c) const {
  if (!same_table(c.table(), ambient_.table()))
    throw MixedVariableTables("divisor restriction: class is not on P^n");
  ZPoly out = hyperplane_.zero();
  for (const auto& [m, coeff] : c.terms()) out.add_term(m.exponents, coeff);
  return hyperplane_.normal_form(out);
}

ZPoly DivisorModel::normal_bundle_c1() const { return hyperplane_.h(); }

}  // namespace jouanolou
