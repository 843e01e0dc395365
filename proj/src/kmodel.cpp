#include "jouanolou/kmodel.hpp"

#include <algorithm>

namespace jouanolou {

namespace {

Twist add_twists(const Twist& a, const Twist& b) {
  Twist out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return canonical_twist(std::move(out));
}

std::string bracket(const Twist& t) { return "[" + twist_string(t) + "]"; }

}  // namespace

KClass KClass::line(const Twist& t, const mpz_class& multiplicity) {
  KClass k;
  k.add(t, multiplicity);
  return k;
}

mpz_class KClass::rank() const {
  mpz_class r = 0;
  for (const auto& [t, m] : terms_) r += m;
  return r;
}

std::size_t KClass::level() const {
  std::size_t level = 0;
  for (const auto& [t, m] : terms_)
    for (std::size_t i = 1; i < t.size(); ++i)
      if (t[i] != 0) level = std::max(level, i);
  return level;
}

void KClass::add(const Twist& t, const mpz_class& multiplicity) {
  if (sgn(multiplicity) == 0) return;
  auto [it, inserted] = terms_.try_emplace(canonical_twist(t), multiplicity);
  if (!inserted) {
    it->second += multiplicity;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

KClass& KClass::operator+=(const KClass& o) {
  for (const auto& [t, m] : o.terms_) add(t, m);
  return *this;
}

KClass& KClass::operator-=(const KClass& o) {
  for (const auto& [t, m] : o.terms_) add(t, -m);
  return *this;
}

KClass& KClass::operator*=(const mpz_class& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, m] : terms_) m *= s;
  return *this;
}

KClass KClass::operator-() const {
  KClass k = *this;
  return k *= -1;
}

KClass operator*(const KClass& a, const KClass& b) {
  KClass out;
  for (const auto& [ta, ma] : a.terms_)
    for (const auto& [tb, mb] : b.terms_) out.add(add_twists(ta, tb), ma * mb);
  return out;
}

KClass KClass::dual() const {
  KClass out;
  for (const auto& [t, m] : terms_) {
    Twist neg = t;
    for (auto& v : neg) v = -v;
    out.add(neg, m);
  }
  return out;
}

std::string KClass::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [t, m] : terms_) {
    if (sgn(m) < 0)
      s += "-";
    else if (!s.empty())
      s += "+";
    const mpz_class a = abs(m);
    if (a != 1) s += a.get_str();
    s += bracket(t);
  }
  return s;
}

VirtualBundle to_virtual_bundle(const KClass& k, const SpaceModel& model) {
  VirtualBundle v(model.table());
  for (const auto& [t, m] : k.terms()) {
    if (!m.fits_slong_p() || abs(m) > 1000000)
      throw ModelError("multiplicity " + m.get_str() + " is too large to split into roots");
    const LinearForm r = model.twist_root(t);
    const long copies = std::abs(m.get_si());
    for (long i = 0; i < copies; ++i) v.add_root(r, sgn(m));
  }
  return v;
}

KClass bundle_class(const SpaceModel& model, std::size_t layer) {
  KClass k;
  for (const auto& t : model.layer(layer).twists) k.add(t, 1);
  return k;
}

std::vector<KClass> lambda_powers(const KClass& honest, int max_i) {
  std::vector<KClass> lam(static_cast<std::size_t>(std::max(max_i, 0)) + 1);
  lam[0] = KClass::trivial();
  for (const auto& [t, m] : honest.terms()) {
    if (sgn(m) < 0) throw NegativeSignInput("lambda powers need an honest class");
    const KClass L = KClass::line(t);
    for (mpz_class c = 0; c < m; ++c)
      for (std::size_t i = lam.size() - 1; i >= 1; --i) lam[i] += lam[i - 1] * L;
  }
  return lam;
}

KClass koszul_pushforward(const KClass& b, const SpaceModel& model, std::size_t layer) {
  const Layer& lay = model.layer(layer);
  const int d = lay.rank();
  if (d > kKoszulRankGuard)
    throw RankGuardExceeded("koszul_pushforward: rank " + std::to_string(d) + " exceeds " +
                            std::to_string(kKoszulRankGuard));
  if (b.level() >= lay.generator)
    throw ModelError("koszul_pushforward: class " + b.to_string() +
                     " does not live on the layer's base");
  const KClass A = bundle_class(model, layer).dual() + KClass::trivial();
  Twist o1(lay.generator + 1, 0);
  o1[lay.generator] = 1;
  const KClass L = KClass::line(o1);

  const auto lamA = lambda_powers(A, d);
  std::vector<KClass> Lpow{KClass::trivial()};
  for (int j = 1; j <= d; ++j) Lpow.push_back(Lpow.back() * L);

  KClass koszul;
  for (int i = 0; i <= d; ++i) {
    // lambda^i([A] - [L]) = sum_j (-1)^j lambda^{i-j}(A) L^j
    KClass lam_i;
    for (int j = 0; j <= i; ++j) {
      KClass term = lamA[static_cast<std::size_t>(i - j)] * Lpow[static_cast<std::size_t>(j)];
      if (j % 2) term = -term;
      lam_i += term;
    }
    if (i % 2) lam_i = -lam_i;
    koszul += lam_i;
  }
  return b * koszul;
}

ZPoly total_chern_of_kclass(const KClass& k, const SpaceModel& model) {
  return model.normal_form(total_chern_polynomial(to_virtual_bundle(k, model), model.truncation()));
}

ZPoly chern_of_kclass(const KClass& k, int q, const SpaceModel& model) {
  if (q < 0 || q > model.truncation()) return model.zero();
  return homogeneous_part(total_chern_of_kclass(k, model), q);
}

std::vector<ZPoly> chern_classes(const KClass& k, int count, const SpaceModel& model) {
  std::vector<ZPoly> out;
  if (count <= 0) return out;
  const ZPoly total = total_chern_of_kclass(k, model);
  for (int i = 1; i <= count; ++i) out.push_back(homogeneous_part(total, i));
  return out;
}

QPoly chern_character_of_kclass(const KClass& k, const SpaceModel& model) {
  return model.normal_form(chern_character(to_virtual_bundle(k, model), model.truncation()).total());
}

ZPoly evaluate_on_model(const JouanolouPolynomial& P, const KClass& a,
                        const KClass& normal, const SpaceModel& model) {
  const int m = P.arity();
  const auto c = chern_classes(a, m, model);
  const auto cp = chern_classes(normal, m, model);
  return model.normal_form(
      evaluate(P, a.rank(), c, cp, model.table(), model.truncation(), model.reducer()));
}

SupportedClass refined_chern(const KClass& b, int q, const SpaceModel& model,
                             std::size_t layer, const JouanolouPolynomial& P) {
  const int d = model.layer(layer).rank();
  if (q < 1) throw ModelError("refined_chern needs q >= 1");
  if (P.d != d || P.q != q)
    throw ModelError("refined_chern: polynomial P_" + std::to_string(P.q) + "^" +
                     std::to_string(P.d) + " does not match q = " + std::to_string(q) +
                     ", d = " + std::to_string(d));
  if (b.level() >= model.layer(layer).generator)
    throw ModelError("refined_chern: class " + b.to_string() + " does not live on the layer's base");

  SupportedClass s;
  s.layer = layer;
  s.thom_coordinate = evaluate_on_model(P, b, bundle_class(model, layer), model);
  s.ambient = chern_of_kclass(koszul_pushforward(b, model, layer), q, model);
  const ZPoly expected = model.normal_form(s.thom_coordinate * model.thom_class(layer));
  if (s.ambient != expected)
    throw IdentityViolation("refined c_" + std::to_string(q) + " of " + b.to_string() + " on " +
                            model.spec().to_string() + ": ambient " + s.ambient.to_string() +
                            " but p^*(coordinate)*t(V) = " + expected.to_string());
  return s;
}

KClass divisor_pushforward_k(const KClass& a, const DivisorModel&) {
  KClass out;
  for (const auto& [t, m] : a.terms()) {
    if (t.size() > 1) throw ModelError("divisor pushforward: class must be on P^{n-1}");
    out.add(Twist{t[0]}, m);
    out.add(Twist{t[0] - 1}, -m);
  }
  return out;
}

}  // namespace jouanolou
