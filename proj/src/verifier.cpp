#include "jouanolou/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <optional>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "jouanolou/chowmodel.hpp"
#include "jouanolou/expr.hpp"
#include "jouanolou/kmodel.hpp"

namespace jouanolou {

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::IntegralityGap:
      return "integrality-gap";
  }
  return "fail";
}

std::string CheckInstance::key() const {
  std::string k = check_id;
  if (!variant.empty()) k += "/" + variant;
  k += " model=" + model;
  if (!klass.empty()) k += " class=" + klass;
  if (q) k += " q=" + std::to_string(q);
  if (seed) k += " seed=" + std::to_string(seed);
  return k;
}

bool Report::passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.status == Status::Pass; });
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(
      results.begin(), results.end(), [s](const CheckResult& r) { return r.status == s; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "main",          "ky2",           "thom",      "grr", "excess", "projection",
      "functoriality", "normalization", "structure", "all"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

namespace {

// ---------------------------------------------------------------------------
// Grid

struct GridModel {
  int n;
  int d;  // rank of the top layer
  std::string spec;
};

const std::vector<GridModel>& single_layer_models() {
  static const std::vector<GridModel> models = [] {
    const std::vector<GridModel> raw = {
        {0, 1, "proj(P0; O)"},
        {0, 2, "proj(P0; O+O)"},
        {0, 3, "proj(P0; O+O+O)"},
        {1, 1, "proj(P1; O(1))"},
        {1, 1, "proj(P1; O(-2))"},
        {1, 2, "proj(P1; O(-1)+O(2))"},
        {1, 3, "proj(P1; O+O(1)+O(-2))"},
        {2, 1, "proj(P2; O(1))"},
        {2, 1, "proj(P2; O(-1))"},
        {2, 2, "proj(P2; O(1)+O(2))"},
        {2, 2, "proj(P2; O(-2)+O(1))"},
        {2, 3, "proj(P2; O(1)+O(-1)+O(2))"},
    };
    std::vector<GridModel> out;
    for (auto m : raw) {
      m.spec = parse_model_spec(m.spec).to_string();
      out.push_back(m);
    }
    return out;
  }();
  return models;
}

struct GridTower {
  int d1;
  int d2;
  std::string spec;
};

const std::vector<GridTower>& towers() {
  static const std::vector<GridTower> t = [] {
    std::vector<GridTower> out = {
        {1, 1, "proj(proj(P2; O(1)); O(1,1))"},
        {1, 2, "proj(proj(P2; O(1)); O(0,1)+O(-1))"},
    };
    for (auto& x : out) x.spec = parse_model_spec(x.spec).to_string();
    return out;
  }();
  return t;
}

std::string canonical_class(const std::string& s) { return parse_kclass(s).to_string(); }

std::vector<std::string> base_classes(int n) {
  std::vector<std::string> raw;
  if (n == 0)
    raw = {"[O]", "3[O]", "-2[O]"};
  else
    raw = {"[O]", "[O(1)]", "[O(-2)]", "[O(2)]-[O(-1)]", "[O(1)]+[O(-1)]", "[O]-2[O(1)]"};
  for (auto& s : raw) s = canonical_class(s);
  return raw;
}

std::vector<std::string> tower_classes() {
  std::vector<std::string> raw = {"[O]", "[O(0,1)]", "[O(1,-1)]-[O]", "[O(1)]+[O(0,1)]",
                                  "[O]-2[O(0,1)]"};
  for (auto& s : raw) s = canonical_class(s);
  return raw;
}

std::string hyperplane_spec(int n) { return "hyperplane(P" + std::to_string(n) + ")"; }

// Models of the grid with the top-layer rank within max_codim, paired with
// the classes used on the top layer's base.
struct ModelCase {
  std::string spec;
  int dimension;
  std::vector<std::string> classes;
};

std::vector<ModelCase> model_cases(const Grid& g, bool include_towers) {
  std::vector<ModelCase> out;
  for (const auto& m : single_layer_models()) {
    if (m.n > g.max_base || m.d > g.max_codim) continue;
    out.push_back({m.spec, m.n + m.d, base_classes(m.n)});
  }
  if (include_towers && g.max_base >= 2)
    for (const auto& t : towers()) {
      if (t.d2 > g.max_codim) continue;
      out.push_back({t.spec, 2 + t.d1 + t.d2, tower_classes()});
    }
  return out;
}

class SeedSource {
 public:
  SeedSource(std::uint64_t grid_seed, const std::string& suite) {
    std::uint64_t h = grid_seed;
    for (char c : suite) h = h * 1099511628211ULL + static_cast<unsigned char>(c);
    rng_.seed(h);
  }
  std::uint64_t next() {
    std::uint64_t s;
    do s = rng_();
    while (s == 0);
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

using Instances = std::vector<CheckInstance>;

CheckInstance make(const std::string& id, const std::string& variant, const std::string& model,
                   const std::string& klass = {}, int q = 0, std::uint64_t seed = 0) {
  return CheckInstance{id, variant, model, klass, q, seed};
}

void enumerate_main_like(const std::string& id, const Grid& g, Instances& out) {
  for (const auto& mc : model_cases(g, true))
    for (const auto& a : mc.classes)
      for (int q = 1; q <= std::min(g.max_degree, mc.dimension); ++q)
        out.push_back(make(id, "koszul", mc.spec, a, q));
  if (id != "main" || g.max_codim < 1) return;
  for (int n = 1; n <= g.max_base; ++n)
    for (const auto& a : base_classes(n - 1))
      for (int q = 1; q <= std::min(g.max_degree, n); ++q)
        out.push_back(make(id, "divisor", hyperplane_spec(n), a, q));
}

void enumerate_thom(const Grid& g, Instances& out) {
  SeedSource seeds(g.seed, "thom");
  for (const auto& mc : model_cases(g, true)) {
    const SpaceModel m = SpaceModel::build(parse_model_spec(mc.spec));
    for (std::size_t l = 0; l < m.layer_count(); ++l) {
      if (m.layer(l).rank() > g.max_codim) continue;
      const std::string layer = "@" + std::to_string(l + 1);
      for (const char* v : {"push_one", "line_route", "proj_push", "pullback"})
        out.push_back(make("thom", v + layer, mc.spec));
      for (int i = 0; i < 3; ++i)
        out.push_back(make("thom", "p_s_identity" + layer, mc.spec, {}, 0, seeds.next()));
    }
  }
}

void enumerate_grr(const Grid& g, Instances& out) {
  for (const auto& mc : model_cases(g, true))
    for (const auto& a : mc.classes)
      out.push_back(make("grr", "koszul", mc.spec, a, std::min(g.grr_degree, mc.dimension)));
  if (g.max_codim < 1) return;
  for (int n = 1; n <= g.max_base; ++n)
    for (const auto& a : base_classes(n - 1))
      out.push_back(make("grr", "divisor", hyperplane_spec(n), a, std::min(g.grr_degree, n)));
}

void enumerate_random(const std::string& id, const Grid& g, Instances& out) {
  SeedSource seeds(g.seed, id);
  for (const auto& mc : model_cases(g, true))
    for (int i = 0; i < g.draws; ++i)
      out.push_back(make(id, "random", mc.spec, {}, 0, seeds.next()));
}

void enumerate_functoriality(const Grid& g, Instances& out) {
  if (g.max_base < 2) return;
  SeedSource seeds(g.seed, "functoriality");
  for (const auto& t : towers()) {
    if (t.d1 + t.d2 > g.max_codim) continue;
    const int dim = 2 + t.d1 + t.d2;
    out.push_back(make("functoriality", "thom_product", t.spec));
    out.push_back(make("functoriality", "pullback", t.spec));
    for (const auto& a : base_classes(2))
      for (int q = 1; q <= std::min(g.max_degree, dim); ++q)
        out.push_back(make("functoriality", "chern", t.spec, a, q));
    for (int i = 0; i < g.draws; ++i)
      out.push_back(make("functoriality", "random", t.spec, {}, 0, seeds.next()));
  }
}

void enumerate_normalization(const Grid& g, Instances& out) {
  if (g.max_codim < 1) return;
  SeedSource seeds(g.seed, "normalization");
  for (int n = 1; n <= g.max_base; ++n) {
    out.push_back(make("normalization", "push_one", hyperplane_spec(n)));
    for (const auto& a : base_classes(n - 1))
      out.push_back(make("normalization", "c1", hyperplane_spec(n), a, 1));
    for (int i = 0; i < g.draws; ++i)
      out.push_back(make("normalization", "random", hyperplane_spec(n), {}, 1, seeds.next()));
  }
}

std::string universal_spec(int d) { return "universal(d=" + std::to_string(d) + ")"; }

void enumerate_structure(const Grid& g, Instances& out) {
  for (int d = 1; d <= g.max_codim; ++d)
    for (int q = d; q <= g.structure_max_degree; ++q)
      for (const char* v : {"cprime", "integrality", "stability"})
        out.push_back(make("structure", v, universal_spec(d), {}, q));
}

// ---------------------------------------------------------------------------
// Checks

std::int64_t small_draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

ZPoly random_class(const SpaceModel& m, std::size_t level, std::mt19937_64& rng) {
  ZPoly out = m.zero();
  for (const auto& e : m.basis(level)) out.add_term(e, mpz_class(small_draw(rng, -3, 3)));
  return out;
}

KClass random_kclass(std::mt19937_64& rng) {
  KClass k;
  const auto terms = small_draw(rng, 1, 3);
  for (int i = 0; i < terms; ++i) {
    const long twist = static_cast<long>(small_draw(rng, -2, 2));
    auto mult = small_draw(rng, -2, 2);
    if (mult == 0) mult = 1;
    k.add(Twist{twist}, mpz_class(static_cast<long>(mult)));
  }
  return k;
}

int hyperplane_dim(const std::string& spec) {
  static const std::regex re(R"(hyperplane\(P(\d+)\))");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) throw ModelError("not a hyperplane model: " + spec);
  return std::stoi(m[1].str());
}

int universal_codim(const std::string& spec) {
  static const std::regex re(R"(universal\(d=(\d+)\))");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) throw ModelError("not a universal spec: " + spec);
  return std::stoi(m[1].str());
}

std::size_t layer_of_variant(const std::string& variant, std::string& base) {
  const auto at = variant.find('@');
  if (at == std::string::npos) {
    base = variant;
    return static_cast<std::size_t>(-1);
  }
  base = variant.substr(0, at);
  return static_cast<std::size_t>(std::stoul(variant.substr(at + 1)) - 1);
}

class Checker {
 public:
  Checker(const CheckInstance& in, PolynomialStore& store) : in_(in), store_(store) {}

  CheckResult run() {
    result_.instance = in_;
    const auto start = std::chrono::steady_clock::now();
    try {
      dispatch();
    } catch (const std::exception& e) {
      result_.status = Status::Fail;
      result_.detail = e.what();
    }
    result_.millis =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result_;
  }

 private:
  void dispatch() {
    const std::string& id = in_.check_id;
    if (id == "main") return main_check();
    if (id == "ky2") return ky2_check();
    if (id == "thom") return thom_check();
    if (id == "grr") return grr_check();
    if (id == "excess") return excess_check();
    if (id == "projection") return projection_check();
    if (id == "functoriality") return functoriality_check();
    if (id == "normalization") return normalization_check();
    if (id == "structure") return structure_check();
    throw std::invalid_argument("unknown check '" + id + "'");
  }

  template <class Poly>
  void compare(const Poly& lhs, const Poly& rhs) {
    result_.lhs = lhs.to_string();
    result_.rhs = rhs.to_string();
    result_.status = lhs == rhs ? Status::Pass : Status::Fail;
  }

  void compare_text(const std::string& lhs, const std::string& rhs) {
    result_.lhs = lhs;
    result_.rhs = rhs;
    result_.status = lhs == rhs ? Status::Pass : Status::Fail;
  }

  SpaceModel model() const { return SpaceModel::build(parse_model_spec(in_.model)); }
  KClass klass() const { return parse_kclass(in_.klass); }
  std::mt19937_64 rng() const { return std::mt19937_64(in_.seed); }

  // P-side of the main identity: p^*(P(a, V)) t(V).
  ZPoly p_side(const SpaceModel& m, std::size_t l, const KClass& a, int q) {
    const auto& P = store_.get(m.layer(l).rank(), q);
    const ZPoly coord = evaluate_on_model(P, a, bundle_class(m, l), m);
    return m.normal_form(coord * m.thom_class(l));
  }

  struct GrrSides {
    QPoly k_side;
    QPoly oracle;
  };

  static QPoly up_to(const QPoly& p, int D) { return p.with_truncation(D); }

  // ch(s_! a) against s_*(ch(a) Td(V)^{-1}).
  static GrrSides grr_sides(const SpaceModel& m, std::size_t l, const KClass& a, int D) {
    GrrSides s;
    s.k_side = chern_character_of_kclass(koszul_pushforward(a, m, l), m);
    const QPoly td = m.normal_form(
        todd_inverse(VirtualBundle::honest(m.table(), m.layer(l).roots), m.truncation())
            .total());
    const QPoly base = m.normal_form(chern_character_of_kclass(a, m) * td);
    s.oracle = m.normal_form(base * to_rational(m.thom_class(l)));
    s.k_side = up_to(s.k_side, D);
    s.oracle = up_to(s.oracle, D);
    return s;
  }

  static GrrSides divisor_grr_sides(const DivisorModel& div, const KClass& a, int D) {
    GrrSides s;
    const SpaceModel& X = div.ambient();
    const SpaceModel& Z = div.hyperplane();
    s.k_side = chern_character_of_kclass(divisor_pushforward_k(a, div), X);
    const VirtualBundle N = VirtualBundle::honest(Z.table(), {Z.twist_root(Twist{1})});
    const QPoly td = Z.normal_form(todd_inverse(N, Z.truncation()).total());
    s.oracle = div.pushforward(Z.normal_form(chern_character_of_kclass(a, Z) * td));
    s.k_side = up_to(s.k_side, D);
    s.oracle = up_to(s.oracle, D);
    return s;
  }

  // Integral Chern classes recovered from the rational oracle.
  static TotalClass<mpz_class> oracle_chern(const SpaceModel& m, const QPoly& ch, long rank) {
    const int T = m.truncation();
    auto c = chern_from_character(split_by_degree(ch.with_truncation(T), T), rank, T,
                                  m.rational_reducer());
    for (auto& comp : c.components) comp = m.normal_form(comp);
    return c;
  }

  void main_check() {
    const KClass a = klass();
    if (in_.variant == "divisor") return main_divisor(a);
    const SpaceModel m = model();
    const std::size_t l = m.top_layer();
    const ZPoly lhs = chern_of_kclass(koszul_pushforward(a, m, l), in_.q, m);
    const ZPoly rhs = p_side(m, l, a, in_.q);
    compare(lhs, rhs);
    if (result_.status == Status::Pass) {
      const SupportedClass s = refined_chern(a, in_.q, m, l, store_.get(m.layer(l).rank(), in_.q));
      if (m.recover_thom_coordinate(s.ambient, l) != s.thom_coordinate) {
        result_.status = Status::Fail;
        result_.detail = "Thom coordinate " + s.thom_coordinate.to_string() +
                         " is not recovered by p_* of the ambient class";
      }
      return;
    }
    const GrrSides g = grr_sides(m, l, a, m.truncation());
    if (g.k_side == g.oracle) {
      result_.status = Status::IntegralityGap;
      result_.detail = "rational GRR agrees while the integral identity fails";
    }
  }

  void main_divisor(const KClass& a) {
    const DivisorModel div(hyperplane_dim(in_.model));
    const auto& P = store_.get(1, in_.q);
    const ZPoly lhs = chern_of_kclass(divisor_pushforward_k(a, div), in_.q, div.ambient());
    const ZPoly rhs = div.pushforward(
        evaluate_on_model(P, a, KClass::line(Twist{1}), div.hyperplane()));
    compare(lhs, rhs);
    if (result_.status == Status::Pass) return;
    const GrrSides g = divisor_grr_sides(div, a, div.ambient().truncation());
    if (g.k_side == g.oracle) {
      result_.status = Status::IntegralityGap;
      result_.detail = "rational GRR agrees while the integral identity fails";
    }
  }

  void ky2_check() {
    const SpaceModel m = model();
    const std::size_t l = m.top_layer();
    const KClass a = klass();
    const auto& P = store_.get(m.layer(l).rank(), in_.q);
    const ZPoly t = m.thom_class(l);
    const KClass V = bundle_class(m, l);
    Twist taut(m.layer(l).generator + 1, 0);
    taut[m.layer(l).generator] = -1;  // O(-1)
    const KClass Q = V + KClass::trivial() - KClass::line(taut);
    const ZPoly lhs = m.normal_form(evaluate_on_model(P, a, V, m) * t);
    const ZPoly rhs = m.normal_form(evaluate_on_model(P, a, Q, m) * t);
    compare(lhs, rhs);
  }

  void thom_check() {
    const SpaceModel m = model();
    std::string variant;
    const std::size_t l = layer_of_variant(in_.variant, variant);
    const Layer& layer = m.layer(l);
    const int d = layer.rank();
    const ZPoly t = m.thom_class(l);
    Twist o1(layer.generator + 1, 0);
    o1[layer.generator] = 1;
    if (variant == "push_one") {
      Twist taut = o1;
      taut[layer.generator] = -1;
      const KClass Q = bundle_class(m, l) + KClass::trivial() - KClass::line(taut);
      compare(m.zero_section_pushforward(m.one(), l).ambient, chern_of_kclass(Q, d, m));
      return;
    }
    if (variant == "line_route") {
      // t(V) = prod_j c_1(L_j (x) O(1)).
      ZPoly prod = m.one();
      for (const auto& tw : layer.twists)
        prod = m.normal_form(prod * chern_of_kclass(KClass::line(tw) * KClass::line(o1), 1, m));
      compare(prod, t);
      return;
    }
    if (variant == "proj_push") return compare(m.proj_pushforward(t, l), m.one());
    if (variant == "pullback") return compare(m.zero_section_pullback(t, l), m.bundle_chern(l, d));
    if (variant == "p_s_identity") {
      auto r = rng();
      const ZPoly b = random_class(m, l, r);
      compare(m.proj_pushforward(m.zero_section_pushforward(b, l).ambient, l), m.normal_form(b));
      return;
    }
    throw std::invalid_argument("unknown thom variant '" + in_.variant + "'");
  }

  void grr_check() {
    const KClass a = klass();
    const int D = in_.q;
    if (in_.variant == "divisor") {
      const DivisorModel div(hyperplane_dim(in_.model));
      const GrrSides g = divisor_grr_sides(div, a, D);
      compare(g.k_side, g.oracle);
      if (result_.status != Status::Pass) return;
      const auto c = oracle_chern(div.ambient(), g.oracle, 0);
      for (int q = 1; q <= D; ++q) {
        const ZPoly integral = div.pushforward(
            evaluate_on_model(store_.get(1, q), a, KClass::line(Twist{1}), div.hyperplane()));
        if (!gap_check(c[static_cast<std::size_t>(q)], integral, q)) return;
      }
      return;
    }
    const SpaceModel m = model();
    const std::size_t l = m.top_layer();
    const GrrSides g = grr_sides(m, l, a, D);
    compare(g.k_side, g.oracle);
    if (result_.status != Status::Pass) return;
    TotalClass<mpz_class> c;
    try {
      c = oracle_chern(m, g.oracle.with_truncation(m.truncation()), 0);
    } catch (const NonIntegralResult& e) {
      result_.status = Status::IntegralityGap;
      result_.detail = std::string("oracle Chern classes are not integral: ") + e.what();
      return;
    }
    for (int q = 1; q <= D; ++q)
      if (!gap_check(c[static_cast<std::size_t>(q)], p_side(m, l, a, q), q)) return;
  }

  bool gap_check(const ZPoly& oracle, const ZPoly& integral, int q) {
    if (oracle == integral) return true;
    result_.status = Status::IntegralityGap;
    result_.detail = "degree " + std::to_string(q) + ": oracle " + oracle.to_string() +
                     " but P-side " + integral.to_string();
    return false;
  }

  void excess_check() {
    const SpaceModel m = model();
    const std::size_t l = m.top_layer();
    auto r = rng();
    const ZPoly a = random_class(m, l, r);
    const ZPoly lhs = m.zero_section_pullback(m.zero_section_pushforward(a, l).ambient, l);
    const ZPoly rhs = m.normal_form(m.bundle_chern(l, m.layer(l).rank()) * a);
    compare(lhs, rhs);
  }

  void projection_check() {
    const SpaceModel m = model();
    const std::size_t l = m.top_layer();
    auto r = rng();
    const ZPoly alpha = random_class(m, l + 1, r);
    const ZPoly b = random_class(m, l, r);
    const ZPoly lhs =
        m.zero_section_pushforward(m.normal_form(m.zero_section_pullback(alpha, l) * b), l).ambient;
    const ZPoly rhs = m.normal_form(alpha * m.zero_section_pushforward(b, l).ambient);
    compare(lhs, rhs);
  }

  // V_2 restricted to the bottom base: layer twists dropped.
  static KClass restrict_to_base(const KClass& k) {
    KClass out;
    for (const auto& [t, mult] : k.terms()) out.add(Twist{t[0]}, mult);
    return out;
  }

  void functoriality_check() {
    const SpaceModel m = model();
    if (m.layer_count() != 2) throw ModelError("functoriality needs a two-layer tower");
    const ZPoly t1 = m.thom_class(0), t2 = m.thom_class(1);
    const ZPoly t12 = m.normal_form(t1 * t2);
    const int d1 = m.layer(0).rank(), d2 = m.layer(1).rank();
    const KClass V2_base = restrict_to_base(bundle_class(m, 1));
    auto composite = [&](const ZPoly& a) {
      return m.zero_section_pushforward(m.zero_section_pushforward(a, 0).ambient, 1).ambient;
    };
    if (in_.variant == "thom_product") return compare(composite(m.one()), t12);
    if (in_.variant == "pullback") {
      const ZPoly lhs = m.zero_section_pullback(m.zero_section_pullback(t12, 1), 0);
      const ZPoly rhs = m.normal_form(m.bundle_chern(0, d1) * chern_of_kclass(V2_base, d2, m));
      return compare(lhs, rhs);
    }
    if (in_.variant == "random") {
      auto r = rng();
      const ZPoly b = random_class(m, 0, r);
      return compare(composite(b), m.normal_form(b * t12));
    }
    if (in_.variant == "chern") {
      const KClass a = klass();
      const KClass pushed = koszul_pushforward(koszul_pushforward(a, m, 0), m, 1);
      const ZPoly lhs = chern_of_kclass(pushed, in_.q, m);
      const KClass N = bundle_class(m, 0) + V2_base;
      const ZPoly coord = evaluate_on_model(store_.get(d1 + d2, in_.q), a, N, m);
      return compare(lhs, m.normal_form(coord * t12));
    }
    throw std::invalid_argument("unknown functoriality variant '" + in_.variant + "'");
  }

  void normalization_check() {
    const DivisorModel div(hyperplane_dim(in_.model));
    const SpaceModel& X = div.ambient();
    if (in_.variant == "push_one")
      return compare(div.pushforward(div.hyperplane().one()),
                     chern_of_kclass(KClass::line(Twist{1}), 1, X));
    KClass a;
    if (in_.variant == "random") {
      auto r = rng();
      a = random_kclass(r);
      result_.instance.klass = a.to_string();
    } else {
      a = klass();
    }
    const ZPoly lhs = chern_of_kclass(divisor_pushforward_k(a, div), 1, X);
    compare(lhs, X.normal_form(X.h() * a.rank()));
  }

  void structure_check() {
    const int d = universal_codim(in_.model);
    const int q = in_.q;
    const auto& P = store_.get(d, q);
    if (in_.variant == "cprime") {
      const TablePtr table = P.coefficient_table();
      const int mcount = P.arity();
      std::vector<ZPoly> c(static_cast<std::size_t>(mcount), ZPoly(table, q));
      std::vector<ZPoly> cp;
      for (int j = 1; j <= mcount; ++j)
        cp.push_back(ZPoly::variable(table, "cp" + std::to_string(j), q));
      const ZPoly value = evaluate(P, 0, c, cp, table, q);
      return compare(value, ZPoly(table, q));
    }
    if (in_.variant == "integrality") {
      std::string lhs, rhs;
      for (int xi = -3; xi <= 6; ++xi) {
        const std::string prefix = (xi > -3 ? "; " : "") + std::string("xi=") + std::to_string(xi) + ": ";
        lhs += prefix + evaluate_at_rank(P, xi).to_string();
        try {
          rhs += prefix + evaluate_at_rank_monomial_basis(P, xi).to_string();
        } catch (const NonIntegralEvaluation& e) {
          rhs += prefix + "non-integral";
        }
      }
      return compare_text(lhs, rhs);
    }
    if (in_.variant == "stability") {
      GenerateOptions opts;
      opts.extra_samples = 2;
      const JouanolouPolynomial again = generate(d, q, opts);
      return compare_text(to_text(P), to_text(again) + (again == P ? "" : " (differs)"));
    }
    throw std::invalid_argument("unknown structure variant '" + in_.variant + "'");
  }

  const CheckInstance& in_;
  PolynomialStore& store_;
  CheckResult result_;
};

}  // namespace

std::vector<CheckInstance> enumerate_suite(const std::string& suite, const Grid& grid) {
  Instances out;
  if (suite == "all") {
    for (const auto& name : suite_names()) {
      if (name == "all") continue;
      auto part = enumerate_suite(name, grid);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (suite == "main" || suite == "ky2")
    enumerate_main_like(suite, grid, out);
  else if (suite == "thom")
    enumerate_thom(grid, out);
  else if (suite == "grr")
    enumerate_grr(grid, out);
  else if (suite == "excess" || suite == "projection")
    enumerate_random(suite, grid, out);
  else if (suite == "functoriality")
    enumerate_functoriality(grid, out);
  else if (suite == "normalization")
    enumerate_normalization(grid, out);
  else if (suite == "structure")
    enumerate_structure(grid, out);
  else
    throw std::invalid_argument("unknown suite '" + suite + "'");
  return out;
}

CheckResult run_check(const CheckInstance& instance, PolynomialStore& store) {
  return Checker(instance, store).run();
}

void expect_pass(const CheckResult& r) {
  if (r.status == Status::Pass) return;
  std::string msg = r.instance.key() + ": " + status_name(r.status) + "\n  lhs: " + r.lhs +
                    "\n  rhs: " + r.rhs;
  if (!r.detail.empty()) msg += "\n  detail: " + r.detail;
  throw CheckFailed(msg);
}

Report run_instances(const std::string& suite, std::vector<CheckInstance> instances, int jobs,
                     PolynomialStore& store, std::uint64_t seed) {
  Report report;
  report.suite = suite;
  report.seed = seed;
  if (instances.empty()) {
    report.warnings.push_back("no check instances in the grid for suite '" + suite +
                              "'; vacuous pass");
    return report;
  }
  std::sort(instances.begin(), instances.end());
  instances.erase(std::unique(instances.begin(), instances.end()), instances.end());
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), instances.size());

  report.results.resize(instances.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < instances.size();)
      report.results[i] = run_check(instances[i], store);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return report;
}

Report run_suite(const std::string& suite, const Grid& grid, int jobs, PolynomialStore& store) {
  return run_instances(suite, enumerate_suite(suite, grid), jobs, store, grid.seed);
}

std::string report_json(const Report& report, bool timings) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json doc;
  doc["suite"] = report.suite;
  doc["engine_version"] = kEngineVersion;
  doc["truncation"] = kDefaultTruncation;
  doc["seed"] = report.seed;
  doc["passed"] = report.passed();
  doc["summary"] = {{"total", report.results.size()},
                    {"pass", report.count(Status::Pass)},
                    {"fail", report.count(Status::Fail)},
                    {"integrality_gap", report.count(Status::IntegralityGap)}};
  doc["warnings"] = report.warnings;
  ordered_json instances = ordered_json::array();
  for (const auto& r : report.results) {
    ordered_json item;
    item["check_id"] = r.instance.check_id;
    ordered_json params;
    params["variant"] = r.instance.variant;
    params["model"] = r.instance.model;
    if (!r.instance.klass.empty()) params["class"] = r.instance.klass;
    if (r.instance.q) params["q"] = r.instance.q;
    if (r.instance.seed) params["seed"] = r.instance.seed;
    item["params"] = std::move(params);
    item["status"] = status_name(r.status);
    if (!r.lhs.empty()) item["lhs"] = r.lhs;
    if (!r.rhs.empty()) item["rhs"] = r.rhs;
    if (!r.detail.empty()) item["detail"] = r.detail;
    if (timings) item["millis"] = std::round(r.millis * 1000.0) / 1000.0;
    instances.push_back(std::move(item));
  }
  doc["instances"] = std::move(instances);
  return doc.dump(2) + "\n";
}

std::string report_table(const Report& report, bool timings) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"CHECK", "VARIANT", "MODEL", "CLASS", "Q", "SEED", "STATUS"};
  if (timings) header.push_back("MS");
  rows.push_back(header);
  for (const auto& r : report.results) {
    const auto& in = r.instance;
    std::vector<std::string> row = {in.check_id,
                                    in.variant.empty() ? "-" : in.variant,
                                    in.model,
                                    in.klass.empty() ? "-" : in.klass,
                                    in.q ? std::to_string(in.q) : "-",
                                    in.seed ? std::to_string(in.seed) : "-",
                                    status_name(r.status)};
    if (timings) {
      std::ostringstream ms;
      ms << std::fixed << std::setprecision(2) << r.millis;
      row.push_back(ms.str());
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());

  std::ostringstream out;
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::string line;
    for (std::size_t i = 0; i < rows[k].size(); ++i) {
      line += rows[k][i];
      if (i + 1 < rows[k].size()) line += std::string(width[i] - rows[k][i].size() + 2, ' ');
    }
    out << line << "\n";
    if (k == 0) continue;
    const auto& r = report.results[k - 1];
    if (r.status == Status::Pass) continue;
    out << "    lhs: " << r.lhs << "\n    rhs: " << r.rhs << "\n";
    if (!r.detail.empty()) out << "    detail: " << r.detail << "\n";
  }
  out << report.results.size() << " instances: " << report.count(Status::Pass) << " pass, "
      << report.count(Status::Fail) << " fail, " << report.count(Status::IntegralityGap)
      << " integrality-gap\n";
  return out.str();
}

}  // namespace jouanolou
