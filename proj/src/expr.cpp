#include "jouanolou/expr.hpp"

#include <cctype>
#include <regex>

namespace jouanolou {

namespace {

using K = Token::Kind;

std::string describe(const Token& t) {
  switch (t.kind) {
    case K::End:
      return "end of input";
    case K::Integer:
      return "integer " + t.text;
    case K::Identifier:
      return "identifier '" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < src.size()) {
    const unsigned char ch = static_cast<unsigned char>(src[i]);
    if (std::isspace(ch)) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = column;
    std::size_t len = 1;
    if (std::isdigit(ch)) {
      while (i + len < src.size() && std::isdigit(static_cast<unsigned char>(src[i + len]))) ++len;
      t.kind = K::Integer;
    } else if (std::isalpha(ch) || ch == '_') {
      while (i + len < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i + len])) || src[i + len] == '_'))
        ++len;
      t.kind = K::Identifier;
    } else {
      switch (ch) {
        case '(': t.kind = K::LParen; break;
        case ')': t.kind = K::RParen; break;
        case '[': t.kind = K::LBracket; break;
        case ']': t.kind = K::RBracket; break;
        case ',': t.kind = K::Comma; break;
        case ';': t.kind = K::Semicolon; break;
        case '+': t.kind = K::Plus; break;
        case '-': t.kind = K::Minus; break;
        case '*': t.kind = K::Star; break;
        case '^': t.kind = K::Caret; break;
        default:
          throw SyntaxError(std::string("unexpected character '") + src[i] + "'", line, column);
      }
    }
    t.text = std::string(src.substr(i, len));
    out.push_back(std::move(t));
    advance(len);
  }
  Token end;
  end.kind = K::End;
  end.line = line;
  end.column = column;
  out.push_back(end);
  return out;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

  ExprPtr parse_expression_only() {
    auto e = expr();
    expect_end();
    return e;
  }

  TowerSpec parse_model_only() {
    TowerSpec spec = model();
    expect_end();
    return spec;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  bool at(K kind) const { return peek().kind == kind; }

  [[noreturn]] void fail(const std::string& what, const Token& t) const {
    throw SyntaxError(what + ", found " + describe(t), t.line, t.column);
  }

  const Token& expect(K kind, const char* what) {
    if (!at(kind)) fail(std::string("expected ") + what, peek());
    return next();
  }

  void expect_end() {
    if (!at(K::End)) fail("expected end of input", peek());
  }

  int small_int(const Token& t) {
    try {
      return std::stoi(t.text);
    } catch (const std::exception&) {
      throw SyntaxError("integer " + t.text + " is out of range", t.line, t.column);
    }
  }

  long signed_long() {
    bool neg = false;
    if (at(K::Minus)) {
      next();
      neg = true;
    }
    const Token& t = expect(K::Integer, "an integer");
    long v;
    try {
      v = std::stol(t.text);
    } catch (const std::exception&) {
      throw SyntaxError("integer " + t.text + " is out of range", t.line, t.column);
    }
    return neg ? -v : v;
  }

  Twist twist() {
    const Token& o = expect(K::Identifier, "'O'");
    if (o.text != "O") throw SyntaxError("expected 'O', found " + describe(o), o.line, o.column);
    Twist t{0};
    if (at(K::LParen)) {
      next();
      t.clear();
      t.push_back(signed_long());
      while (at(K::Comma)) {
        next();
        t.push_back(signed_long());
      }
      expect(K::RParen, "')'");
    }
    return canonical_twist(std::move(t));
  }

  TowerSpec model() {
    const Token& t = peek();
    if (t.kind != K::Identifier) fail("expected a model", t);
    static const std::regex base(R"(P(\d+))");
    std::smatch m;
    if (std::regex_match(t.text, m, base)) {
      next();
      TowerSpec spec;
      try {
        spec.base_dim = std::stoi(m[1].str());
      } catch (const std::exception&) {
        throw SyntaxError("dimension out of range", t.line, t.column);
      }
      return spec;
    }
    if (t.text != "proj") throw UnknownModel("unknown model '" + t.text + "'", t.line, t.column);
    next();
    expect(K::LParen, "'('");
    TowerSpec spec = model();
    expect(K::Semicolon, "';'");
    std::vector<Twist> layer{twist()};
    while (at(K::Plus)) {
      next();
      layer.push_back(twist());
    }
    expect(K::RParen, "')'");
    spec.layers.push_back(std::move(layer));
    return spec;
  }

  static ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

  static Expr at_token(Expr::Kind kind, const Token& t) {
    Expr e;
    e.kind = kind;
    e.line = t.line;
    e.column = t.column;
    return e;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (at(K::Plus) || at(K::Minus)) {
      const Token& op = next();
      Expr e = at_token(op.kind == K::Plus ? Expr::Kind::Add : Expr::Kind::Sub, op);
      e.args = {lhs, term()};
      lhs = make(std::move(e));
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    while (at(K::Star)) {
      const Token& op = next();
      Expr e = at_token(Expr::Kind::Mul, op);
      e.args = {lhs, unary()};
      lhs = make(std::move(e));
    }
    return lhs;
  }

  ExprPtr unary() {
    if (at(K::Minus)) {
      const Token& op = next();
      Expr e = at_token(Expr::Kind::Neg, op);
      e.args = {unary()};
      return make(std::move(e));
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (at(K::Caret)) {
      const Token& op = next();
      Expr e = at_token(Expr::Kind::Pow, op);
      const Token& n = expect(K::Integer, "an integer exponent");
      e.integer = mpz_class(n.text);
      e.args = {base};
      return make(std::move(e));
    }
    return base;
  }

  ExprPtr k_literal(const Token& start, const mpz_class& multiple) {
    expect(K::LBracket, "'['");
    Expr e = at_token(Expr::Kind::KLiteral, start);
    e.integer = multiple;
    e.twist = twist();
    expect(K::RBracket, "']'");
    return make(std::move(e));
  }

  std::vector<ExprPtr> call_args() {
    expect(K::LParen, "'('");
    std::vector<ExprPtr> args;
    if (!at(K::RParen)) {
      args.push_back(expr());
      while (at(K::Comma)) {
        next();
        args.push_back(expr());
      }
    }
    expect(K::RParen, "')'");
    return args;
  }

  std::vector<ExprPtr> expr_list() {
    std::vector<ExprPtr> list;
    if (at(K::Semicolon) || at(K::RParen)) return list;
    list.push_back(expr());
    while (at(K::Comma)) {
      next();
      list.push_back(expr());
    }
    return list;
  }

  static void require_arity(const Token& name, const std::vector<ExprPtr>& args,
                            std::size_t n) {
    if (args.size() != n)
      throw ArityMismatch(name.text + " takes " + std::to_string(n) + " argument" +
                              (n == 1 ? "" : "s") + ", got " + std::to_string(args.size()),
                          name.line, name.column);
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case K::Integer: {
        next();
        if (at(K::LBracket)) return k_literal(t, mpz_class(t.text));
        Expr e = at_token(Expr::Kind::Integer, t);
        e.integer = mpz_class(t.text);
        return make(std::move(e));
      }
      case K::LBracket:
        return k_literal(t, 1);
      case K::LParen: {
        next();
        ExprPtr inner = expr();
        expect(K::RParen, "')'");
        return inner;
      }
      case K::Identifier:
        return identifier();
      default:
        fail("expected an expression", t);
    }
  }

  ExprPtr identifier() {
    const Token& t = next();
    const std::string& name = t.text;
    if (name == "c") {
      auto args = call_args();
      require_arity(t, args, 2);
      if (args[0]->kind != Expr::Kind::Integer)
        throw SyntaxError("the degree of c(q, e) must be an integer literal", args[0]->line,
                          args[0]->column);
      Expr e = at_token(Expr::Kind::Chern, t);
      e.degree = static_cast<int>(args[0]->integer.get_si());
      e.args = {args[1]};
      return make(std::move(e));
    }
    static const std::vector<std::pair<std::string, Expr::Kind>> unary_calls = {
        {"ch", Expr::Kind::Character}, {"tdinv", Expr::Kind::ToddInverse},
        {"push_s", Expr::Kind::PushS}, {"push_p", Expr::Kind::PushP},
        {"pull_s", Expr::Kind::PullS}};
    for (const auto& [fn, kind] : unary_calls) {
      if (name != fn) continue;
      auto args = call_args();
      require_arity(t, args, 1);
      Expr e = at_token(kind, t);
      e.args = std::move(args);
      return make(std::move(e));
    }
    if (name == "thom") {
      auto args = call_args();
      require_arity(t, args, 0);
      return make(at_token(Expr::Kind::Thom, t));
    }
    if (name == "P") {
      expect(K::LParen, "'('");
      Expr e = at_token(Expr::Kind::PolyEval, t);
      e.d = small_int(expect(K::Integer, "the codimension"));
      expect(K::Comma, "','");
      e.degree = small_int(expect(K::Integer, "the degree"));
      expect(K::RParen, "')'");
      if (e.d < 1) throw ArityMismatch("P(d, q) needs d >= 1", t.line, t.column);
      expect(K::LParen, "'('");
      e.args = {expr()};
      expect(K::Semicolon, "';'");
      e.c_args = expr_list();
      expect(K::Semicolon, "';'");
      e.cp_args = expr_list();
      expect(K::RParen, "')'");
      const std::size_t m = static_cast<std::size_t>(std::max(e.degree - e.d, 0));
      if (e.c_args.size() > m || e.cp_args.size() > m)
        throw ArityMismatch("P(" + std::to_string(e.d) + ", " + std::to_string(e.degree) +
                                ") takes at most " + std::to_string(m) +
                                " Chern classes per argument list",
                            t.line, t.column);
      return make(std::move(e));
    }
    if (at(K::LParen))
      throw SyntaxError("unknown function '" + name + "'", t.line, t.column);
    Expr e = at_token(Expr::Kind::Generator, t);
    e.name = name;
    return make(std::move(e));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int level(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
      return 1;
    case Expr::Kind::Mul:
      return 2;
    case Expr::Kind::Neg:
      return 3;
    case Expr::Kind::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string wrap(const Expr& e, int min_level) {
  const std::string s = print(e);
  return level(e) < min_level ? "(" + s + ")" : s;
}

std::string join(const std::vector<ExprPtr>& list, std::string (*f)(const Expr&)) {
  std::string s;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) s += ", ";
    s += f(*list[i]);
  }
  return s;
}

std::string k_literal_text(const Expr& e) {
  return (e.integer == 1 ? std::string() : e.integer.get_str()) + "[" + twist_string(e.twist) +
         "]";
}

}  // namespace

ExprPtr parse_class_expr(std::string_view src) { return Parser(src).parse_expression_only(); }

TowerSpec parse_model_spec(std::string_view src) { return Parser(src).parse_model_only(); }

std::string print(const Expr& e) {
  using EK = Expr::Kind;
  switch (e.kind) {
    case EK::Integer:
      return e.integer.get_str();
    case EK::KLiteral:
      return k_literal_text(e);
    case EK::Generator:
      return e.name;
    case EK::Neg:
      return "-" + wrap(*e.args[0], 3);
    case EK::Add:
      return wrap(*e.args[0], 1) + "+" + wrap(*e.args[1], 2);
    case EK::Sub:
      return wrap(*e.args[0], 1) + "-" + wrap(*e.args[1], 2);
    case EK::Mul:
      return wrap(*e.args[0], 2) + "*" + wrap(*e.args[1], 3);
    case EK::Pow:
      return wrap(*e.args[0], 5) + "^" + e.integer.get_str();
    case EK::Chern:
      return "c(" + std::to_string(e.degree) + ", " + print(*e.args[0]) + ")";
    case EK::Character:
      return "ch(" + print(*e.args[0]) + ")";
    case EK::ToddInverse:
      return "tdinv(" + print(*e.args[0]) + ")";
    case EK::PushS:
      return "push_s(" + print(*e.args[0]) + ")";
    case EK::PushP:
      return "push_p(" + print(*e.args[0]) + ")";
    case EK::PullS:
      return "pull_s(" + print(*e.args[0]) + ")";
    case EK::Thom:
      return "thom()";
    case EK::PolyEval:
      return "P(" + std::to_string(e.d) + ", " + std::to_string(e.degree) + ")(" +
             print(*e.args[0]) + "; " + join(e.c_args, print) + "; " + join(e.cp_args, print) +
             ")";
  }
  return {};
}

std::string dump(const Expr& e) {
  using EK = Expr::Kind;
  auto one = [&](const char* tag) { return std::string(tag) + "(" + dump(*e.args[0]) + ")"; };
  auto two = [&](const char* tag) {
    return std::string(tag) + "(" + dump(*e.args[0]) + ", " + dump(*e.args[1]) + ")";
  };
  switch (e.kind) {
    case EK::Integer:
      return "Int(" + e.integer.get_str() + ")";
    case EK::KLiteral:
      return "KLit(" + k_literal_text(e) + ")";
    case EK::Generator:
      return "Gen(" + e.name + ")";
    case EK::Neg:
      return one("Neg");
    case EK::Add:
      return two("Add");
    case EK::Sub:
      return two("Sub");
    case EK::Mul:
      return two("Mul");
    case EK::Pow:
      return "Pow(" + dump(*e.args[0]) + ", " + e.integer.get_str() + ")";
    case EK::Chern:
      return "ChernOf(" + std::to_string(e.degree) + ", " + dump(*e.args[0]) + ")";
    case EK::Character:
      return one("Character");
    case EK::ToddInverse:
      return one("ToddInverse");
    case EK::PushS:
      return one("ZeroSectionPush");
    case EK::PushP:
      return one("ProjPush");
    case EK::PullS:
      return one("ZeroSectionPull");
    case EK::Thom:
      return "Thom()";
    case EK::PolyEval:
      return "PolyEval(" + std::to_string(e.d) + ", " + std::to_string(e.degree) + "; " +
             dump(*e.args[0]) + "; " + join(e.c_args, dump) + "; " + join(e.cp_args, dump) + ")";
  }
  return {};
}

namespace {

KClass k_only(const Expr& e) {
  using EK = Expr::Kind;
  switch (e.kind) {
    case EK::KLiteral:
      return KClass::line(e.twist, e.integer);
    case EK::Integer:
      return KClass::trivial(e.integer);
    case EK::Neg:
      return -k_only(*e.args[0]);
    case EK::Add:
      return k_only(*e.args[0]) + k_only(*e.args[1]);
    case EK::Sub:
      return k_only(*e.args[0]) - k_only(*e.args[1]);
    default:
      throw SyntaxError("expected a K-class literal", e.line, e.column);
  }
}

}  // namespace

KClass parse_kclass(std::string_view src) {
  if (src == "0") return {};
  return k_only(*parse_class_expr(src));
}

std::string Value::kind_name() const {
  switch (kind) {
    case Kind::Integer:
      return "integer";
    case Kind::K:
      return "k-class";
    case Kind::Chow:
      return "chow";
    case Kind::RationalChow:
      return "chow-q";
  }
  return {};
}

std::string Value::to_string() const {
  switch (kind) {
    case Kind::Integer:
      return integer.get_str();
    case Kind::K:
      return k.to_string();
    case Kind::Chow:
      return chow.to_string();
    case Kind::RationalChow:
      return rational.to_string();
  }
  return {};
}

namespace {

using VK = Value::Kind;

class Evaluator {
 public:
  Evaluator(const SpaceModel& model, PolynomialStore& store) : model_(model), store_(store) {}

  Value eval(const Expr& e) {
    using EK = Expr::Kind;
    switch (e.kind) {
      case EK::Integer:
        return integer(e.integer);
      case EK::KLiteral:
        return k_value(KClass::line(e.twist, e.integer));
      case EK::Generator: {
        if (!model_.table()->find(e.name))
          throw error(e, "the model has no generator '" + e.name + "'");
        return chow(model_.generator(e.name));
      }
      case EK::Neg:
        return negate(eval(*e.args[0]));
      case EK::Add:
        return add(e, eval(*e.args[0]), eval(*e.args[1]), false);
      case EK::Sub:
        return add(e, eval(*e.args[0]), eval(*e.args[1]), true);
      case EK::Mul:
        return multiply(e, eval(*e.args[0]), eval(*e.args[1]));
      case EK::Pow:
        return raise(e, eval(*e.args[0]));
      case EK::Chern:
        return chow(chern_of_kclass(as_k(e, eval(*e.args[0])), e.degree, model_));
      case EK::Character:
        return rational(chern_character_of_kclass(as_k(e, eval(*e.args[0])), model_));
      case EK::ToddInverse: {
        const KClass k = as_k(e, eval(*e.args[0]));
        return rational(model_.normal_form(
            todd_inverse(to_virtual_bundle(k, model_), model_.truncation()).total()));
      }
      case EK::PushS:
        return push_s(e, eval(*e.args[0]));
      case EK::PushP:
        return push_p(e, eval(*e.args[0]));
      case EK::PullS:
        return pull_s(e, eval(*e.args[0]));
      case EK::Thom:
        return chow(model_.thom_class(top(e)));
      case EK::PolyEval:
        return poly_eval(e);
    }
    throw error(e, "unsupported expression");
  }

 private:
  static Value integer(const mpz_class& v) {
    Value r;
    r.kind = VK::Integer;
    r.integer = v;
    return r;
  }
  static Value k_value(KClass k) {
    Value r;
    r.kind = VK::K;
    r.k = std::move(k);
    return r;
  }
  Value chow(const ZPoly& p) const {
    Value r;
    r.kind = VK::Chow;
    r.chow = model_.normal_form(p);
    return r;
  }
  Value rational(const QPoly& p) const {
    Value r;
    r.kind = VK::RationalChow;
    r.rational = model_.normal_form(p);
    return r;
  }

  static ModelError error(const Expr& e, const std::string& what) {
    return ModelError(what + " at line " + std::to_string(e.line) + ", column " +
                      std::to_string(e.column));
  }

  std::size_t top(const Expr& e) const {
    if (model_.layer_count() == 0)
      throw error(e, "model " + model_.spec().to_string() + " has no projective-completion layer");
    return model_.top_layer();
  }

  KClass as_k(const Expr& e, const Value& v) const {
    if (v.kind == VK::K) return v.k;
    if (v.kind == VK::Integer) return KClass::trivial(v.integer);
    throw error(e, "expected a K-class, got a " + v.kind_name() + " value");
  }
  ZPoly as_chow(const Expr& e, const Value& v) const {
    if (v.kind == VK::Chow) return v.chow;
    if (v.kind == VK::Integer) return model_.constant(v.integer);
    throw error(e, "expected an integral Chow class, got a " + v.kind_name() + " value");
  }
  QPoly as_rational(const Expr& e, const Value& v) const {
    if (v.kind == VK::RationalChow) return v.rational;
    return to_rational(as_chow(e, v));
  }

  Value negate(Value v) const {
    switch (v.kind) {
      case VK::Integer:
        v.integer = -v.integer;
        break;
      case VK::K:
        v.k = -v.k;
        break;
      case VK::Chow:
        v.chow = -v.chow;
        break;
      case VK::RationalChow:
        v.rational = -v.rational;
        break;
    }
    return v;
  }

  Value add(const Expr& e, const Value& a, const Value& b, bool subtract) const {
    if (a.kind == VK::Integer && b.kind == VK::Integer)
      return integer(subtract ? mpz_class(a.integer - b.integer) : mpz_class(a.integer + b.integer));
    if (a.kind == VK::K || b.kind == VK::K) {
      const KClass x = as_k(e, a), y = as_k(e, b);
      return k_value(subtract ? x - y : x + y);
    }
    if (a.kind == VK::RationalChow || b.kind == VK::RationalChow) {
      const QPoly x = as_rational(e, a), y = as_rational(e, b);
      return rational(subtract ? x - y : x + y);
    }
    const ZPoly x = as_chow(e, a), y = as_chow(e, b);
    return chow(subtract ? x - y : x + y);
  }

  Value multiply(const Expr& e, const Value& a, const Value& b) const {
    if (a.kind == VK::Integer || b.kind == VK::Integer) {
      const Value& s = a.kind == VK::Integer ? a : b;
      Value other = a.kind == VK::Integer ? b : a;
      switch (other.kind) {
        case VK::Integer:
          other.integer *= s.integer;
          break;
        case VK::K:
          other.k *= s.integer;
          break;
        case VK::Chow:
          other.chow *= s.integer;
          break;
        case VK::RationalChow:
          other.rational *= mpq_class(s.integer);
          break;
      }
      return other;
    }
    if (a.kind == VK::K && b.kind == VK::K) return k_value(a.k * b.k);
    if (a.kind == VK::K || b.kind == VK::K)
      throw error(e, "cannot multiply a K-class by a Chow class");
    if (a.kind == VK::RationalChow || b.kind == VK::RationalChow)
      return rational(model_.normal_form(as_rational(e, a) * as_rational(e, b)));
    return chow(model_.normal_form(as_chow(e, a) * as_chow(e, b)));
  }

  Value raise(const Expr& e, const Value& base) const {
    if (!e.integer.fits_uint_p() || e.integer > 64) throw error(e, "exponent too large");
    const unsigned n = static_cast<unsigned>(e.integer.get_ui());
    switch (base.kind) {
      case VK::Integer: {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), base.integer.get_mpz_t(), n);
        return integer(r);
      }
      case VK::K: {
        KClass r = KClass::trivial();
        for (unsigned i = 0; i < n; ++i) r = r * base.k;
        return k_value(r);
      }
      case VK::Chow:
        return chow(model_.normal_form(power(base.chow, n)));
      case VK::RationalChow:
        return rational(model_.normal_form(power(base.rational, n)));
    }
    throw error(e, "unsupported power");
  }

  // Highest generator index used by a rational class.
  static std::size_t rational_level(const QPoly& p) {
    std::size_t level = 0;
    for (const auto& [m, c] : p.terms())
      for (std::size_t i = 1; i < m.exponents.size(); ++i)
        if (m.exponents[i] > 0) level = std::max(level, i);
    return level;
  }

  Value push_s(const Expr& e, const Value& v) const {
    const std::size_t l = top(e);
    const std::size_t g = model_.layer(l).generator;
    if (v.kind == VK::K) return k_value(koszul_pushforward(v.k, model_, l));
    if (v.kind == VK::RationalChow) {
      if (rational_level(v.rational) >= g)
        throw error(e, "push_s needs a class on the base of the top layer");
      return rational(v.rational * to_rational(model_.thom_class(l)));
    }
    const ZPoly a = as_chow(e, v);
    if (model_.level_of(a) >= g) throw error(e, "push_s needs a class on the base of the top layer");
    return chow(model_.zero_section_pushforward_ambient(a, l));
  }

  Value push_p(const Expr& e, const Value& v) const {
    const std::size_t l = top(e);
    if (v.kind != VK::RationalChow) return chow(model_.proj_pushforward(as_chow(e, v), l));
    const std::size_t g = model_.layer(l).generator;
    const int d = model_.layer(l).rank();
    QPoly out(model_.table(), model_.truncation());
    const QPoly nf = model_.normal_form(v.rational);
    for (const auto& [m, c] : nf.terms()) {
      if (m.exponents[g] != d) continue;
      auto ex = m.exponents;
      ex[g] = 0;
      out.add_term(std::move(ex), d % 2 ? mpq_class(-c) : c);
    }
    return rational(out);
  }

  Value pull_s(const Expr& e, const Value& v) const {
    const std::size_t l = top(e);
    const std::size_t g = model_.layer(l).generator;
    if (v.kind == VK::K) {
      KClass out;
      for (const auto& [t, m] : v.k.terms()) {
        Twist r = t;
        if (r.size() > g) r[g] = 0;
        out.add(r, m);
      }
      return k_value(out);
    }
    if (v.kind == VK::RationalChow) {
      QPoly out(model_.table(), model_.truncation());
      for (const auto& [m, c] : v.rational.terms())
        if (m.exponents[g] == 0) out.add_term(m, c);
      return rational(out);
    }
    return chow(model_.zero_section_pullback(as_chow(e, v), l));
  }

  Value poly_eval(const Expr& e) {
    const Value rank = eval(*e.args[0]);
    if (rank.kind != VK::Integer) throw error(e, "the rank argument of P must be an integer");
    std::vector<ZPoly> c, cp;
    for (const auto& a : e.c_args) c.push_back(as_chow(*a, eval(*a)));
    for (const auto& a : e.cp_args) cp.push_back(as_chow(*a, eval(*a)));
    const JouanolouPolynomial& P = store_.get(e.d, e.degree);
    return chow(evaluate(P, rank.integer, c, cp, model_.table(), model_.truncation(),
                         model_.reducer()));
  }

  const SpaceModel& model_;
  PolynomialStore& store_;
};

}  // namespace

Value evaluate_expr(const Expr& e, const SpaceModel& model, PolynomialStore& store) {
  return Evaluator(model, store).eval(e);
}

}  // namespace jouanolou
