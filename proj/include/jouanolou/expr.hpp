#pragma once

// Class expressions and model specs for the command line.
//
//   model   := P<n> | proj( model ; twist (+ twist)* )
//   twist   := O | O( int (, int)* )
//   expr    := term ((+|-) term)*
//   term    := unary (* unary)*
//   unary   := - unary | power
//   power   := primary (^ INT)?
//   primary := INT | INT [ twist ] | [ twist ] | ( expr ) | generator
//            | c(INT, expr) | ch(expr) | tdinv(expr) | push_s(expr)
//            | push_p(expr) | pull_s(expr) | thom()
//            | P(INT, INT)(expr ; exprs ; exprs)
//
// push_s, push_p, pull_s and thom act on the top layer of the model.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "jouanolou/chowmodel.hpp"
#include "jouanolou/jouanolou.hpp"
#include "jouanolou/kmodel.hpp"

namespace jouanolou {

struct Token {
  enum class Kind {
    Integer,
    Identifier,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semicolon,
    Plus,
    Minus,
    Star,
    Caret,
    End
  };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

// Throws SyntaxError on an unexpected character.
std::vector<Token> tokenize(std::string_view src);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Integer,    // integer
    KLiteral,   // [twist], times integer (default 1)
    Generator,  // name
    Neg,
    Add,
    Sub,
    Mul,
    Pow,        // args[0] ^ integer
    Chern,      // c(degree, args[0])
    Character,  // ch
    ToddInverse,
    PushS,
    PushP,
    PullS,
    Thom,
    PolyEval,  // P(d, degree)(args[0]; c_args; cp_args)
  };
  Kind kind = Kind::Integer;
  mpz_class integer = 0;
  Twist twist;
  std::string name;
  int d = 0;
  int degree = 0;
  std::vector<ExprPtr> args;
  std::vector<ExprPtr> c_args;
  std::vector<ExprPtr> cp_args;
  int line = 1;
  int column = 1;
};

// Throws SyntaxError or ArityMismatch with the offending position.
ExprPtr parse_class_expr(std::string_view src);
// Canonical text; parse(print(e)) prints identically.
std::string print(const Expr& e);
// Tree form, e.g. "ChernOf(2, ZeroSectionPush(KLit([O])))".
std::string dump(const Expr& e);

// Throws UnknownModel or SyntaxError.
TowerSpec parse_model_spec(std::string_view src);
// A sum of integer multiples of [twist] literals.
KClass parse_kclass(std::string_view src);

struct Value {
  enum class Kind { Integer, K, Chow, RationalChow };
  Kind kind = Kind::Integer;
  mpz_class integer = 0;
  KClass k;
  ZPoly chow;
  QPoly rational;

  std::string kind_name() const;  // "integer", "k-class", "chow", "chow-q"
  std::string to_string() const;
};

// Throws ModelError for operations the model or the operand kinds do not
// support.
Value evaluate_expr(const Expr& e, const SpaceModel& model, PolynomialStore& store);

}  // namespace jouanolou
