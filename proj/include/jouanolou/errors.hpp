#pragma once

#include <stdexcept>
#include <string>

namespace jouanolou {

// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define JOUANOLOU_DECLARE_ERROR(Name)  \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

// exactpoly
JOUANOLOU_DECLARE_ERROR(MixedVariableTables);
JOUANOLOU_DECLARE_ERROR(NonzeroConstantTerm);
JOUANOLOU_DECLARE_ERROR(DivisionRemainderNonzero);
JOUANOLOU_DECLARE_ERROR(NonIntegralCoefficient);

// chernroots
JOUANOLOU_DECLARE_ERROR(NegativeSignInput);
JOUANOLOU_DECLARE_ERROR(RankGuardExceeded);
JOUANOLOU_DECLARE_ERROR(NonIntegralResult);

// jouanolou
JOUANOLOU_DECLARE_ERROR(TruncationExceeded);
JOUANOLOU_DECLARE_ERROR(NonSymmetricInput);
JOUANOLOU_DECLARE_ERROR(RankSamplesInsufficient);
JOUANOLOU_DECLARE_ERROR(StabilizationFailure);
JOUANOLOU_DECLARE_ERROR(NonIntegralEvaluation);
JOUANOLOU_DECLARE_ERROR(CacheError);

// chowmodel / kmodel
JOUANOLOU_DECLARE_ERROR(TowerTooLarge);
JOUANOLOU_DECLARE_ERROR(ModelError);
// A supported class whose Thom coordinate and ambient value disagree.
JOUANOLOU_DECLARE_ERROR(IdentityViolation);

// verifier
JOUANOLOU_DECLARE_ERROR(CheckFailed);

#undef JOUANOLOU_DECLARE_ERROR

// Parse errors carry a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class SyntaxError : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownModel : public ParseError {
 public:
  using ParseError::ParseError;
};

class ArityMismatch : public ParseError {
 public:
  using ParseError::ParseError;
};

}  // namespace jouanolou
