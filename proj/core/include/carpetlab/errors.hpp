#pragma once

#include <stdexcept>
#include <string>

namespace carpetlab {

enum class Errc {
  ParseError,
  GridViolation,
  DuplicateDigit,
  EmptyDigitSet,
  BadShape,
  BudgetExceeded,
  ClassViolation,
  ZeroValuation,
  NotPrime,
  AlphaOutOfRange,
  RegularDegenerate,
  ShapeMismatch,
};

/// All library failures are thrown as Error; code() selects the category
/// (the CLI maps BudgetExceeded to exit 2, everything else to exit 1).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  static const char* name(Errc c) {
    switch (c) {
      case Errc::ParseError: return "ParseError";
      case Errc::GridViolation: return "GridViolation";
      case Errc::DuplicateDigit: return "DuplicateDigit";
      case Errc::EmptyDigitSet: return "EmptyDigitSet";
      case Errc::BadShape: return "BadShape";
      case Errc::BudgetExceeded: return "BudgetExceeded";
      case Errc::ClassViolation: return "ClassViolation";
      case Errc::ZeroValuation: return "ZeroValuation";
      case Errc::NotPrime: return "NotPrime";
      case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
      case Errc::RegularDegenerate: return "RegularDegenerate";
      case Errc::ShapeMismatch: return "ShapeMismatch";
    }
    return "Error";
  }

 private:
  Errc code_;
};

}  // namespace carpetlab
