#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace totrep {

enum class ErrorCode {
  InvalidArgument,
  FactorBoundExceeded,
  NotPrime,
  NotASquare,
  ParityViolation,
  SearchExhausted,
  GcdViolation,
  SieveBudgetExceeded,
  NotApplicable,
  PeriodBudgetExceeded,
  ModulusTooLarge,
  InvariantBroken,
  UnsupportedQuadruple,
  ConstructionFailed,
  NoSuchK,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library surfaces as an Error carrying a code; the C
// layer maps codes onto totrep_status values one to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace totrep
