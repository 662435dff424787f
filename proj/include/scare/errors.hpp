#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scare {

enum class ErrorCode {
  DimensionMismatch,
  InvalidProblem,
  SingularWeight,
  SingularPivot,
  SingularShift,
  SingularInnerSystem,
  SingularOperator,
  NotHurwitz,
  NotConverged,
  InnerStalled,
  LossOfPsd,
  NoPsdRoot,
  OracleSizeCap,
  UnknownBenchmark,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class ScareError : public std::runtime_error {
 public:
  ScareError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace scare
