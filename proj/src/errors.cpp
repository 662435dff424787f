#include "scare/errors.hpp"

namespace scare {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::SingularWeight: return "SingularWeight";
    case ErrorCode::SingularPivot: return "SingularPivot";
    case ErrorCode::SingularShift: return "SingularShift";
    case ErrorCode::SingularInnerSystem: return "SingularInnerSystem";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::NotHurwitz: return "NotHurwitz";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::InnerStalled: return "InnerStalled";
    case ErrorCode::LossOfPsd: return "LossOfPsd";
    case ErrorCode::NoPsdRoot: return "NoPsdRoot";
    case ErrorCode::OracleSizeCap: return "OracleSizeCap";
    case ErrorCode::UnknownBenchmark: return "UnknownBenchmark";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace scare
