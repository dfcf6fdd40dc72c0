#include "eigbound/error.hpp"

namespace eigbound {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDims: return "InvalidDims";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::CountExceedsOrder: return "CountExceedsOrder";
    case ErrorCode::RankZero: return "RankZero";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::NonpositiveEigenvalue: return "NonpositiveEigenvalue";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::NoInteriorDofs: return "NoInteriorDofs";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::DepthTooSmall: return "DepthTooSmall";
    case ErrorCode::AlphaNonpositive: return "AlphaNonpositive";
  }
  return "Unknown";
}

}  // namespace eigbound
