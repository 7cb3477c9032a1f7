#include "abgauge/error.hpp"

namespace abgauge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonzeroMean: return "NonzeroMean";
    case ErrorCode::OriginSingularity: return "OriginSingularity";
    case ErrorCode::NotTransversal: return "NotTransversal";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CircleInsideObstacle: return "CircleInsideObstacle";
    case ErrorCode::RegionTouchesObstacle: return "RegionTouchesObstacle";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::EnvelopeViolated: return "EnvelopeViolated";
    case ErrorCode::LineHitsObstacle: return "LineHitsObstacle";
    case ErrorCode::TailNotBounded: return "TailNotBounded";
    case ErrorCode::BranchAmbiguous: return "BranchAmbiguous";
    case ErrorCode::InsufficientCoverage: return "InsufficientCoverage";
    case ErrorCode::NotCurlFree: return "NotCurlFree";
    case ErrorCode::ResidualFlux: return "ResidualFlux";
    case ErrorCode::PlaneHitsObstacle: return "PlaneHitsObstacle";
    case ErrorCode::RemainderBoundViolated: return "RemainderBoundViolated";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::SingularPartMissing: return "SingularPartMissing";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace abgauge
