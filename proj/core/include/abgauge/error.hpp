#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abgauge {

enum class ErrorCode {
  InvalidArgument,
  NonzeroMean,
  OriginSingularity,
  NotTransversal,
  DimensionMismatch,
  CircleInsideObstacle,
  RegionTouchesObstacle,
  NonConvergent,
  EnvelopeViolated,
  LineHitsObstacle,
  TailNotBounded,
  BranchAmbiguous,
  InsufficientCoverage,
  NotCurlFree,
  ResidualFlux,
  PlaneHitsObstacle,
  RemainderBoundViolated,
  GridMismatch,
  SingularPartMissing,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported through this type; `code()` identifies
// the condition so callers can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace abgauge
