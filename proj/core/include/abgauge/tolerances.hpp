#pragma once

// Default numerical tolerances shared by every module. Option structs
// throughout the library initialise from these so that a scenario file can
// override them in one place.
namespace abgauge::defaults {

inline constexpr int kFourierOrder = 64;
inline constexpr double kMeanTol = 1e-10;        // zero-mean test, relative to max |c_k|
inline constexpr double kTailTol = 1e-9;         // line-integral truncation
inline constexpr double kQuadratureRelTol = 1e-13;
inline constexpr double kSinogramRelTol = 1e-10;     // forward projection for tomography
inline constexpr double kCurlTol = 1e-6;
inline constexpr double kLoopTol = 1e-8;
inline constexpr double kPathTol = 1e-8;
inline constexpr double kPhaseFitTol = 1e-6;
inline constexpr double kKernelMatchTol = 1e-8;
inline constexpr double kTransversalMatchTol = 1e-9;
inline constexpr double kScalarMatchTol = 1e-8;
inline constexpr double kFdRelativeStep = 1e-3;
inline constexpr int kFdOrder = 4;
inline constexpr int kDiagMarginCells = 5;
inline constexpr double kTransversalityTol = 1e-10;
inline constexpr double kExtrapolationTol = 1e-5;
inline constexpr double kIntegerFluxTol = 1e-9;

}  // namespace abgauge::defaults
