#include "abgauge/tomography/winding.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace abgauge {

int resolve_winding(std::span<const PhaseSample> family) {
  if (family.empty()) fail(ErrorCode::InvalidArgument, "empty phase family");
  std::vector<PhaseSample> s(family.begin(), family.end());
  std::stable_sort(s.begin(), s.end(),
                   [](const PhaseSample& a, const PhaseSample& b) { return std::abs(a.offset) < std::abs(b.offset); });
  double unwrapped = s.front().phase;
  for (std::size_t k = 1; k < s.size(); ++k) {
    const double step = std::remainder(s[k].phase - s[k - 1].phase, kTwoPi);
    if (std::abs(step) >= kPi * (1.0 - 1e-12))
      fail(ErrorCode::BranchAmbiguous, "phase jumps by pi or more between |x0| = " +
                                           std::to_string(std::abs(s[k - 1].offset)) + " and " +
                                           std::to_string(std::abs(s[k].offset)));
    unwrapped += step;
  }
  const double q = unwrapped / kTwoPi;
  const double frac = q - std::floor(q);
  if (std::abs(frac - 0.5) < 1e-9) fail(ErrorCode::BranchAmbiguous, "limit phase is a half-integer multiple of 2 pi");
  return static_cast<int>(std::lround(q));
}

int resolve_winding(const XRayData& data) {
  if (data.kind != XRayKind::Exponentiated)
    fail(ErrorCode::InvalidArgument, "winding resolution needs exponentiated (unimodular) data");
  data.validate();
  if (data.lines.empty()) fail(ErrorCode::InvalidArgument, "empty phase family");
  const Vec3 w = data.lines.front().omega();
  std::vector<PhaseSample> family;
  family.reserve(data.lines.size());
  for (std::size_t i = 0; i < data.lines.size(); ++i) {
    if (norm(data.lines[i].omega() - w) > 1e-9) fail(ErrorCode::InvalidArgument, "lines of a family must be parallel");
    family.push_back({data.lines[i].distance_to_origin(), std::arg(data.values[i])});
  }
  return resolve_winding(family);
}

}  // namespace abgauge
