#pragma once

#include <span>

#include "abgauge/tomography/xray.hpp"

namespace abgauge {

// Recorded phase of the exponentiated transform difference on one line of a
// parallel family, labelled by the line's distance to the origin.
struct PhaseSample {
  double offset = 0.0;
  double phase = 0.0;
};

// Integer m such that the continued phase tends to 2 pi m as |x0| grows.
// Samples are ordered by |offset|, continued by the nearest branch from the
// innermost one, and the outermost value is rounded to a multiple of 2 pi.
// BranchAmbiguous when a wrapped step reaches pi or the limit sits at a
// half-integer multiple of 2 pi.
int resolve_winding(std::span<const PhaseSample> family);

// Unimodular values on parallel lines; the innermost line is anchored at its
// principal argument.
int resolve_winding(const XRayData& data);

}  // namespace abgauge
