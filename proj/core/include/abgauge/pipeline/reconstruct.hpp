#pragma once

#include "abgauge/pipeline/report.hpp"
#include "abgauge/pipeline/scenario.hpp"
#include "abgauge/tomography/radon.hpp"

namespace abgauge {

// alpha from vector-transform data: the mean over angles of
// I(theta, p) - I(theta, -p) at the outermost measured offset, divided by 2 pi.
struct FluxEstimate {
  double alpha = 0.0;
  double spread = 0.0;  // max - min of the per-angle estimates
  double offset = 0.0;
};

FluxEstimate estimate_flux(const Sinogram& vector_transform);

// Vector transform of a spatial configuration along the in-plane lines of
// x3 = c with the planar geometry (offsets measured within the plane).
Sinogram forward_project_plane(const PotentialConfig& config, double c, const ParallelGeometry& geometry,
                               const LineIntegralOptions& opts = sinogram_options());

// Forward projection, flux extraction, scalar inversion and field recovery
// for each configuration, with errors against the known truth.
Report run_reconstruct(const Scenario& scenario);

}  // namespace abgauge
