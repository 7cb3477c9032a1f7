#pragma once

#include <string>
#include <vector>

#include "abgauge/fields/grid.hpp"
#include "abgauge/tomography/xray.hpp"

namespace abgauge {

// Dense angle x offset table; unmeasured cells hold zero.
struct Sinogram {
  ParallelGeometry geometry;
  std::vector<double> values;

  Sinogram() = default;
  explicit Sinogram(const ParallelGeometry& g)
      : geometry(g), values(static_cast<std::size_t>(g.angles) * g.offsets, 0.0) {}

  double& at(int i, int j) { return values[static_cast<std::size_t>(i) * geometry.offsets + j]; }
  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * geometry.offsets + j]; }

  // Dense matrix, one row per angle.
  void write_csv(const std::string& path) const;
  // One row per (angle, offset) cell: angle,offset,measured,value.
  void write_long_csv(const std::string& path) const;

  XRayData to_xray(XRayKind kind, const std::string& component) const;
  // Places real data on the geometry carried by (or inferred from) the lines.
  static Sinogram from_xray(const XRayData& data);
};

inline LineIntegralOptions sinogram_options() { return {defaults::kTailTol, defaults::kSinogramRelTol}; }

Sinogram forward_project_scalar(const PotentialConfig& config, const ParallelGeometry& geometry,
                                const LineIntegralOptions& opts = sinogram_options());
Sinogram forward_project_vector(const PotentialConfig& config, const ParallelGeometry& geometry,
                                const LineIntegralOptions& opts = sinogram_options());

struct ReconstructionOptions {
  int grid_size = 0;                // pixels per side; 0 picks offsets / 2
  int completion_iterations = 10;   // re-projection passes filling |p| <= rmin
  bool hann = true;
};

// Reconstruction grid covering [-rmax, rmax]^2 for the given options.
Grid2D reconstruction_grid(const ParallelGeometry& geometry, const ReconstructionOptions& opts = {});

// Filtered backprojection (Ram-Lak with Hann window) with iterative completion
// of the unmeasured central offsets under the support constraint
// rmin < |x| < rmax. Cells outside that annulus are NaN.
GridScalarField radon_invert_scalar(const Sinogram& data, const ReconstructionOptions& opts = {});
GridScalarField radon_invert_scalar(const XRayData& data, const ReconstructionOptions& opts = {});

// d/dp of the vector transform, one-sided next to the gap and at the ends.
Sinogram offset_derivative(const Sinogram& vector_transform);

// B = dA from vector-transform data: the offset derivative is the Radon
// transform of B, inverted as above.
GridScalarField recover_field_2d(const Sinogram& vector_transform, const ReconstructionOptions& opts = {});
GridScalarField recover_field_2d(const XRayData& data, const ReconstructionOptions& opts = {});

// Plain filtered backprojection of a full sinogram onto a grid (no masking).
GridScalarField filtered_backprojection(const Sinogram& data, const Grid2D& grid, bool hann = true);

// f sampled at the cells of the reconstruction annulus (NaN elsewhere).
GridScalarField sample_on_annulus(const ScalarFn& f, const Grid2D& grid, double r_inner, double r_outer);

}  // namespace abgauge
