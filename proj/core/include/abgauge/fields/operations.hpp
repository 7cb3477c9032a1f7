#pragma once

#include <span>
#include <vector>

#include "abgauge/fields/differentiation.hpp"
#include "abgauge/fields/grid.hpp"
#include "abgauge/fields/potentials.hpp"

namespace abgauge {

// alpha (-x2, x1)/|x|^2
Vec3 eval_ab_potential(double alpha, const Vec3& x);

// A0 = alpha (-x2, x1)/|x|^2 + grad a0(theta)
struct TransversalDecomposition {
  double alpha = 0.0;
  AngularFunction a0;
};

TransversalDecomposition decompose_transversal(const TransversalField& A0,
                                               double tol = defaults::kTransversalityTol);
Vec3 reassemble(const TransversalDecomposition& d, const Vec3& x);

// (1/2pi) times the circulation of A0 + A1 around |x| = R_circle.
double flux(const PotentialConfig& A, double R_circle, int nodes = 2048);

// B = dA on the annulus cells (NaN outside); n = 2.
GridScalarField curl(const PotentialConfig& A, const AnnulusRegion& region, const FdOptions& opts = {});
GridScalarField curl(const VectorFn& A, double obstacle_radius, const AnnulusRegion& region,
                     const FdOptions& opts = {});
// Two-form samples at arbitrary exterior points; n = 3.
std::vector<TwoForm> curl(const VectorFn& A, double obstacle_radius, std::span<const Vec3> points,
                          const FdOptions& opts = {});

// Limit of |x|^2 B(x) along the rays through the grid nodes, by polynomial
// extrapolation in 1/|x| from samples[k][node] taken at |x| = radii[k].
SphereFunction extract_leading_order(std::shared_ptr<const SphereGrid> grid, std::span<const double> radii,
                                     const std::vector<std::vector<double>>& samples,
                                     double tol = defaults::kExtrapolationTol);
SphereFunction extract_leading_order(const ScalarFn& B, std::shared_ptr<const SphereGrid> grid,
                                     std::span<const double> radii, double tol = defaults::kExtrapolationTol);

// A' = A + grad(m theta + phi + L) (n = 2) or A + grad(psi + L) (n = 3).
PotentialConfig apply_gauge_to_potential(const PotentialConfig& A, const GaugeElement& g);

}  // namespace abgauge
