#pragma once

#include <functional>
#include <vector>

#include "abgauge/angular/sphere.hpp"
#include "abgauge/fields/differentiation.hpp"
#include "abgauge/tomography/geometry.hpp"

namespace abgauge {

// Samples on the square [-half_width, half_width]^2 of plane coordinates
// (u, v), centred at the foot of the perpendicular from the origin.
struct PlaneField {
  Plane plane = Plane::from_normal({0, 0, 1}, 0.0);
  double half_width = 1.0;
  int n = 1;
  std::vector<double> values;

  Vec3 point(int i, int j) const;
  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * n + i]; }
  double max_abs() const;
};

using TwoFormFn = std::function<TwoForm(const Vec3&)>;

// B(e1, e2) on the plane grid. PlaneHitsObstacle when the plane comes within
// obstacle_radius of the origin.
PlaneField plane_restrict(const TwoFormFn& B, const Plane& plane, double obstacle_radius, double half_width, int n);
// Same with B = dA by finite differences.
PlaneField plane_restrict(const VectorFn& A, const Plane& plane, double obstacle_radius, double half_width, int n,
                          const FdOptions& opts = {});

struct AntipodalDefect {
  double max_defect = 0.0;        // max over nodes of |phi(w) - phi(-w)|
  double fitted_constant = 0.0;   // area-weighted mean of phi(w) - phi(-w)
  std::size_t worst_node = 0;
  bool constant_vanishes = true;  // |fitted_constant| <= tol
};

AntipodalDefect antipodal_defect(const SphereFunction& phi, double tol = 1e-9);

}  // namespace abgauge
