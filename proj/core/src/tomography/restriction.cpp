#include "abgauge/tomography/restriction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abgauge/parallel.hpp"

namespace abgauge {

Vec3 PlaneField::point(int i, int j) const {
  const double h = 2.0 * half_width / n;
  const double u = -half_width + (i + 0.5) * h;
  const double v = -half_width + (j + 0.5) * h;
  return plane.centre() + u * plane.e1() + v * plane.e2();
}

double PlaneField::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

PlaneField plane_restrict(const TwoFormFn& B, const Plane& plane, double obstacle_radius, double half_width, int n) {
  if (!(plane.distance_to_origin() > obstacle_radius))
    fail(ErrorCode::PlaneHitsObstacle, "plane at distance " + std::to_string(plane.distance_to_origin()) +
                                           " meets the obstacle");
  if (n < 1 || !(half_width > 0.0)) fail(ErrorCode::InvalidArgument, "plane grid needs n >= 1 and a positive width");
  PlaneField out;
  out.plane = plane;
  out.half_width = half_width;
  out.n = n;
  out.values.assign(static_cast<std::size_t>(n) * n, 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i < n; ++i) out.values[static_cast<std::size_t>(j) * n + i] = B(out.point(i, j))(plane.e1(), plane.e2());
  });
  return out;
}

PlaneField plane_restrict(const VectorFn& A, const Plane& plane, double obstacle_radius, double half_width, int n,
                          const FdOptions& opts) {
  return plane_restrict([&](const Vec3& x) { return fd_curl3(A, x, opts); }, plane, obstacle_radius, half_width, n);
}

AntipodalDefect antipodal_defect(const SphereFunction& phi, double tol) {
  const auto& grid = phi.grid();
  const auto w = grid.weights();
  AntipodalDefect d;
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double diff = phi.value(i) - phi.value(grid.antipode(i));
    if (std::abs(diff) > d.max_defect) {
      d.max_defect = std::abs(diff);
      d.worst_node = i;
    }
    weighted += w[i] * diff;
    total += w[i];
  }
  d.fitted_constant = weighted / total;
  d.constant_vanishes = std::abs(d.fitted_constant) <= tol;
  return d;
}

}  // namespace abgauge
