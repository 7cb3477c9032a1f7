#include "abgauge/tomography/geometry.hpp"

#include <cmath>
#include <string>

#include "abgauge/error.hpp"

namespace abgauge {

Line Line::make(const Vec3& x0, const Vec3& omega, int dimension) {
  if (dimension != 2 && dimension != 3) fail(ErrorCode::DimensionMismatch, "lines live in dimension 2 or 3");
  if (dimension == 2 && (x0.z != 0.0 || omega.z != 0.0))
    fail(ErrorCode::DimensionMismatch, "planar line with a third component");
  const double len = norm(omega);
  if (std::abs(len - 1.0) > 1e-10) fail(ErrorCode::InvalidArgument, "line direction must be a unit vector");
  const Vec3 w = omega / len;
  const double along = dot(x0, w);
  if (std::abs(along) > 1e-9 * std::max(1.0, norm(x0)))
    fail(ErrorCode::InvalidArgument, "impact vector must be orthogonal to the direction");
  return Line(x0 - along * w, w, dimension);
}

Line Line::from_angle_offset(double theta, double p) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Line(Vec3(p * s, -p * c), Vec3(c, s), 2);
}

Line Line::through(const Vec3& point, const Vec3& omega, int dimension) {
  const Vec3 w = normalized(omega);
  return make(point - dot(point, w) * w, w, dimension);
}

Plane Plane::make(const Vec3& base, const Vec3& e1, const Vec3& e2) {
  if (std::abs(norm(e1) - 1.0) > 1e-12 || std::abs(norm(e2) - 1.0) > 1e-12 || std::abs(dot(e1, e2)) > 1e-12)
    fail(ErrorCode::InvalidArgument, "plane tangents must be orthonormal");
  return Plane(base, e1, e2);
}

Plane Plane::from_normal(const Vec3& normal, double offset) {
  const Vec3 n = normalized(normal);
  const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  const Vec3 e1 = normalized(helper - dot(helper, n) * n);
  const Vec3 e2 = cross(n, e1);
  return Plane(offset * n, e1, e2);
}

}  // namespace abgauge
