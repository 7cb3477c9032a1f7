#pragma once

#include "abgauge/vec.hpp"

namespace abgauge {

// Oriented line {x0 + s omega} with x0 . omega = 0.
class Line {
 public:
  // x0 is projected onto the orthogonal complement of omega when it is
  // orthogonal up to roundoff; larger violations are rejected.
  static Line make(const Vec3& x0, const Vec3& omega, int dimension);
  // Planar line with direction (cos theta, sin theta) and x0 = p (sin theta, -cos theta),
  // so that x0 x omega = p.
  static Line from_angle_offset(double theta, double p);
  // Line through `point` with direction omega.
  static Line through(const Vec3& point, const Vec3& omega, int dimension);

  const Vec3& x0() const noexcept { return x0_; }
  const Vec3& omega() const noexcept { return omega_; }
  int dimension() const noexcept { return dimension_; }
  double distance_to_origin() const { return norm(x0_); }
  Vec3 at(double s) const { return x0_ + s * omega_; }
  // Signed planar offset x0 x omega; positive when the origin lies to the left.
  double orientation() const { return cross2(x0_, omega_); }
  Line reversed() const { return Line(x0_, -omega_, dimension_); }

 private:
  Line(const Vec3& x0, const Vec3& omega, int dimension) : x0_(x0), omega_(omega), dimension_(dimension) {}

  Vec3 x0_;
  Vec3 omega_;
  int dimension_;
};

// Affine plane {p + u e1 + v e2} in R^3 with orthonormal (e1, e2).
class Plane {
 public:
  static Plane make(const Vec3& base, const Vec3& e1, const Vec3& e2);
  // Plane {x . n = offset} with an orthonormal frame built from n.
  static Plane from_normal(const Vec3& normal, double offset);

  const Vec3& base() const noexcept { return base_; }
  const Vec3& e1() const noexcept { return e1_; }
  const Vec3& e2() const noexcept { return e2_; }
  Vec3 normal() const { return cross(e1_, e2_); }
  double distance_to_origin() const { return std::abs(dot(base_, normal())); }
  // Foot of the perpendicular from the origin.
  Vec3 centre() const { return normal() * dot(base_, normal()); }
  Vec3 point(double u, double v) const { return base_ + u * e1_ + v * e2_; }

 private:
  Plane(const Vec3& b, const Vec3& e1, const Vec3& e2) : base_(b), e1_(e1), e2_(e2) {}

  Vec3 base_;
  Vec3 e1_;
  Vec3 e2_;
};

}  // namespace abgauge
