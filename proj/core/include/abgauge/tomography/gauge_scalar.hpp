#pragma once

#include <cstdint>

#include "abgauge/fields/operations.hpp"
#include "abgauge/tomography/xray.hpp"

namespace abgauge {

struct GaugeScalarOptions {
  double curl_tol = defaults::kCurlTol;
  double loop_tol = defaults::kLoopTol;
  double path_tol = defaults::kPathTol;
  int path_checks = 100;
  std::uint64_t seed = 20240611;
  double tail_tol = defaults::kTailTol;
  FdOptions fd{};
};

// L1(x) = integral of Adiff from the anchor r_inner e1, radially and then
// along the sphere of radius |x|, shifted so that L1 -> 0 at infinity.
class GaugeScalar {
 public:
  double operator()(const Vec3& x) const;

  int dimension() const noexcept { return dimension_; }
  double r_inner() const noexcept { return r_inner_; }
  // Value at the anchor (minus the integral of A_r from r_inner to infinity).
  double anchor_value() const noexcept { return anchor_value_; }
  double max_curl() const noexcept { return max_curl_; }
  double loop_integral() const noexcept { return loop_; }
  double max_path_defect() const noexcept { return path_defect_; }

  // Samples on the annulus cells of a planar grid, integrated to rel_tol.
  GridScalarField sample(const AnnulusRegion& region, double rel_tol = 1e-8) const;
  ScalarPotential as_potential() const;

 private:
  friend GaugeScalar find_gauge_scalar(const ShortRangeField&, double, double, const GaugeScalarOptions&);

  double radial(const Vec3& direction, double r0, double r1) const;
  double arc(double r, const Vec3& from, const Vec3& to) const;

  ShortRangeField field_;
  int dimension_ = 2;
  double r_inner_ = 1.0;
  double anchor_value_ = 0.0;
  double max_curl_ = 0.0;
  double loop_ = 0.0;
  double path_defect_ = 0.0;
  double rel_tol_ = 1e-10;
};

// Scalar L1 with grad L1 = Adiff on |x| >= r_inner. Fails with NotCurlFree
// when the curl exceeds curl_tol on the shell r_inner <= |x| <= r_outer (or
// the path-independence check fails) and, in the plane, ResidualFlux when the
// circulation around |x| = r_inner exceeds loop_tol.
GaugeScalar find_gauge_scalar(const ShortRangeField& Adiff, double r_inner, double r_outer,
                              const GaugeScalarOptions& opts = {});

}  // namespace abgauge
