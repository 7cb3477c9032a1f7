#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "abgauge/tolerances.hpp"
#include "abgauge/vec.hpp"

namespace abgauge {

// One Fourier coefficient in the (k, re, im) triple form used on disk.
struct FourierTriple {
  int k = 0;
  double re = 0.0;
  double im = 0.0;
};

// Real-valued smooth 2*pi-periodic function stored as a truncated Fourier
// series f(theta) = sum_{|k|<=N} c_k e^{i k theta} with c_{-k} = conj(c_k).
// Values are immutable after construction.
class AngularFunction {
 public:
  using Complex = std::complex<double>;

  // Identically zero function of the given truncation order.
  explicit AngularFunction(int order = defaults::kFourierOrder);

  static AngularFunction constant(double value, int order = defaults::kFourierOrder);

  // f = a0 + sum_k cos_coeffs[k-1] cos(k theta) + sin_coeffs[k-1] sin(k theta).
  static AngularFunction trig(double a0, std::span<const double> cos_coeffs,
                              std::span<const double> sin_coeffs,
                              int order = defaults::kFourierOrder);

  // Any subset of coefficients; the partner c_{-k} is filled by conjugation.
  // A pair given inconsistently is rejected, as is an imaginary c_0.
  static AngularFunction from_triples(std::span<const FourierTriple> triples,
                                      int order = defaults::kFourierOrder);

  // Discrete Fourier analysis of samples f(2*pi*j/M), j < M. Recovers every
  // trigonometric polynomial of degree <= order exactly when M >= 2*order+1.
  static AngularFunction from_samples(std::span<const double> samples,
                                      int order = defaults::kFourierOrder);

  // Samples f on 2*order+1 equispaced nodes and analyses them.
  static AngularFunction sample(const std::function<double(double)>& f,
                                int order = defaults::kFourierOrder);

  int order() const noexcept { return order_; }
  Complex coefficient(int k) const noexcept;
  double mean() const noexcept { return coeffs_[order_].real(); }
  double max_coefficient_magnitude() const noexcept;

  double operator()(double theta) const;
  // Full complex sum; its imaginary part measures realness defects.
  Complex eval_complex(double theta) const;

  AngularFunction derivative() const;
  // g(theta) = f(theta + delta)
  AngularFunction shifted(double delta) const;
  AngularFunction resized(int order) const;
  AngularFunction without_mean() const;

  // Triples for k = -N..N.
  std::vector<FourierTriple> triples() const;
  // Triples with k >= 0 and nonzero coefficient.
  std::vector<FourierTriple> nonnegative_triples() const;

  // max_k |c_k - d_k| over the union of supports.
  double coefficient_distance(const AngularFunction& other) const;

  AngularFunction operator-() const;
  friend AngularFunction operator+(const AngularFunction& a, const AngularFunction& b);
  friend AngularFunction operator-(const AngularFunction& a, const AngularFunction& b);
  friend AngularFunction operator*(double s, const AngularFunction& f);
  friend AngularFunction operator+(const AngularFunction& f, double c);

 private:
  AngularFunction(int order, std::vector<Complex> coeffs);

  int order_;
  std::vector<Complex> coeffs_;  // index k + order_
};

// Angle of a planar point in [0, 2*pi) measured from the x1 axis.
double polar_angle(const Vec3& x);

double eval(const AngularFunction& f, double theta);

// g with g' = f and zero mean. Throws NonzeroMean when |c_0| >= tol_mean
// relative to the largest coefficient (at least 1): the caller has not
// removed the flux.
AngularFunction zero_mean_antiderivative(const AngularFunction& f,
                                         double tol_mean = defaults::kMeanTol);

// f(omega) - f(-omega) for a planar unit vector omega.
double antipodal_difference(const AngularFunction& f, const Vec3& omega);

}  // namespace abgauge
