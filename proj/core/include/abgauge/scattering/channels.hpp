#pragma once

#include <complex>
#include <span>
#include <vector>

namespace abgauge {

// Eigenvalues k -> 2 pi c_k of a convolution kernel on the circle, |k| <= N.
class ChannelSpectrum {
 public:
  using Complex = std::complex<double>;

  ChannelSpectrum() = default;
  ChannelSpectrum(int cutoff, std::vector<Complex> values);

  int cutoff() const noexcept { return cutoff_; }
  Complex operator[](int k) const { return values_[static_cast<std::size_t>(k + cutoff_)]; }
  const std::vector<Complex>& values() const noexcept { return values_; }

  // max_k | |lambda_k| - 1 |
  double unimodularity_defect() const;
  // max over common k of |lambda_k - mu_k|
  double distance(const ChannelSpectrum& other) const;
  // k -> sign * lambda_{k - shift} on the channels where that is defined.
  ChannelSpectrum shifted(int shift, double sign = 1.0) const;

 private:
  int cutoff_ = 0;
  std::vector<Complex> values_;
};

// sin(pi x) and cos(pi x), exact at integers and half-integers.
double sin_pi(double x);
double cos_pi(double x);

// floor(alpha), the integer part entering the principal-value kernel.
int integer_part(double alpha);

// Channels of cos(alpha pi) delta(t) + i sin(alpha pi)/pi p.v. e^{i[alpha]t}/(1 - e^{it}):
// e^{i alpha pi} for k >= [alpha] and e^{-i alpha pi} for k < [alpha].
ChannelSpectrum ab_kernel_channels(double alpha, int cutoff);

// Symmetric-exclusion integral over eps < |t| <= pi of e^{ijt}/(1 - e^{it}).
std::complex<double> pv_channel_integral(int j, double eps);
// Limit eps -> 0 by Richardson extrapolation in odd powers of eps.
std::complex<double> pv_channel_integral_extrapolated(int j, std::span<const double> radii);

// Same channels computed from the p.v. quadrature at exclusion radii
// {1e-2, 1e-3, 1e-4}.
ChannelSpectrum ab_kernel_channels_quadrature(double alpha, int cutoff);

}  // namespace abgauge
