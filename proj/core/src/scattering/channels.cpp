#include "abgauge/scattering/channels.hpp"

#include <algorithm>
#include <cmath>

#include "abgauge/error.hpp"
#include "abgauge/parallel.hpp"
#include "abgauge/quadrature.hpp"
#include "abgauge/vec.hpp"

namespace abgauge {

ChannelSpectrum::ChannelSpectrum(int cutoff, std::vector<Complex> values) : cutoff_(cutoff), values_(std::move(values)) {
  if (cutoff < 0 || values_.size() != static_cast<std::size_t>(2 * cutoff + 1))
    fail(ErrorCode::InvalidArgument, "channel spectrum needs 2N+1 values");
}

double ChannelSpectrum::unimodularity_defect() const {
  double d = 0.0;
  for (const auto& v : values_) d = std::max(d, std::abs(std::abs(v) - 1.0));
  return d;
}

double ChannelSpectrum::distance(const ChannelSpectrum& other) const {
  const int n = std::min(cutoff_, other.cutoff_);
  double d = 0.0;
  for (int k = -n; k <= n; ++k) d = std::max(d, std::abs((*this)[k] - other[k]));
  return d;
}

ChannelSpectrum ChannelSpectrum::shifted(int shift, double sign) const {
  const int n = cutoff_ - std::abs(shift);
  if (n < 0) fail(ErrorCode::InvalidArgument, "shift exceeds the channel cutoff");
  std::vector<Complex> v;
  for (int k = -n; k <= n; ++k) v.push_back(sign * (*this)[k - shift]);
  return ChannelSpectrum(n, std::move(v));
}

double sin_pi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
  if (r == 0.0 || std::abs(r) == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(kPi * r);
}

double cos_pi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);
  if (r == 0.0) return 1.0;
  if (std::abs(r) == 1.0) return -1.0;
  if (std::abs(r) == 0.5) return 0.0;
  return std::cos(kPi * r);
}

int integer_part(double alpha) { return static_cast<int>(std::floor(alpha)); }

ChannelSpectrum ab_kernel_channels(double alpha, int cutoff) {
  if (cutoff < 1) fail(ErrorCode::InvalidArgument, "channel cutoff must be at least 1");
  const int a = integer_part(alpha);
  const std::complex<double> up(cos_pi(alpha), sin_pi(alpha));
  const std::complex<double> down = std::conj(up);
  std::vector<std::complex<double>> v;
  v.reserve(2 * cutoff + 1);
  for (int k = -cutoff; k <= cutoff; ++k) v.push_back(k >= a ? up : down);
  return ChannelSpectrum(cutoff, std::move(v));
}

std::complex<double> pv_channel_integral(int j, double eps) {
  if (!(eps > 0.0) || eps >= kPi) fail(ErrorCode::InvalidArgument, "exclusion radius must lie in (0, pi)");
  // 1/(1 - e^{it}) = 1/2 + (i/2) cot(t/2). Over the symmetric set the odd
  // (imaginary) part cancels and the even part is cos(jt) - sin(jt) cot(t/2).
  quad::Options q;
  q.rel_tol = 1e-12;
  q.max_depth = 12;
  auto g = [j](double t) { return std::cos(j * t) - std::sin(j * t) / std::tan(0.5 * t); };
  double total = 0.0;
  // Split at the zeros of sin so the adaptive rule sees single oscillations.
  const int pieces = std::max(1, std::abs(j));
  double lo = eps;
  for (int p = 1; p <= pieces; ++p) {
    const double hi = kPi * p / pieces;
    if (hi <= lo) continue;
    total += quad::integrate(g, lo, hi, q);
    lo = hi;
  }
  return {total, 0.0};
}

std::complex<double> pv_channel_integral_extrapolated(int j, std::span<const double> radii) {
  if (radii.size() != 3) fail(ErrorCode::InvalidArgument, "extrapolation uses three exclusion radii");
  // I(eps) = I0 + a1 eps + a3 eps^3: solve the 3x3 system for I0.
  const double e0 = radii[0], e1 = radii[1], e2 = radii[2];
  const std::complex<double> f0 = pv_channel_integral(j, e0);
  const std::complex<double> f1 = pv_channel_integral(j, e1);
  const std::complex<double> f2 = pv_channel_integral(j, e2);
  // Eliminate a1 pairwise, then a3.
  auto elim = [](double ea, double eb, std::complex<double> fa, std::complex<double> fb) {
    // (eb fa - ea fb)/(eb - ea) = I0 + a3 (eb ea^3 - ea eb^3)/(eb - ea)
    const double c3 = (eb * ea * ea * ea - ea * eb * eb * eb) / (eb - ea);
    return std::pair{(eb * fa - ea * fb) / (eb - ea), c3};
  };
  const auto [g01, c01] = elim(e0, e1, f0, f1);
  const auto [g12, c12] = elim(e1, e2, f1, f2);
  return (c12 * g01 - c01 * g12) / (c12 - c01);
}

ChannelSpectrum ab_kernel_channels_quadrature(double alpha, int cutoff) {
  if (cutoff < 1) fail(ErrorCode::InvalidArgument, "channel cutoff must be at least 1");
  const double radii[] = {1e-2, 1e-3, 1e-4};
  const int a = integer_part(alpha);
  const double c = cos_pi(alpha);
  const double s = sin_pi(alpha);
  std::vector<std::complex<double>> v(2 * cutoff + 1);
  parallel_for(v.size(), [&](std::size_t idx) {
    const int k = static_cast<int>(idx) - cutoff;
    const std::complex<double> pv = pv_channel_integral_extrapolated(a - k, radii);
    v[idx] = c + std::complex<double>(0.0, s / kPi) * pv;
  });
  return ChannelSpectrum(cutoff, std::move(v));
}

}  // namespace abgauge
