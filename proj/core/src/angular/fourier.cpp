#include "abgauge/angular/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abgauge/error.hpp"

namespace abgauge {

namespace {

void check_order(int order) {
  if (order < 1) fail(ErrorCode::InvalidArgument, "Fourier order must be positive");
}

double reduce_angle(double theta) { return std::remainder(theta, kTwoPi); }

}  // namespace

AngularFunction::AngularFunction(int order) : order_(order) {
  check_order(order);
  coeffs_.assign(2 * order + 1, Complex{});
}

AngularFunction::AngularFunction(int order, std::vector<Complex> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {}

AngularFunction AngularFunction::constant(double value, int order) {
  AngularFunction f(order);
  f.coeffs_[order] = value;
  return f;
}

AngularFunction AngularFunction::trig(double a0, std::span<const double> cos_coeffs,
                                      std::span<const double> sin_coeffs, int order) {
  const int needed = static_cast<int>(std::max(cos_coeffs.size(), sin_coeffs.size()));
  AngularFunction f(std::max(order, needed));
  f.coeffs_[f.order_] = a0;
  for (int k = 1; k <= needed; ++k) {
    const double a = k <= static_cast<int>(cos_coeffs.size()) ? cos_coeffs[k - 1] : 0.0;
    const double b = k <= static_cast<int>(sin_coeffs.size()) ? sin_coeffs[k - 1] : 0.0;
    // a cos + b sin = (a - i b)/2 e^{ik} + (a + i b)/2 e^{-ik}
    f.coeffs_[f.order_ + k] = Complex(0.5 * a, -0.5 * b);
    f.coeffs_[f.order_ - k] = Complex(0.5 * a, 0.5 * b);
  }
  return f;
}

AngularFunction AngularFunction::from_triples(std::span<const FourierTriple> triples, int order) {
  int needed = 0;
  for (const auto& t : triples) needed = std::max(needed, std::abs(t.k));
  AngularFunction f(std::max(order, needed));
  std::vector<bool> seen(f.coeffs_.size(), false);
  const double tol = 1e-14;
  for (const auto& t : triples) {
    const Complex c(t.re, t.im);
    if (t.k == 0 && std::abs(t.im) > tol) {
      fail(ErrorCode::InvalidArgument, "c_0 must be real for a real-valued function");
    }
    const int idx = f.order_ + t.k;
    const int partner = f.order_ - t.k;
    if (seen[idx] && std::abs(f.coeffs_[idx] - c) > tol) {
      fail(ErrorCode::InvalidArgument, "coefficient k=" + std::to_string(t.k) + " given twice");
    }
    if (seen[partner] && t.k != 0 && std::abs(f.coeffs_[partner] - std::conj(c)) > tol) {
      fail(ErrorCode::InvalidArgument,
           "coefficients k=" + std::to_string(t.k) + " and k=" + std::to_string(-t.k) +
               " are not conjugate");
    }
    f.coeffs_[idx] = c;
    f.coeffs_[partner] = t.k == 0 ? Complex(t.re, 0.0) : std::conj(c);
    seen[idx] = seen[partner] = true;
  }
  return f;
}

AngularFunction AngularFunction::from_samples(std::span<const double> samples, int order) {
  check_order(order);
  const int m = static_cast<int>(samples.size());
  if (m < 2 * order + 1) {
    fail(ErrorCode::InvalidArgument, "need at least 2*order+1 samples for the requested order");
  }
  AngularFunction f(order);
  for (int k = 0; k <= order; ++k) {
    Complex acc{};
    for (int j = 0; j < m; ++j) {
      const double phase = -kTwoPi * static_cast<double>((static_cast<long>(k) * j) % m) / m;
      acc += samples[j] * Complex(std::cos(phase), std::sin(phase));
    }
    acc /= static_cast<double>(m);
    if (k == 0) acc.imag(0.0);
    f.coeffs_[order + k] = acc;
    f.coeffs_[order - k] = std::conj(acc);
  }
  return f;
}

AngularFunction AngularFunction::sample(const std::function<double(double)>& fn, int order) {
  check_order(order);
  const int m = 2 * order + 1;
  std::vector<double> values(m);
  for (int j = 0; j < m; ++j) values[j] = fn(kTwoPi * j / m);
  return from_samples(values, order);
}

AngularFunction::Complex AngularFunction::coefficient(int k) const noexcept {
  if (k < -order_ || k > order_) return {};
  return coeffs_[order_ + k];
}

double AngularFunction::max_coefficient_magnitude() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double AngularFunction::operator()(double theta) const {
  const double t = reduce_angle(theta);
  double sum = coeffs_[order_].real();
  for (int k = 1; k <= order_; ++k) {
    const Complex& c = coeffs_[order_ + k];
    if (c == Complex{}) continue;
    const double a = k * t;
    sum += 2.0 * (c.real() * std::cos(a) - c.imag() * std::sin(a));
  }
  return sum;
}

AngularFunction::Complex AngularFunction::eval_complex(double theta) const {
  const double t = reduce_angle(theta);
  Complex sum{};
  for (int k = -order_; k <= order_; ++k) {
    sum += coeffs_[order_ + k] * std::polar(1.0, k * t);
  }
  return sum;
}

AngularFunction AngularFunction::derivative() const {
  std::vector<Complex> out(coeffs_.size());
  for (int k = -order_; k <= order_; ++k) out[order_ + k] = Complex(0.0, k) * coeffs_[order_ + k];
  return AngularFunction(order_, std::move(out));
}

AngularFunction AngularFunction::shifted(double delta) const {
  std::vector<Complex> out(coeffs_.size());
  for (int k = -order_; k <= order_; ++k) {
    out[order_ + k] = coeffs_[order_ + k] * std::polar(1.0, k * delta);
  }
  out[order_].imag(0.0);
  return AngularFunction(order_, std::move(out));
}

AngularFunction AngularFunction::resized(int order) const {
  check_order(order);
  AngularFunction f(order);
  const int common = std::min(order, order_);
  for (int k = -common; k <= common; ++k) f.coeffs_[order + k] = coeffs_[order_ + k];
  return f;
}

AngularFunction AngularFunction::without_mean() const {
  AngularFunction f = *this;
  f.coeffs_[order_] = 0.0;
  return f;
}

std::vector<FourierTriple> AngularFunction::triples() const {
  std::vector<FourierTriple> out;
  out.reserve(coeffs_.size());
  for (int k = -order_; k <= order_; ++k) {
    const Complex& c = coeffs_[order_ + k];
    out.push_back({k, c.real(), c.imag()});
  }
  return out;
}

std::vector<FourierTriple> AngularFunction::nonnegative_triples() const {
  std::vector<FourierTriple> out;
  for (int k = 0; k <= order_; ++k) {
    const Complex& c = coeffs_[order_ + k];
    if (c != Complex{}) out.push_back({k, c.real(), c.imag()});
  }
  return out;
}

double AngularFunction::coefficient_distance(const AngularFunction& other) const {
  const int n = std::max(order_, other.order_);
  double d = 0.0;
  for (int k = -n; k <= n; ++k) d = std::max(d, std::abs(coefficient(k) - other.coefficient(k)));
  return d;
}

AngularFunction AngularFunction::operator-() const { return -1.0 * *this; }

AngularFunction operator+(const AngularFunction& a, const AngularFunction& b) {
  const int n = std::max(a.order_, b.order_);
  AngularFunction out = a.order_ == n ? a : a.resized(n);
  for (int k = -b.order_; k <= b.order_; ++k) out.coeffs_[n + k] += b.coeffs_[b.order_ + k];
  return out;
}

AngularFunction operator-(const AngularFunction& a, const AngularFunction& b) { return a + (-b); }

AngularFunction operator*(double s, const AngularFunction& f) {
  AngularFunction out = f;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

AngularFunction operator+(const AngularFunction& f, double c) {
  AngularFunction out = f;
  out.coeffs_[out.order_] += c;
  return out;
}

double polar_angle(const Vec3& x) {
  const double t = std::atan2(x.y, x.x);
  return t < 0.0 ? t + kTwoPi : t;
}

double eval(const AngularFunction& f, double theta) { return f(theta); }

AngularFunction zero_mean_antiderivative(const AngularFunction& f, double tol_mean) {
  const double scale = std::max(1.0, f.max_coefficient_magnitude());
  if (std::abs(f.coefficient(0)) >= tol_mean * scale) {
    fail(ErrorCode::NonzeroMean,
         "mean " + std::to_string(f.mean()) + " is not zero; subtract the flux first");
  }
  std::vector<FourierTriple> out;
  for (int k = 1; k <= f.order(); ++k) {
    const auto c = f.coefficient(k) / AngularFunction::Complex(0.0, k);
    out.push_back({k, c.real(), c.imag()});
  }
  return AngularFunction::from_triples(out, f.order());
}

double antipodal_difference(const AngularFunction& f, const Vec3& omega) {
  const double t = std::atan2(omega.y, omega.x);
  return f(t) - f(t + kPi);
}

}  // namespace abgauge
