#include "abgauge/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "abgauge/vec.hpp"

namespace abgauge::quad {

namespace gk = boost::math::quadrature;

namespace {

using Rule = gk::gauss_kronrod<double, 61>;

double adapt(const Integrand& f, double a, double b, unsigned depth, double abs_tol, double rel_tol) {
  double err = 0.0, l1 = 0.0;
  const double v = Rule::integrate(f, a, b, 0, 0.0, &err, &l1);
  if (depth == 0 || err <= abs_tol || err <= rel_tol * l1) return v;
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, depth - 1, 0.5 * abs_tol, rel_tol) + adapt(f, mid, b, depth - 1, 0.5 * abs_tol, rel_tol);
}

}  // namespace

double integrate(const Integrand& f, double a, double b, const Options& opts) {
  if (a == b) return 0.0;
  return adapt(f, a, b, opts.max_depth, opts.abs_tol, opts.rel_tol);
}

double integrate_truncated(const Integrand& f, double core, double S, const Options& opts) {
  if (S <= core) return integrate(f, -S, S, opts);
  double total = integrate(f, -core, core, opts);
  const double umax = std::log(S / core);
  auto tail = [&](double u) {
    const double s = core * std::exp(u);
    return (f(s) + f(-s)) * s;
  };
  total += integrate(tail, 0.0, umax, opts);
  return total;
}

double integrate_tan_mapped(const Integrand& f, double scale, const Options& opts) {
  auto mapped = [&](double t) {
    const double c = std::cos(t);
    if (c <= 0.0) return 0.0;
    const double s = scale * std::tan(t);
    return f(s) * scale / (c * c);
  };
  const double half = 0.5 * kPi;
  // Split at zero so the typical peak of the integrand is a node boundary.
  return integrate(mapped, -half, 0.0, opts) + integrate(mapped, 0.0, half, opts);
}

double periodic_trapezoid(const Integrand& f, int nodes) {
  double sum = 0.0;
  const double h = kTwoPi / nodes;
  for (int j = 0; j < nodes; ++j) sum += f(j * h);
  return sum * h;
}

}  // namespace abgauge::quad
