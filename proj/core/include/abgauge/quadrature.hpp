#pragma once

#include <functional>

namespace abgauge::quad {

struct Options {
  double rel_tol = 1e-13;
  // Absolute error floor for the whole interval; stops refinement of
  // integrands that are pure rounding noise.
  double abs_tol = 1e-15;
  unsigned max_depth = 18;
};

using Integrand = std::function<double(double)>;

// Adaptive Gauss-Kronrod on a finite interval.
double integrate(const Integrand& f, double a, double b, const Options& opts = {});

// Integral over [-S, S] of an integrand concentrated near the origin: a
// Gauss-Kronrod core on [-core, core] plus logarithmically mapped tails
// s = core * e^u out to S.
double integrate_truncated(const Integrand& f, double core, double S, const Options& opts = {});

// Integral over the real line of f with |f(s)| = O(s^-2) at infinity, using
// s = scale * tan(t).
double integrate_tan_mapped(const Integrand& f, double scale, const Options& opts = {});

// Integral over [0, 2*pi) of a smooth periodic function by the periodic
// trapezoid rule with the given number of nodes.
double periodic_trapezoid(const Integrand& f, int nodes);

}  // namespace abgauge::quad
