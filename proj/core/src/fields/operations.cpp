#include "abgauge/fields/operations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abgauge/parallel.hpp"
#include "abgauge/quadrature.hpp"

namespace abgauge {

Vec3 eval_ab_potential(double alpha, const Vec3& x) {
  const double r2 = x.x * x.x + x.y * x.y;
  if (std::sqrt(r2) < 1e-12) fail(ErrorCode::OriginSingularity, "AB potential is singular at the origin");
  return perp(x) * (alpha / r2);
}

TransversalDecomposition decompose_transversal(const TransversalField& A0, double tol) {
  if (A0.dimension() != 2) fail(ErrorCode::DimensionMismatch, "decomposition is defined for n = 2");
  if (A0.has_callable()) {
    std::vector<Vec3> pts;
    const int m = 4 * A0.a_hat().order() + 7;
    for (double r : {0.5, 1.0, 3.0, 10.0})
      for (int j = 0; j < m; ++j) {
        const double t = kTwoPi * (j + 0.37) / m;
        pts.emplace_back(r * std::cos(t), r * std::sin(t));
      }
    A0.check_transversal(pts, tol);
  }
  const AngularFunction& a = A0.a_hat();
  const double alpha = a.mean();
  return {alpha, zero_mean_antiderivative(a.without_mean())};
}

Vec3 reassemble(const TransversalDecomposition& d, const Vec3& x) {
  const double r2 = x.x * x.x + x.y * x.y;
  if (std::sqrt(r2) < 1e-12) fail(ErrorCode::OriginSingularity, "reassembly at the origin");
  const double t = polar_angle(x);
  // grad a0(theta) = a0'(theta) (-x2, x1)/|x|^2
  double da0 = 0.0;
  for (int k = 1; k <= d.a0.order(); ++k) {
    const auto c = d.a0.coefficient(k);
    if (c == AngularFunction::Complex{}) continue;
    // d/dtheta 2 Re(c e^{ikt}) = -2k Im(c e^{ikt})
    da0 += -2.0 * k * (c * std::polar(1.0, k * t)).imag();
  }
  return perp(x) * ((d.alpha + da0) / r2);
}

double flux(const PotentialConfig& A, double R_circle, int nodes) {
  if (A.dimension != 2) fail(ErrorCode::DimensionMismatch, "flux is defined for n = 2");
  if (!(R_circle > A.obstacle_radius)) fail(ErrorCode::CircleInsideObstacle, "flux circle must enclose the obstacle");
  auto integrand = [&](double t) {
    const Vec3 x(R_circle * std::cos(t), R_circle * std::sin(t));
    return dot(A.vector_potential(x), perp(x));
  };
  return quad::periodic_trapezoid(integrand, nodes) / kTwoPi;
}

GridScalarField curl(const VectorFn& A, double obstacle_radius, const AnnulusRegion& region, const FdOptions& opts) {
  const int reach = opts.order == 2 ? 1 : 2;
  if (region.r_inner * (1.0 - reach * opts.relative_step) < obstacle_radius * (1.0 - 1e-9))
    fail(ErrorCode::RegionTouchesObstacle, "curl region (with stencil) reaches the obstacle");
  GridScalarField out(region.grid);
  const auto& g = region.grid;
  parallel_for(static_cast<std::size_t>(g.ny), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i < g.nx; ++i) {
      const Vec3 x = g.point(i, j);
      if (region.contains(x)) out.at(i, j) = fd_curl2(A, x, opts);
    }
  });
  return out;
}

GridScalarField curl(const PotentialConfig& A, const AnnulusRegion& region, const FdOptions& opts) {
  if (A.dimension != 2) fail(ErrorCode::DimensionMismatch, "grid curl is planar; use the point-set form for n = 3");
  return curl([&A](const Vec3& x) { return A.vector_potential(x); }, A.obstacle_radius, region, opts);
}

std::vector<TwoForm> curl(const VectorFn& A, double obstacle_radius, std::span<const Vec3> points,
                          const FdOptions& opts) {
  const int reach = opts.order == 2 ? 1 : 2;
  for (const auto& x : points)
    if (norm(x) * (1.0 - reach * opts.relative_step) < obstacle_radius * (1.0 - 1e-9))
      fail(ErrorCode::RegionTouchesObstacle, "curl sample point (with stencil) reaches the obstacle");
  std::vector<TwoForm> out(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out[i] = fd_curl3(A, points[i], opts); });
  return out;
}

namespace {

// Neville evaluation at t = 0 of the interpolant through (t[k], y[k]).
double neville_at_zero(std::span<const double> t, std::span<const double> y) {
  std::vector<double> p(y.begin(), y.end());
  const std::size_t n = p.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      p[i] = (t[i + level] * p[i] - t[i] * p[i + 1]) / (t[i + level] - t[i]);
  return p[0];
}

}  // namespace

SphereFunction extract_leading_order(std::shared_ptr<const SphereGrid> grid, std::span<const double> radii,
                                     const std::vector<std::vector<double>>& samples, double tol) {
  if (radii.size() < 3) fail(ErrorCode::InvalidArgument, "leading-order extraction needs at least 3 radii");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] > radii[k - 1])))
      fail(ErrorCode::InvalidArgument, "radii must be positive and strictly increasing");
  }
  if (samples.size() != radii.size()) fail(ErrorCode::GridMismatch, "one sample set per radius expected");
  for (const auto& s : samples)
    if (s.size() != grid->size()) fail(ErrorCode::GridMismatch, "sample count does not match the sphere grid");

  const std::size_t K = radii.size();
  std::vector<double> t(K);
  for (std::size_t k = 0; k < K; ++k) t[k] = 1.0 / radii[k];
  std::vector<double> b(grid->size());
  double worst = 0.0;
  std::vector<double> y(K);
  for (std::size_t i = 0; i < grid->size(); ++i) {
    for (std::size_t k = 0; k < K; ++k) y[k] = radii[k] * radii[k] * samples[k][i];
    const double full = neville_at_zero(t, y);
    // Drop the innermost radius, where higher orders in 1/|x| weigh most.
    const double reduced = neville_at_zero(std::span(t).subspan(1), std::span(y).subspan(1));
    worst = std::max(worst, std::abs(full - reduced));
    b[i] = full;
  }
  if (worst > tol)
    fail(ErrorCode::NonConvergent, "extrapolation residual " + std::to_string(worst) +
                                       " exceeds tolerance; |x|^2 B has no limit at the sampled radii");
  return SphereFunction(std::move(grid), std::move(b));
}

SphereFunction extract_leading_order(const ScalarFn& B, std::shared_ptr<const SphereGrid> grid,
                                     std::span<const double> radii, double tol) {
  std::vector<std::vector<double>> samples(radii.size(), std::vector<double>(grid->size()));
  parallel_for(radii.size(), [&](std::size_t k) {
    for (std::size_t i = 0; i < grid->size(); ++i) samples[k][i] = B(radii[k] * grid->node(i));
  });
  return extract_leading_order(std::move(grid), radii, samples, tol);
}

PotentialConfig apply_gauge_to_potential(const PotentialConfig& A, const GaugeElement& g) {
  if (A.dimension != g.dimension()) fail(ErrorCode::DimensionMismatch, "gauge and configuration dimensions differ");
  PotentialConfig out = A;
  if (A.dimension == 2) {
    const AngularFunction profile = g.phi().derivative() + static_cast<double>(g.m());
    if (A.transversal.has_callable()) {
      VectorFn old = [t = A.transversal](const Vec3& x) { return t(x); };
      out.transversal = TransversalField::from_field_2d(
          [old, profile](const Vec3& x) {
            return old(x) + perp(x) * (profile(polar_angle(x)) / (x.x * x.x + x.y * x.y));
          },
          std::max(A.transversal.a_hat().order(), profile.order()));
    } else {
      out.transversal = TransversalField::planar(A.transversal.a_hat() + profile);
    }
  } else if (g.has_psi()) {
    const SphereFunction psi = g.psi();
    const TransversalField old = A.transversal;
    out.transversal = TransversalField::spatial(
        [old, psi](const Vec3& x) {
          return old(x) + fd_gradient([&psi](const Vec3& y) { return psi(y); }, x, 3);
        },
        FieldSpec{"gauged", {{"of", old.spec().kind}}});
  }
  if (!g.L().is_zero()) {
    const ScalarPotential L = g.L();
    const int n = A.dimension;
    ShortRangeField grad(n, [L, n](const Vec3& x) { return fd_gradient(L.function(), x, n); },
                         g.gradient_envelope(), FieldSpec{"gauge_gradient", {{"of", L.spec().kind}}});
    out.short_range = A.short_range + grad;
  }
  return out;
}

}  // namespace abgauge
