#include "abgauge/tomography/gauge_scalar.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "abgauge/parallel.hpp"
#include "abgauge/quadrature.hpp"

namespace abgauge {

namespace {

Vec3 anchor_direction() { return {1.0, 0.0, 0.0}; }

}  // namespace

double GaugeScalar::radial(const Vec3& direction, double r0, double r1) const {
  if (r0 == r1) return 0.0;
  quad::Options q;
  q.rel_tol = rel_tol_;
  return quad::integrate([&](double r) { return dot(field_(r * direction), direction); }, r0, r1, q);
}

double GaugeScalar::arc(double r, const Vec3& from, const Vec3& to) const {
  // Great-circle (or planar circle) arc from direction `from` to `to`.
  const double c = std::clamp(dot(from, to), -1.0, 1.0);
  Vec3 u = to - c * from;
  double angle;
  if (dimension_ == 2) {
    angle = std::atan2(cross2(from, to), c);
    if (angle < 0.0) angle += kTwoPi;
    u = perp(from);
  } else {
    angle = std::acos(c);
    if (norm(u) < 1e-14) {
      const Vec3 helper = std::abs(from.x) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
      u = helper - dot(helper, from) * from;
    }
    u = normalized(u);
  }
  if (angle == 0.0) return 0.0;
  quad::Options q;
  q.rel_tol = rel_tol_;
  return quad::integrate(
      [&](double t) {
        const Vec3 x = r * (std::cos(t) * from + std::sin(t) * u);
        const Vec3 tangent = r * (-std::sin(t) * from + std::cos(t) * u);
        return dot(field_(x), tangent);
      },
      0.0, angle, q);
}

double GaugeScalar::operator()(const Vec3& x) const {
  if (field_.is_zero()) return 0.0;
  const double r = norm(x);
  if (r < r_inner_ * (1.0 - 1e-9)) fail(ErrorCode::RegionTouchesObstacle, "gauge scalar evaluated inside r_inner");
  const Vec3 e = anchor_direction();
  return anchor_value_ + radial(e, r_inner_, r) + arc(r, e, x / r);
}

GridScalarField GaugeScalar::sample(const AnnulusRegion& region, double rel_tol) const {
  GaugeScalar coarse = *this;
  coarse.rel_tol_ = rel_tol;
  GridScalarField out(region.grid);
  const auto& g = region.grid;
  parallel_for(static_cast<std::size_t>(g.ny), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i < g.nx; ++i) {
      const Vec3 x = g.point(i, j);
      if (region.contains(x) && norm(x) >= r_inner_) out.at(i, j) = coarse(x);
    }
  });
  return out;
}

ScalarPotential GaugeScalar::as_potential() const {
  GaugeScalar self = *this;
  return ScalarPotential(dimension_, [self](const Vec3& x) { return self(x); }, std::nullopt,
                         FieldSpec{"gauge_scalar", nlohmann::json::object()});
}

GaugeScalar find_gauge_scalar(const ShortRangeField& Adiff, double r_inner, double r_outer,
                              const GaugeScalarOptions& opts) {
  if (!(r_inner > 0.0) || !(r_outer > r_inner)) fail(ErrorCode::InvalidArgument, "need 0 < r_inner < r_outer");
  GaugeScalar L;
  L.field_ = Adiff;
  L.dimension_ = Adiff.dimension();
  L.r_inner_ = r_inner;
  if (Adiff.is_zero()) return L;
  const int n = L.dimension_;

  // Curl on a polar (n=2) or spherical-shell (n=3) sample set.
  std::vector<Vec3> pts;
  const double r_lo = r_inner * (1.0 + 2.0 * opts.fd.relative_step) * (1.0 + 1e-6);
  const int nr = 12;
  for (int k = 0; k < nr; ++k) {
    const double r = r_lo + (r_outer - r_lo) * k / (nr - 1);
    if (n == 2) {
      for (int a = 0; a < 48; ++a) {
        const double t = kTwoPi * (a + 0.25) / 48;
        pts.emplace_back(r * std::cos(t), r * std::sin(t));
      }
    } else {
      const auto grid = SphereGrid::icosahedral(1);
      for (const auto& w : grid->nodes()) pts.push_back(r * w);
    }
  }
  std::vector<double> curls(pts.size());
  const VectorFn A = [&Adiff](const Vec3& x) { return Adiff(x); };
  parallel_for(pts.size(), [&](std::size_t i) {
    curls[i] = n == 2 ? std::abs(fd_curl2(A, pts[i], opts.fd)) : fd_curl3(A, pts[i], opts.fd).max_abs();
  });
  L.max_curl_ = *std::max_element(curls.begin(), curls.end());
  if (L.max_curl_ > opts.curl_tol)
    fail(ErrorCode::NotCurlFree, "max |curl| = " + std::to_string(L.max_curl_) + " exceeds curl_tol");

  if (n == 2) {
    L.loop_ = quad::periodic_trapezoid(
        [&](double t) {
          const Vec3 x(r_inner * std::cos(t), r_inner * std::sin(t));
          return dot(Adiff(x), perp(x));
        },
        4096);
    if (std::abs(L.loop_) > opts.loop_tol)
      fail(ErrorCode::ResidualFlux, "circulation " + std::to_string(L.loop_) +
                                        " around the obstacle: the gauge classes differ by a flux");
  }

  // Normalisation: L1 -> 0 at infinity along the anchor ray.
  if (!Adiff.envelope()) fail(ErrorCode::TailNotBounded, "no decay envelope declared for the potential difference");
  const double S = std::max(truncation_length(*Adiff.envelope(), opts.tail_tol), 2.0 * r_outer);
  const Vec3 e = anchor_direction();
  quad::Options q;
  q.rel_tol = L.rel_tol_;
  const double tail = quad::integrate(
      [&](double u) {
        const double r = std::exp(u);
        return dot(Adiff(r * e), e) * r;
      },
      std::log(r_inner), std::log(S), q);
  L.anchor_value_ = -tail;

  // Path independence: radial-then-angular against angular-then-radial.
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> radius(r_inner, r_outer);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_point = [&] {
    Vec3 d;
    for (int a = 0; a < n; ++a) d[a] = gauss(rng);
    return radius(rng) * normalized(d);
  };
  std::vector<std::pair<Vec3, Vec3>> pairs;
  for (int k = 0; k < opts.path_checks; ++k) {
    const Vec3 x = random_point();
    const Vec3 y = random_point();
    pairs.emplace_back(x, y);
  }
  std::vector<double> defects(pairs.size());
  std::vector<double> scales(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    const auto& [x, y] = pairs[k];
    const double rx = norm(x);
    const double ry = norm(y);
    const double direct = L(y) - L(x);
    const double other = L.arc(rx, x / rx, y / ry) + L.radial(y / ry, rx, ry);
    defects[k] = std::abs(direct - other);
    scales[k] = std::max(1.0, std::abs(direct));
  });
  for (std::size_t k = 0; k < pairs.size(); ++k) L.path_defect_ = std::max(L.path_defect_, defects[k] / scales[k]);
  if (L.path_defect_ > opts.path_tol)
    fail(ErrorCode::NotCurlFree, "path dependence " + std::to_string(L.path_defect_) + " exceeds path_tol");
  return L;
}

}  // namespace abgauge
