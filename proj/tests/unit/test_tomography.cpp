#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <random>

#include "abgauge/fields/catalog.hpp"
#include "abgauge/fields/differentiation.hpp"
#include "abgauge/fields/operations.hpp"
#include "abgauge/tomography/gauge_scalar.hpp"
#include "abgauge/tomography/radon.hpp"
#include "abgauge/tomography/restriction.hpp"
#include "abgauge/tomography/winding.hpp"
#include "test_util.hpp"

using namespace abgauge;
using abgauge::testing::code_of;
using nlohmann::json;

namespace {

PotentialConfig with_profile(const AngularFunction& ahat) {
  PotentialConfig c;
  c.transversal = TransversalField::planar(ahat);
  return c;
}

double brute(const std::function<double(double)>& integrand) {
  auto f = [&](double t) {
    const double c = std::cos(t);
    if (c <= 0.0) return 0.0;
    return integrand(std::tan(t)) / (c * c);
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  return GK::integrate(f, -0.5 * kPi, 0.0, 20, 1e-13) + GK::integrate(f, 0.0, 0.5 * kPi, 20, 1e-13);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("abgauge_test_" + name)).string();
}

}  // namespace

TEST(LineGeometry, Invariants) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 100; ++k) {
    const Line l = Line::from_angle_offset(u(rng), u(rng));
    EXPECT_NEAR(norm(l.omega()), 1.0, 1e-14);
    EXPECT_LT(std::abs(dot(l.x0(), l.omega())), 1e-12);
    const Line t = Line::through(Vec3(u(rng), u(rng), u(rng)), normalized(Vec3(u(rng), u(rng), 1.0)), 3);
    EXPECT_LT(std::abs(dot(t.x0(), t.omega())), 1e-12);
    EXPECT_DOUBLE_EQ(t.distance_to_origin(), norm(t.x0()));
  }
  EXPECT_THROW(Line::make(Vec3(1.0, 0.0), Vec3(1.0, 0.0), 2), Error);
}

TEST(ScalarTransform, Examples) {
  const PotentialConfig zero;
  EXPECT_EQ(line_integral_scalar(zero, Line::from_angle_offset(0.3, 2.0)), 0.0);

  const ScalarPotential V = make_scalar({{"kind", "inverse_power"}, {"params", {{"exponent", 3.0}}}}, 2);
  for (double d : {1.5, 2.0, 5.0, 12.0}) {
    EXPECT_NEAR(line_integral_scalar(V, Line::from_angle_offset(0.7, d), 1.0, {1e-12, 1e-12}), 2.0 / (1.0 + d * d), 1e-10);
  }

  const ScalarPotential bump =
      make_scalar({{"kind", "bump"}, {"params", {{"amplitude", 1.0}, {"center", {0.0, 5.0}}, {"width", 0.2}}}}, 2);
  EXPECT_LT(std::abs(line_integral_scalar(bump, Line::from_angle_offset(0.0, 2.0), 1.0)), 1e-9);
}

TEST(ScalarTransform, Errors) {
  const ScalarPotential V = make_scalar({{"kind", "inverse_power"}, {"params", {{"exponent", 3.0}}}}, 2);
  EXPECT_EQ(code_of([&] { line_integral_scalar(V, Line::from_angle_offset(0.0, 0.5), 1.0); }),
            ErrorCode::LineHitsObstacle);
  const ScalarPotential no_env(2, [](const Vec3&) { return 1.0; }, std::nullopt);
  EXPECT_EQ(code_of([&] { line_integral_scalar(no_env, Line::from_angle_offset(0.0, 2.0), 1.0); }),
            ErrorCode::TailNotBounded);
}

TEST(VectorTransform, ClosedFormExamples) {
  const PotentialConfig ab = with_profile(AngularFunction::constant(1.0, 8));
  EXPECT_NEAR(line_integral_vector(ab, Line::from_angle_offset(0.4, 2.0)), kPi, 1e-14);
  // grad sin(theta): a_hat = cos(theta)
  const PotentialConfig g = with_profile(AngularFunction::trig(0.0, std::vector<double>{1.0}, {}, 8));
  const Line l = Line::make(Vec3(-2.0, 0.0), Vec3(0.0, 1.0), 2);
  EXPECT_NEAR(line_integral_vector(g, l), 2.0, 1e-14);
}

TEST(VectorTransform, AbPlusEvenGradientAgainstQuadrature) {
  // a_hat = 0.5 + d/dtheta cos(2 theta)
  const AngularFunction ahat = AngularFunction::trig(0.5, {}, std::vector<double>{0.0, -2.0}, 8);
  const PotentialConfig c = with_profile(ahat);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> th(0.0, kTwoPi), p(1.1, 6.0);
  for (int k = 0; k < 20; ++k) {
    const Line l = Line::from_angle_offset(th(rng), p(rng));
    const double q = brute([&](double s) {
      const Vec3 x = l.at(s);
      return dot(perp(x), l.omega()) * (0.5 - 2.0 * std::sin(2.0 * std::atan2(x.y, x.x))) / dot(x, x);
    });
    EXPECT_NEAR(line_integral_vector(c, l), 0.5 * kPi, 1e-12);
    EXPECT_NEAR(q, 0.5 * kPi, 1e-8);
  }
}

TEST(VectorTransform, SplitMatchesBruteForceOnRandomLines) {
  const PotentialConfig c = config_from_json(
      {{"dimension", 2},
       {"R", 1.0},
       {"flux_profile", {{0, 0.35, 0.0}, {1, 0.05, -0.02}, {3, 0.0, 0.03}}},
       {"short_range", {{"kind", "ring_bump"}, {"params", {{"amplitude", 0.4}, {"center", 1.8}, {"width", 0.3}}}}}});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0.0, kTwoPi), p(1.05, 6.0);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const Line l = Line::from_angle_offset(th(rng), (k % 2 ? 1.0 : -1.0) * p(rng));
    const double q = brute([&](double s) { return dot(c.vector_potential(l.at(s)), l.omega()); });
    worst = std::max(worst, std::abs(line_integral_vector(c, l) - q));
  }
  EXPECT_LT(worst, 1e-7);
}

TEST(VectorTransform, ExponentiatedIsUnimodular) {
  const PotentialConfig c = with_profile(AngularFunction::constant(0.3, 8));
  std::vector<Line> lines;
  for (int k = 0; k < 20; ++k) lines.push_back(Line::from_angle_offset(0.3 * k, 1.5 + 0.1 * k));
  const XRayData d = xray_vector(c, lines, true);
  EXPECT_EQ(d.kind, XRayKind::Exponentiated);
  for (const auto& v : d.values) EXPECT_NEAR(std::abs(v), 1.0, 1e-10);
  EXPECT_NO_THROW(d.validate());
}

TEST(XRayData, CsvRoundTrip) {
  const PotentialConfig c = with_profile(AngularFunction::constant(0.3, 8));
  const ParallelGeometry g{8, 16, 1.0, 3.0};
  const XRayData d = forward_project_vector(c, g).to_xray(XRayKind::Vector, "A");
  const std::string path = temp_path("xray.csv");
  d.write_csv(path);
  const XRayData r = XRayData::read_csv(path);
  ASSERT_EQ(r.values.size(), d.values.size());
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    EXPECT_EQ(r.values[i], d.values[i]);
    EXPECT_LT(norm(r.lines[i].x0() - d.lines[i].x0()), 1e-15);
  }
  ASSERT_TRUE(r.geometry.has_value());
  EXPECT_EQ(*r.geometry, g);
  std::filesystem::remove(path);
}

TEST(Winding, Examples) {
  std::vector<PhaseSample> ones, one, minus_two;
  for (int k = 0; k < 200; ++k) {
    const double r = 2.0 * std::pow(1.05, k);
    ones.push_back({r, 0.0});
    one.push_back({r, kTwoPi + 1.0 / r});
    minus_two.push_back({r, -2.0 * kTwoPi + 0.8 * std::exp(-0.1 * r) + 0.3 / (r * r)});
  }
  EXPECT_EQ(resolve_winding(ones), 0);
  EXPECT_EQ(resolve_winding(one), 1);
  EXPECT_EQ(resolve_winding(minus_two), -2);

  std::vector<Line> family;
  for (int k = 0; k < 50; ++k) family.push_back(Line::from_angle_offset(0.2, 1.5 + k));
  XRayData unit;
  unit.kind = XRayKind::Exponentiated;
  unit.lines = family;
  unit.values.assign(family.size(), 1.0);
  EXPECT_EQ(resolve_winding(unit), 0);
}

TEST(Winding, CoarseSamplingIsAmbiguous) {
  const std::vector<PhaseSample> coarse{{2.0, 0.0}, {3.0, kPi}, {4.0, kPi}};
  EXPECT_EQ(code_of([&] { resolve_winding(coarse); }), ErrorCode::BranchAmbiguous);
}

TEST(Radon, ZeroDataGivesZeroField) {
  const ParallelGeometry g{60, 64, 1.0, 3.0};
  const GridScalarField f = radon_invert_scalar(Sinogram(g));
  EXPECT_GT(f.finite_count(), 0u);
  EXPECT_EQ(f.max_abs(), 0.0);
}

TEST(Radon, IdenticalPotentialsCancel) {
  const PotentialConfig c = config_from_json(
      {{"dimension", 2},
       {"R", 1.0},
       {"scalar", {{"kind", "gaussian_ring"}, {"params", {{"amplitude", 1.0}, {"center", 1.5}, {"width", 0.25}}}}}});
  const ParallelGeometry g{60, 64, 1.0, 3.0};
  Sinogram a = forward_project_scalar(c, g);
  const Sinogram b = forward_project_scalar(c, g);
  for (std::size_t i = 0; i < a.values.size(); ++i) a.values[i] -= b.values[i];
  EXPECT_LT(radon_invert_scalar(a).max_abs(), 1e-12);
}

TEST(Radon, RefinementReducesError) {
  const PotentialConfig c = config_from_json(
      {{"dimension", 2},
       {"R", 1.0},
       {"scalar", {{"kind", "gaussian_ring"}, {"params", {{"amplitude", 1.0}, {"center", 1.5}, {"width", 0.3}}}}}});
  auto error_at = [&](int angles, int offsets) {
    const ParallelGeometry g{angles, offsets, 1.0, 3.0};
    const GridScalarField V = radon_invert_scalar(forward_project_scalar(c, g));
    const GridScalarField T = sample_on_annulus([&](const Vec3& x) { return c.scalar(x); }, V.grid, 1.0, 3.0);
    return V.relative_l2_error(T);
  };
  const double coarse = error_at(45, 64);
  const double fine = error_at(90, 128);
  EXPECT_GT(coarse / fine, 1.5) << coarse << " -> " << fine;
}

TEST(Radon, InsufficientCoverage) {
  const ParallelGeometry g{1, 64, 1.0, 3.0};
  EXPECT_EQ(code_of([&] { radon_invert_scalar(Sinogram(g)); }), ErrorCode::InsufficientCoverage);
  XRayData one_angle;
  for (int k = 0; k < 10; ++k) one_angle.lines.push_back(Line::from_angle_offset(0.3, 1.2 + 0.2 * k));
  one_angle.values.assign(one_angle.lines.size(), 0.0);
  EXPECT_EQ(code_of([&] { radon_invert_scalar(one_angle); }), ErrorCode::InsufficientCoverage);
}

TEST(FieldRecovery, AbDataGivesNoField) {
  const PotentialConfig c = with_profile(AngularFunction::constant(0.7, 8));
  const ParallelGeometry g{90, 128, 1.0, 3.0};
  const Sinogram s = forward_project_vector(c, g);
  EXPECT_LT(recover_field_2d(s).max_abs(), 1e-9);
}

TEST(GaugeScalar, ClosedFormGradient) {
  // A = grad <x>^{-1}
  const ShortRangeField A =
      make_short_range({{"kind", "gradient_power"}, {"params", {{"amplitude", 1.0}, {"exponent", 1.0}}}}, 2);
  const GaugeScalar L = find_gauge_scalar(A, 1.0, 4.0);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> r(1.0, 6.0), th(0.0, kTwoPi);
  for (int k = 0; k < 40; ++k) {
    const double rr = r(rng), t = th(rng);
    EXPECT_NEAR(L(Vec3(rr * std::cos(t), rr * std::sin(t))), 1.0 / std::sqrt(1.0 + rr * rr), 1e-8);
  }
}

TEST(GaugeScalar, ZeroAndErrors) {
  const GaugeScalar Z = find_gauge_scalar(ShortRangeField::zero(2), 1.0, 4.0);
  EXPECT_EQ(Z(Vec3(2.0, 1.0)), 0.0);

  const ShortRangeField ab(2, [](const Vec3& x) { return eval_ab_potential(0.3, x); }, Envelope{1.0, 1.0, 0.0});
  EXPECT_EQ(code_of([&] { find_gauge_scalar(ab, 1.0, 4.0); }), ErrorCode::ResidualFlux);

  const ShortRangeField ring =
      make_short_range({{"kind", "ring_bump"}, {"params", {{"amplitude", 0.4}, {"center", 1.8}, {"width", 0.3}}}}, 2);
  EXPECT_EQ(code_of([&] { find_gauge_scalar(ring, 1.0, 4.0); }), ErrorCode::NotCurlFree);
}

TEST(GaugeScalar, SpatialGradient) {
  const ShortRangeField A = make_short_range(
      {{"kind", "gradient_gaussian"}, {"params", {{"amplitude", 0.5}, {"center", {1.5, 0.5, -0.5}}, {"width", 0.5}}}}, 3);
  const GaugeScalar L = find_gauge_scalar(A, 1.0, 4.0);
  for (const Vec3& x : {Vec3(2.0, 0.0, 0.0), Vec3(0.0, -1.5, 1.0), Vec3(1.2, 1.2, 1.2)}) {
    const Vec3 d = x - Vec3(1.5, 0.5, -0.5);
    EXPECT_NEAR(L(x), 0.5 * std::exp(-dot(d, d) / 0.5), 1e-8);
  }
}

TEST(PlaneRestrict, ConstantTwoForm) {
  const TwoFormFn B = [](const Vec3&) { return TwoForm{1.0, 0.0, 0.0}; };
  const PlaneField f = plane_restrict(B, Plane::from_normal({0, 0, 1}, 2.0), 1.0, 3.0, 16);
  for (double v : f.values)
    if (!std::isnan(v)) EXPECT_DOUBLE_EQ(std::abs(v), 1.0);
  EXPECT_EQ(code_of([&] { plane_restrict(B, Plane::from_normal({0, 0, 1}, 0.5), 1.0, 3.0, 16); }),
            ErrorCode::PlaneHitsObstacle);
}

TEST(PlaneRestrict, SymbolicPullback) {
  // A = (x2 x3^2, sin x1, x1 x2), curl A = (x1, 2 x2 x3 - x2, cos x1 - x3^2)
  const VectorFn A = [](const Vec3& x) { return Vec3(x.y * x.z * x.z, std::sin(x.x), x.x * x.y); };
  auto curlA = [](const Vec3& x) { return Vec3(x.x, 2.0 * x.y * x.z - x.y, std::cos(x.x) - x.z * x.z); };
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> off(1.2, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Plane P = Plane::from_normal(normalized(Vec3(n(rng), n(rng), n(rng))), off(rng));
    const PlaneField f = plane_restrict(A, P, 1.0, 2.0, 8);
    for (int j = 0; j < f.n; ++j)
      for (int i = 0; i < f.n; ++i) {
        if (std::isnan(f.at(i, j))) continue;
        worst = std::max(worst, std::abs(f.at(i, j) - dot(curlA(f.point(i, j)), P.normal())));
      }
  }
  EXPECT_LT(worst, 1e-7);
}
