#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "abgauge/angular/fourier.hpp"
#include "abgauge/angular/sphere.hpp"
#include "abgauge/error.hpp"
#include "abgauge/tomography/restriction.hpp"

using namespace abgauge;

namespace {

AngularFunction from(std::initializer_list<FourierTriple> t, int order = 16) {
  return AngularFunction::from_triples(std::vector<FourierTriple>(t), order);
}

}  // namespace

TEST(Antiderivative, CosineToSine) {
  const AngularFunction g = zero_mean_antiderivative(from({{1, 0.5, 0.0}}));
  for (int j = 0; j < 100; ++j) {
    const double t = 0.0631 * j;
    EXPECT_NEAR(g(t), std::sin(t), 1e-15);
  }
  EXPECT_EQ(g.coefficient(0), AngularFunction::Complex{});
}

TEST(Antiderivative, ZeroMapsToZero) {
  const AngularFunction g = zero_mean_antiderivative(AngularFunction(8));
  EXPECT_EQ(g.max_coefficient_magnitude(), 0.0);
}

TEST(Antiderivative, DerivativeMatchesByFiniteDifferences) {
  // f = cos t + 3 sin 2t
  const AngularFunction f = from({{1, 0.5, 0.0}, {2, 0.0, -1.5}});
  const AngularFunction g = zero_mean_antiderivative(f);
  const double h = 1e-3;
  double worst = 0.0, worst_spectral = 0.0;
  for (int j = 0; j < 720; ++j) {
    const double t = kTwoPi * j / 720;
    const double truth = std::cos(t) + 3.0 * std::sin(2.0 * t);
    // sixth-order central difference
    const double fd = (g(t + 3 * h) - 9 * g(t + 2 * h) + 45 * g(t + h) - 45 * g(t - h) + 9 * g(t - 2 * h) - g(t - 3 * h)) /
                      (60 * h);
    worst = std::max(worst, std::abs(fd - truth));
    worst_spectral = std::max(worst_spectral, std::abs(g.derivative()(t) - truth));
  }
  EXPECT_LT(worst, 1e-9);  // limited by the difference formula
  EXPECT_LT(worst_spectral, 1e-12);
}

TEST(Antiderivative, NonzeroMeanRejected) {
  try {
    zero_mean_antiderivative(from({{0, 0.3, 0.0}, {1, 0.5, 0.0}}));
    FAIL() << "expected NonzeroMean";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonzeroMean);
  }
}

TEST(Antiderivative, RandomPolynomialsProperty) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<FourierTriple> t;
    for (int k = 1; k <= 64; ++k) t.push_back({k, u(rng) / k, u(rng) / k});
    const AngularFunction f = AngularFunction::from_triples(t, 64);
    const AngularFunction g = zero_mean_antiderivative(f);
    EXPECT_LT(g.derivative().coefficient_distance(f), 1e-15);
  }
}

TEST(Eval, CosineAtZero) { EXPECT_DOUBLE_EQ(eval(from({{1, 0.5, 0.0}}), 0.0), 1.0); }

TEST(Eval, ConstantEverywhere) {
  const AngularFunction f = AngularFunction::constant(0.37, 8);
  for (double t : {-10.0, 0.0, 1.0, 7.5}) EXPECT_DOUBLE_EQ(f(t), 0.37);
}

TEST(Eval, DirectSummationOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(12), b(12);
  for (auto& v : a) v = u(rng);
  for (auto& v : b) v = u(rng);
  const double a0 = u(rng);
  const AngularFunction f = AngularFunction::trig(a0, a, b, 16);
  const double t = 0.3;
  double direct = a0;
  for (int k = 1; k <= 12; ++k) direct += a[k - 1] * std::cos(k * t) + b[k - 1] * std::sin(k * t);
  EXPECT_NEAR(f(t), direct, 1e-14);
}

TEST(Eval, PeriodicAndReal) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<FourierTriple> t;
  for (int k = 0; k <= 10; ++k) t.push_back({k, u(rng), k == 0 ? 0.0 : u(rng)});
  const AngularFunction f = AngularFunction::from_triples(t, 10);
  for (int k = 1; k <= 10; ++k) EXPECT_EQ(f.coefficient(-k), std::conj(f.coefficient(k)));
  for (int j = 0; j < 50; ++j) {
    const double th = 0.123 * j;
    EXPECT_NEAR(f(th), f(th + kTwoPi), 1e-13);  // |f'| times the rounding of th + 2 pi
    EXPECT_LT(std::abs(f.eval_complex(th).imag()), 1e-12);
    EXPECT_NEAR(f.eval_complex(th).real(), f(th), 1e-12);
  }
}

TEST(Fourier, TriplesRejectNonConjugatePairs) {
  EXPECT_THROW(from({{1, 0.5, 0.1}, {-1, 0.5, 0.1}}), Error);
  EXPECT_THROW(from({{0, 0.5, 0.1}}), Error);
}

TEST(Fourier, SamplesRoundTrip) {
  const AngularFunction f = from({{0, 0.2, 0.0}, {3, 0.1, -0.4}, {5, 0.0, 0.05}}, 8);
  const AngularFunction g = AngularFunction::sample([&](double t) { return f(t); }, 8);
  EXPECT_LT(f.coefficient_distance(g), 1e-15);
}

TEST(Fourier, ShiftedMatchesTranslation) {
  const AngularFunction f = from({{1, 0.3, 0.2}, {4, -0.1, 0.05}}, 8);
  const AngularFunction g = f.shifted(0.7);
  for (int j = 0; j < 20; ++j) EXPECT_NEAR(g(0.3 * j), f(0.3 * j + 0.7), 1e-14);
}

TEST(AntipodalDifference, EvenIsZero) {
  const AngularFunction f = from({{2, 0.5, 0.0}});
  for (int j = 0; j < 16; ++j) {
    const double t = 0.4 * j;
    EXPECT_NEAR(antipodal_difference(f, Vec3(std::cos(t), std::sin(t))), 0.0, 1e-15);
  }
}

TEST(AntipodalDifference, SineAtNorth) {
  const AngularFunction f = from({{1, 0.0, -0.5}});
  EXPECT_NEAR(antipodal_difference(f, Vec3(0.0, 1.0)), 2.0, 1e-15);
}

TEST(AntipodalDifference, AntisymmetricUnderReflection) {
  const AngularFunction f = from({{1, 0.1, -0.5}, {3, 0.2, 0.1}, {2, 0.3, 0.0}});
  for (int j = 0; j < 16; ++j) {
    const Vec3 w(std::cos(0.37 * j), std::sin(0.37 * j));
    EXPECT_NEAR(antipodal_difference(f, w), -antipodal_difference(f, -1.0 * w), 1e-14);
  }
}

TEST(Sphere, AntipodalClosureAndWeights) {
  for (int level = 0; level <= 3; ++level) {
    const auto g = SphereGrid::icosahedral(level);
    double wsum = 0.0;
    for (std::size_t i = 0; i < g->size(); ++i) {
      const std::size_t a = g->antipode(i);
      EXPECT_LT(norm(g->node(a) + g->node(i)), 1e-14);
      EXPECT_NEAR(norm(g->node(i)), 1.0, 1e-14);
      wsum += g->weights()[i];
    }
    EXPECT_NEAR(wsum, 4.0 * kPi, 0.05 * 4.0 * kPi);
  }
}

TEST(Sphere, OddProductAntipodalDifference) {
  const auto g = SphereGrid::icosahedral(3);
  auto odd = [](const Vec3& w) { return w.x * w.y * w.z; };
  const SphereFunction f = SphereFunction::sample(g, odd);
  for (std::size_t i = 0; i < g->size(); ++i) {
    EXPECT_NEAR(antipodal_difference(f, g->node(i)), 2.0 * odd(g->node(i)), 1e-12);
  }
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Vec3 w = normalized(Vec3(n(rng), n(rng), n(rng)));
    worst = std::max(worst, std::abs(antipodal_difference(f, w) - 2.0 * odd(w)));
  }
  EXPECT_LT(worst, 1e-3);
}

TEST(Sphere, InterpolationReproducesSamplesAtNodes) {
  const auto g = SphereGrid::icosahedral(2);
  const SphereFunction f = SphereFunction::sample(g, [](const Vec3& w) { return std::exp(w.x) * w.z; });
  for (std::size_t i = 0; i < g->size(); ++i) EXPECT_NEAR(f(g->node(i)), f.value(i), 1e-10);
}

TEST(AntipodalDefect, Examples) {
  const auto g = SphereGrid::icosahedral(3);
  const SphereFunction even = SphereFunction::sample(g, [](const Vec3& w) { return w.x * w.x - 0.3 * w.y * w.z; });
  EXPECT_LT(antipodal_defect(even).max_defect, 1e-15);
  const SphereFunction w3 = SphereFunction::sample(g, [](const Vec3& w) { return w.z; });
  const AntipodalDefect d = antipodal_defect(w3);
  EXPECT_NEAR(d.max_defect, 2.0, 1e-12);
  EXPECT_NEAR(d.fitted_constant, 0.0, 1e-12);
  EXPECT_TRUE(d.constant_vanishes);
  const SphereFunction mixed =
      SphereFunction::sample(g, [](const Vec3& w) { return w.x * w.x + 1e-6 * w.z; });
  EXPECT_NEAR(antipodal_defect(mixed).max_defect, 2e-6, 1e-15);
}
