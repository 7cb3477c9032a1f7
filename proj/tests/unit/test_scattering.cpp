#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "abgauge/scattering/channels.hpp"
#include "abgauge/scattering/kernel.hpp"
#include "abgauge/scattering/kernel_io.hpp"
#include "abgauge/scattering/solver.hpp"
#include "test_util.hpp"

using namespace abgauge;
using abgauge::testing::code_of;
using nlohmann::json;

namespace {

constexpr int kM = 64;

RemainderGrid bump_remainder(double amplitude = 0.05) {
  return RemainderGrid::sample(kM, [=](double a, double b) {
    const double da = std::remainder(a - 1.0, kTwoPi), db = std::remainder(b - 0.4, kTwoPi);
    return Complex(amplitude, 0.0) * std::exp(-(da * da + db * db) / 0.5);
  });
}

ScatteringKernel example_kernel(double alpha = 0.3) {
  const AngularFunction a0 = AngularFunction::trig(0.0, {}, std::vector<double>{0.2}, 8);
  return assemble_kernel(alpha, a0, a0, bump_remainder(), 1.0);
}

std::filesystem::path temp_dir() {
  const auto d = std::filesystem::temp_directory_path() / "abgauge_test_kernels";
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Channels, IntegerFluxIsSign) {
  for (int alpha : {0, 1, 2, -1}) {
    const ChannelSpectrum c = ab_kernel_channels(alpha, 16);
    for (int k = -16; k <= 16; ++k) EXPECT_EQ(c[k], Complex(alpha % 2 == 0 ? 1.0 : -1.0, 0.0));
  }
}

TEST(Channels, HalfFluxMatchesPrincipalValueQuadrature) {
  const ChannelSpectrum exact = ab_kernel_channels(0.5, 8);
  const ChannelSpectrum quad = ab_kernel_channels_quadrature(0.5, 8);
  for (int k = -8; k <= 8; ++k) EXPECT_LT(std::abs(exact[k] - quad[k]), 1e-6) << k;
  EXPECT_NEAR(exact[0].imag(), 1.0, 1e-15);
  EXPECT_NEAR(exact[-1].imag(), -1.0, 1e-15);
}

TEST(Channels, UnimodularForAllFluxes) {
  for (double alpha = -2.0; alpha <= 2.0; alpha += 0.137)
    EXPECT_LT(ab_kernel_channels(alpha, 32).unimodularity_defect(), 1e-14);
}

TEST(Assemble, MatchesDirectFormula) {
  const ScatteringKernel S = example_kernel();
  const RemainderGrid R = bump_remainder();
  const double s = std::sin(0.3 * kPi) / kPi;
  double worst = 0.0;
  for (int i = 0; i < kM; ++i)
    for (int j = 0; j < kM; ++j) {
      if (i == j) continue;
      const double th = kTwoPi * i / kM, tp = kTwoPi * j / kM;
      const Complex singular = Complex(0.0, s) / (1.0 - std::exp(Complex(0.0, th - tp)));
      const Complex pre = std::exp(Complex(0.0, 0.2 * std::sin(th) - 0.2 * std::sin(kPi + tp)));
      worst = std::max(worst, std::abs(S.at(i, j) - pre * (singular + R.at(i, j))));
    }
  EXPECT_LT(worst, 1e-10);
}

TEST(Assemble, RemainderBoundViolated) {
  const AngularFunction zero(8);
  EXPECT_EQ(code_of([&] { assemble_kernel(0.3, zero, zero, bump_remainder(5.0), 1.0, {0.1, 0.5}); }),
            ErrorCode::RemainderBoundViolated);
}

TEST(GaugeOnKernel, IdentityIsBitIdentical) {
  const ScatteringKernel S = example_kernel();
  const ScatteringKernel T = apply_gauge_to_kernel(S, GaugeElement::identity(2));
  for (int i = 0; i < kM; ++i)
    for (int j = 0; j < kM; ++j)
      if (i != j) EXPECT_EQ(S.at(i, j), T.at(i, j));
}

TEST(GaugeOnKernel, WindingShiftsChannels) {
  const ScatteringKernel S = example_kernel();
  const ScatteringKernel T = apply_gauge_to_kernel(S, GaugeElement::planar(1, AngularFunction(8)));
  EXPECT_LT(T.channels(16).distance(ab_kernel_channels(1.3, 16)), 1e-14);
  EXPECT_GT(kernel_distance(S, T), 0.1);
}

TEST(GaugeOnKernel, InverseUndoes) {
  const ScatteringKernel S = example_kernel();
  const GaugeElement g = GaugeElement::planar(2, AngularFunction::trig(0.0, std::vector<double>{0.3, -0.1}, {}, 8));
  const ScatteringKernel back = apply_gauge_to_kernel(apply_gauge_to_kernel(S, g), g.inverse());
  EXPECT_LT(kernel_distance(S, back), 1e-12);
}

TEST(KernelDistance, Examples) {
  const ScatteringKernel S = example_kernel();
  EXPECT_EQ(kernel_distance(S, S), 0.0);
  const double d = kernel_distance(S, example_kernel(0.3 + 1e-3));
  EXPECT_GT(d, 1e-4);
  EXPECT_LT(d, 1e-2);
}

TEST(KernelDistance, GridMismatch) {
  const AngularFunction zero(8);
  const ScatteringKernel a = assemble_kernel(0.3, zero, zero, RemainderGrid::zero(32), 1.0);
  const ScatteringKernel b = assemble_kernel(0.3, zero, zero, RemainderGrid::zero(64), 1.0);
  EXPECT_EQ(code_of([&] { kernel_distance(a, b); }), ErrorCode::GridMismatch);
}

TEST(Solver, SameKernelGivesIdentity) {
  const ScatteringKernel S = example_kernel();
  const SolverResult r = gauge_equivalence_solver(S, S);
  ASSERT_EQ(r.verdict, Verdict::Equivalent);
  ASSERT_TRUE(r.gauge.has_value());
  EXPECT_EQ(r.gauge->m(), 0);
  EXPECT_LT(r.gauge->phi().max_coefficient_magnitude(), 1e-12);
}

TEST(Solver, RecoversWindingAndPhase) {
  const ScatteringKernel S = example_kernel();
  const AngularFunction phi = AngularFunction::trig(0.0, std::vector<double>{0.0, 0.1}, {}, 8);
  const SolverResult r = gauge_equivalence_solver(S, apply_gauge_to_kernel(S, GaugeElement::planar(2, phi)));
  ASSERT_EQ(r.verdict, Verdict::Equivalent);
  EXPECT_EQ(r.gauge->m(), 2);
  EXPECT_LT(r.gauge->phi().coefficient_distance(phi), 1e-10);
}

TEST(Solver, DifferentFluxGivesChannelWitness) {
  const SolverResult r = gauge_equivalence_solver(example_kernel(0.3), example_kernel(0.4));
  EXPECT_EQ(r.verdict, Verdict::NotEquivalent);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->kind, "channel_spectrum");
}

TEST(Solver, IntegerFluxIsAmbiguous) {
  const AngularFunction zero(8);
  const ScatteringKernel S = assemble_kernel(1.0, zero, zero, bump_remainder(), 1.0);
  EXPECT_EQ(gauge_equivalence_solver(S, S).verdict, Verdict::Ambiguous);
}

TEST(KernelIo, RoundTrip) {
  const ScatteringKernel S =
      apply_gauge_to_kernel(example_kernel(), GaugeElement::planar(1, AngularFunction::constant(0.0, 8)));
  const std::string path = (temp_dir() / "round_trip.json").string();
  save_kernel(S, path);
  const ScatteringKernel T = load_kernel(path);
  EXPECT_EQ(T.winding(), S.winding());
  EXPECT_DOUBLE_EQ(T.alpha(), S.alpha());
  EXPECT_LT(kernel_distance(S, T), 1e-14);
}

TEST(KernelIo, RemainderIndexOutsideGrid) {
  const auto dir = temp_dir();
  json header = kernel_header(example_kernel(), "bad.remainder.csv");
  std::ofstream(dir / "bad.remainder.csv") << "i,j,re,im\n" << kM + 3 << ",0,0.01,0\n";
  EXPECT_EQ(code_of([&] { kernel_from_json(header, dir.string()); }), ErrorCode::GridMismatch);
}
