// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "abgauge/error.hpp"
#include "abgauge/fields/catalog.hpp"
#include "abgauge/fields/differentiation.hpp"
#include "abgauge/fields/operations.hpp"
#include "abgauge/pipeline/classify.hpp"
#include "abgauge/pipeline/scenario.hpp"
#include "abgauge/scattering/channels.hpp"
#include "abgauge/scattering/kernel.hpp"
#include "abgauge/scattering/solver.hpp"
#include "abgauge/tomography/gauge_scalar.hpp"
#include "abgauge/tomography/radon.hpp"
#include "abgauge/tomography/restriction.hpp"
#include "abgauge/tomography/winding.hpp"

using namespace abgauge;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Real trigonometric polynomial with explicit coefficients, evaluated directly.
struct Trig {
  double a0 = 0.0;
  std::vector<double> a, b;
  double operator()(double t) const {
    double v = a0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      v += a[k] * std::cos((k + 1) * t) + b[k] * std::sin((k + 1) * t);
    }
    return v;
  }
  double derivative(double t) const {
    double v = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      const double n = static_cast<double>(k + 1);
      v += n * (-a[k] * std::sin(n * t) + b[k] * std::cos(n * t));
    }
    return v;
  }
  AngularFunction angular(int order = defaults::kFourierOrder) const {
    return AngularFunction::trig(a0, a, b, order);
  }
  json triples() const {
    json t = json::array();
    t.push_back({0, a0, 0.0});
    for (std::size_t k = 0; k < a.size(); ++k) t.push_back({static_cast<int>(k + 1), 0.5 * a[k], -0.5 * b[k]});
    return t;
  }
};

Trig random_trig(std::mt19937_64& rng, int degree, double a0, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Trig t;
  t.a0 = a0;
  for (int k = 1; k <= degree; ++k) {
    const double damp = scale / k;
    t.a.push_back(damp * u(rng));
    t.b.push_back(damp * u(rng));
  }
  return t;
}

// Brute-force integral of A(x0 + s w) . w over the real line.
double brute_line_integral(const std::function<Vec3(const Vec3&)>& A, const Line& l) {
  auto f = [&](double t) {
    const double c = std::cos(t);
    if (c <= 0.0) return 0.0;
    const double s = std::tan(t);
    return dot(A(l.at(s)), l.omega()) / (c * c);
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double h = 0.5 * kPi;
  return GK::integrate(f, -h, 0.0, 20, 1e-13) + GK::integrate(f, 0.0, h, 20, 1e-13);
}

Line random_line(std::mt19937_64& rng, double pmin, double pmax) {
  std::uniform_real_distribution<double> th(0.0, kTwoPi), p(pmin, pmax);
  std::bernoulli_distribution sign(0.5);
  return Line::from_angle_offset(th(rng), sign(rng) ? p(rng) : -p(rng));
}

PotentialConfig planar_config(const json& transversal, const json& short_range = {{"kind", "zero"}},
                              const json& scalar = {{"kind", "zero"}}) {
  return config_from_json({{"dimension", 2}, {"R", 1.0}, {"flux_profile", transversal},
                           {"short_range", short_range}, {"scalar", scalar}});
}

// 1. Decomposition round trip.
Outcome decomposition_round_trip() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> mean(-2.0, 2.0), lr(0.0, 2.0), th(0.0, kTwoPi);
  std::uniform_int_distribution<int> deg(1, 16);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Trig ahat = random_trig(rng, deg(rng), mean(rng), 1.0);
    const TransversalField A0 = TransversalField::planar(ahat.angular(16));
    const TransversalDecomposition d = decompose_transversal(A0);
    for (int k = 0; k < 200; ++k) {
      const double r = std::pow(10.0, lr(rng));
      const double t = th(rng);
      const Vec3 x(r * std::cos(t), r * std::sin(t));
      const Vec3 truth = perp(x) * (ahat(t) / (r * r));
      const double err = norm(reassemble(d, x) - truth) / std::max(norm(truth), 1e-300);
      worst = std::max(worst, err);
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-9 && secs < 5.0, fmt("max relative error %.2e, %.2f s", worst, secs)};
}

// 2. Pure AB line integrals equal alpha pi.
Outcome ab_constancy() {
  std::mt19937_64 rng(202);
  double worst = 0.0, worst_spread = 0.0, worst_brute = 0.0;
  for (double alpha : {0.25, 0.5, 1.0, 2.5}) {
    const PotentialConfig c = planar_config(json::array({{0, alpha, 0.0}}));
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k < 100; ++k) {
      const Line l = random_line(rng, 1.05, 20.0);
      const double v = line_integral_vector(c, l) * (l.orientation() > 0 ? 1.0 : -1.0);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      worst = std::max(worst, std::abs(v - alpha * kPi));
      const double brute = brute_line_integral([alpha](const Vec3& x) { return eval_ab_potential(alpha, x); }, l) *
                           (l.orientation() > 0 ? 1.0 : -1.0);
      worst_brute = std::max(worst_brute, std::abs(brute - alpha * kPi));
    }
    worst_spread = std::max(worst_spread, hi - lo);
  }
  return {worst < 1e-8 && worst_spread < 1e-10 && worst_brute < 1e-8,
          fmt("max |I - alpha pi| %.2e, spread %.2e, brute-force %.2e", worst, worst_spread, worst_brute)};
}

// 3. Gradient of a homogeneous degree-0 phase.
Outcome gradient_line_integral() {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> deg(1, 8);
  double worst = 0.0, worst_split = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Trig phi = random_trig(rng, deg(rng), 0.0, 1.0);
    // grad phi(theta) = phi'(theta) x_perp / |x|^2
    Trig dphi;
    for (std::size_t k = 0; k < phi.a.size(); ++k) {
      dphi.a.push_back((k + 1) * phi.b[k]);
      dphi.b.push_back(-(k + 1.0) * phi.a[k]);
    }
    const PotentialConfig c = planar_config(dphi.triples());
    const Line l = random_line(rng, 1.05, 10.0);
    const double tw = std::atan2(l.omega().y, l.omega().x);
    const double truth = phi(tw) - phi(tw + kPi);
    const double brute = brute_line_integral(
        [&](const Vec3& x) { return perp(x) * (phi.derivative(std::atan2(x.y, x.x)) / dot(x, x)); }, l);
    worst = std::max(worst, std::abs(brute - truth));
    worst_split = std::max(worst_split, std::abs(line_integral_vector(c, l) - truth));
  }
  return {worst < 1e-7 && worst_split < 1e-7,
          fmt("quadrature vs phi(w)-phi(-w) %.2e, split transform %.2e", worst, worst_split)};
}

// 4. Winding from phase families with decaying tails.
Outcome winding_resolution() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> amp(-2.5, 2.5), phase0(-0.3, 0.3);
  int ok = 0, total = 0;
  for (int m = -3; m <= 3; ++m) {
    for (double eps0 : {0.5, 1.0, 2.0}) {
      for (int rep = 0; rep < 10; ++rep) {
        const double a = amp(rng), b = phase0(rng);
        std::vector<PhaseSample> fam;
        for (int k = 0; k <= 400; ++k) {
          const double r = 1.5 * std::pow(10.0, 6.0 * k / 400.0);
          fam.push_back({r, kTwoPi * m + a * std::pow(r, -eps0) + b * std::pow(r, -eps0 - 1.0)});
        }
        ++total;
        try {
          if (resolve_winding(fam) == m) ++ok;
        } catch (const Error&) {
        }
      }
    }
  }
  return {ok == total && total == 210, fmt("%.0f of %.0f recovered", ok, total)};
}

// 5. Channels: unimodular, periodic in alpha, exact at integers.
Outcome channel_checks() {
  double worst_mod = 0.0, worst_shift = 0.0, worst_int = 0.0;
  for (int s = 1; s <= 9; ++s) {
    const double alpha = 0.1 * s;
    const ChannelSpectrum c = ab_kernel_channels(alpha, 32);
    worst_mod = std::max(worst_mod, c.unimodularity_defect());
    const ChannelSpectrum c2 = ab_kernel_channels(alpha + 2.0, 34);
    for (int k = -32; k <= 32; ++k) worst_shift = std::max(worst_shift, std::abs(c[k] - c2[k + 2]));
  }
  for (int a = -3; a <= 3; ++a) {
    const ChannelSpectrum c = ab_kernel_channels(a, 32);
    const double expect = (a % 2 == 0) ? 1.0 : -1.0;
    for (int k = -32; k <= 32; ++k) worst_int = std::max(worst_int, std::abs(c[k] - expect));
  }
  return {worst_mod < 1e-6 && worst_shift < 1e-8 && worst_int == 0.0,
          fmt("unimodularity %.2e, shift-by-2 %.2e, integer defect %.1e", worst_mod, worst_shift, worst_int)};
}

// 6. Near-diagonal growth exponent.
Outcome near_diagonal() {
  double lo = 1e300, hi = -1e300;
  for (double alpha : {0.1, 0.25, 0.5, 0.75, 0.9, 1.3, 2.5, -0.4}) {
    const double e = near_diagonal_exponent(alpha, 1e-3, 1e-1, 64);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  return {lo >= 0.9 && hi <= 1.1, fmt("exponents in [%.5f, %.5f]", lo, hi)};
}

// 7. Solver recovers applied gauges; integer flux is ambiguous.
Outcome solver_round_trip() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(707);
  std::uniform_int_distribution<int> deg(1, 8);
  const int M = 64;
  const RemainderGrid rem = RemainderGrid::sample(M, [](double a, double b) {
    return Complex(0.04, 0.02) * std::exp(std::cos(a - 1.0) + std::cos(b - 2.0) - 2.0);
  });
  int cases = 0, ok = 0;
  double worst_phi = 0.0;
  for (double alpha : {0.25, 0.5, 0.75}) {
    const Trig a_in = random_trig(rng, 4, 0.0, 0.3);
    const Trig a_out = random_trig(rng, 4, 0.0, 0.3);
    const ScatteringKernel S1 = assemble_kernel(alpha, a_in.angular(8), a_out.angular(8), rem, 1.0);
    for (int m = -3; m <= 3; ++m) {
      for (int rep = 0; rep < 3; ++rep) {
        const Trig phi = random_trig(rng, deg(rng), 0.0, 0.5);
        const AngularFunction phi_f = phi.angular(8);
        const ScatteringKernel S2 = apply_gauge_to_kernel(S1, GaugeElement::planar(m, phi_f));
        const SolverResult r = gauge_equivalence_solver(S1, S2);
        ++cases;
        if (r.verdict == Verdict::Equivalent && r.gauge && r.gauge->m() == m) {
          const double e = phi_f.coefficient_distance(r.gauge->phi());
          worst_phi = std::max(worst_phi, e);
          if (e < 1e-6) ++ok;
        }
      }
    }
  }
  int amb = 0, amb_total = 0;
  for (double alpha : {-1.0, 0.0, 1.0, 2.0}) {
    const ScatteringKernel S1 = assemble_kernel(alpha, AngularFunction(8), AngularFunction(8), rem, 1.0);
    for (int m = -3; m <= 3; ++m) {
      const ScatteringKernel S2 =
          apply_gauge_to_kernel(S1, GaugeElement::planar(m, random_trig(rng, 3, 0.0, 0.5).angular(8)));
      ++amb_total;
      if (gauge_equivalence_solver(S1, S2).verdict == Verdict::Ambiguous) ++amb;
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << ok << "/" << cases << " recovered, max |phi error| " << fmt("%.2e", worst_phi) << ", " << amb << "/"
     << amb_total << " ambiguous at integer flux, " << fmt("%.2f s", secs);
  return {ok == cases && amb == amb_total && secs < 30.0, os.str()};
}

// 8. Tomographic recovery at 180 x 256.
Outcome tomography() {
  const ParallelGeometry g{180, 256, 1.0, 3.0};
  const PotentialConfig ring = planar_config(
      json::array({{0, 0.3, 0.0}}),
      {{"kind", "ring_bump"}, {"params", {{"amplitude", 0.4}, {"center", 1.8}, {"width", 0.25}}}},
      {{"kind", "gaussian_ring"}, {"params", {{"amplitude", 1.0}, {"center", 1.5}, {"width", 0.25}}}});
  const GridScalarField V = radon_invert_scalar(forward_project_scalar(ring, g));
  const GridScalarField Vt = sample_on_annulus([&](const Vec3& x) { return ring.scalar(x); }, V.grid, g.rmin, g.rmax);
  const double ev = V.relative_l2_error(Vt);

  const GridScalarField B = recover_field_2d(forward_project_vector(ring, g));
  const VectorFn A1 = [&](const Vec3& x) { return ring.short_range(x); };
  const GridScalarField Bt = sample_on_annulus([&](const Vec3& x) { return fd_curl2(A1, x); }, B.grid, g.rmin, g.rmax);
  const double eb = B.relative_l2_error(Bt);

  const PotentialConfig grad = planar_config(
      json::array({{0, 0.3, 0.0}}),
      {{"kind", "gradient_gaussian"}, {"params", {{"amplitude", 0.3}, {"center", {1.8, 0.4}}, {"width", 0.3}}}});
  const GridScalarField Bg = recover_field_2d(forward_project_vector(grad, g));
  const GridScalarField Ag = sample_on_annulus([&](const Vec3& x) { return norm(grad.short_range(x)); }, Bg.grid,
                                               g.rmin, g.rmax);
  const double ratio = Bg.max_abs() / Ag.max_abs();
  return {ev < 0.05 && eb < 0.08 && ratio < 1e-3,
          fmt("V rel L2 %.4f, B rel L2 %.4f, gradient data max|B|/max|A| %.2e", ev, eb, ratio)};
}

// 9. Gauge scalar from curl-free differences; AB differences have residual flux.
Outcome gauge_scalar() {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> amp(-0.6, 0.6), rad(1.6, 3.0), th(0.0, kTwoPi), wid(0.3, 0.6),
      pexp(1.0, 3.0), rr(1.2, 3.8);
  double worst = 0.0;
  int solved = 0;
  for (int trial = 0; trial < 20; ++trial) {
    json terms = json::array();
    for (int k = 0; k < 2; ++k) {
      const double r = rad(rng), t = th(rng);
      terms.push_back({{"kind", "gradient_gaussian"},
                       {"params", {{"amplitude", amp(rng)}, {"center", {r * std::cos(t), r * std::sin(t)}},
                                   {"width", wid(rng)}}}});
    }
    terms.push_back({{"kind", "gradient_power"}, {"params", {{"amplitude", amp(rng)}, {"exponent", pexp(rng)}}}});
    const ShortRangeField A = make_short_range({{"kind", "sum"}, {"terms", terms}}, 2);
    try {
      const GaugeScalar L = find_gauge_scalar(A, 1.0, 4.0);
      ++solved;
      const ScalarFn Lf = [&L](const Vec3& x) { return L(x); };
      for (int k = 0; k < 25; ++k) {
        const double r = rr(rng), t = th(rng);
        const Vec3 x(r * std::cos(t), r * std::sin(t));
        worst = std::max(worst, norm(fd_gradient(Lf, x, 2) - A(x)));
      }
    } catch (const Error& e) {
      std::printf("  gauge scalar trial %d: %s\n", trial, e.what());
    }
  }
  int flux_errors = 0, flux_total = 0;
  for (double alpha : {0.1, 0.3, 0.5, -0.4, 1.5, 2.0}) {
    const ShortRangeField ab(2, [alpha](const Vec3& x) { return eval_ab_potential(alpha, x); }, Envelope{1.0, 1.0, 0.0});
    ++flux_total;
    try {
      find_gauge_scalar(ab, 1.0, 4.0);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ResidualFlux) ++flux_errors;
    }
  }
  std::ostringstream os;
  os << solved << "/20 solved, max |grad L - A| " << fmt("%.2e", worst) << ", " << flux_errors << "/" << flux_total
     << " AB inputs raise ResidualFlux";
  return {solved == 20 && worst < 1e-6 && flux_errors == flux_total, os.str()};
}

// 10. Identities in three dimensions.
Outcome spatial_identities() {
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_unit = [&] {
    Vec3 v;
    do v = Vec3(u(rng), u(rng), u(rng));
    while (norm(v) < 0.2);
    return normalized(v);
  };

  double worst_even = 0.0;
  const auto grid = SphereGrid::icosahedral(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 a = random_unit(), b = random_unit();
    const double ca = u(rng), cb = u(rng);
    auto g = [=](const Vec3& w) { return ca * std::exp(dot(a, w)) + cb * std::sin(2.0 * dot(b, w)) + dot(a, w) * dot(b, w); };
    const SphereFunction f = SphereFunction::sample(grid, [&](const Vec3& w) { return g(w) + g(-1.0 * w); });
    worst_even = std::max(worst_even, antipodal_defect(f).max_defect);
  }

  // A = grad psi with psi(x) = exp(-|x-c|^2/2) + x1 x2 x3 / (1+|x|^2)
  const Vec3 c(0.3, -0.2, 0.5);
  const VectorFn gradpsi = [c](const Vec3& x) {
    const Vec3 d = x - c;
    const double e = std::exp(-0.5 * dot(d, d));
    const double q = 1.0 + dot(x, x);
    const double p = x.x * x.y * x.z;
    return Vec3(-d.x * e + (x.y * x.z * q - 2.0 * x.x * p) / (q * q), -d.y * e + (x.x * x.z * q - 2.0 * x.y * p) / (q * q),
                -d.z * e + (x.x * x.y * q - 2.0 * x.z * p) / (q * q));
  };
  std::uniform_real_distribution<double> off(1.2, 3.0);
  double worst_plane = 0.0;
  for (int k = 0; k < 100; ++k) {
    const PlaneField pf = plane_restrict(gradpsi, Plane::from_normal(random_unit(), off(rng)), 1.0, 2.0, 8);
    worst_plane = std::max(worst_plane, pf.max_abs());
  }

  const auto lgrid = SphereGrid::icosahedral(2);
  const Vec3 bdir = random_unit();
  auto b = [&](const Vec3& w) { return std::cos(dot(bdir, w)) + 0.5 * w.z * w.z; };
  auto c3 = [&](const Vec3& w) { return 0.7 * w.x - 0.2; };
  const ScalarFn Bsyn = [&](const Vec3& x) {
    const double r = norm(x);
    const Vec3 w = x / r;
    return b(w) / (r * r) + c3(w) / (r * r * r);
  };
  const std::vector<double> radii{20.0, 40.0, 80.0, 160.0};
  const SphereFunction lead = extract_leading_order(Bsyn, lgrid, radii);
  double worst_lead = 0.0;
  for (std::size_t i = 0; i < lgrid->size(); ++i) {
    worst_lead = std::max(worst_lead, std::abs(lead.value(i) - b(lgrid->node(i))));
  }
  return {worst_even < 1e-12 && worst_plane < 1e-6 && worst_lead < 1e-6,
          fmt("even antipodal defect %.1e, gradient plane restriction %.2e, leading order %.2e", worst_even, worst_plane,
              worst_lead)};
}

// 11. End-to-end classify.
json base_config() {
  return {{"dimension", 2},
          {"R", 1.0},
          {"flux_profile", {{0, 0.35, 0.0}, {1, 0.05, -0.02}, {2, 0.0, 0.03}}},
          {"short_range",
           {{"kind", "ring_bump"}, {"params", {{"amplitude", 0.4}, {"center", 1.8}, {"width", 0.2}}}}},
          {"scalar", {{"kind", "gaussian_ring"}, {"params", {{"amplitude", 1.0}, {"center", 1.6}, {"width", 0.25}}}}}};
}

json classify_scenario(const json& config2) {
  return {{"schema", kScenarioSchema},
          {"name", "acceptance"},
          {"kind", "classify"},
          {"seed", 11},
          {"config1", base_config()},
          {"config2", config2},
          {"kernels",
           {{"grid", 64},
            {"energy", 1.0},
            {"remainder", {{"kind", "bump"}, {"amplitude", 0.05}, {"center", {1.0, 2.0}}, {"width", 0.6}}}}}};
}

Outcome end_to_end() {
  const std::vector<json> phis{json::array(), json::array({{1, 0.1, 0.05}, {3, 0.0, -0.02}}),
                               json::array({{2, -0.2, 0.0}, {5, 0.03, 0.01}})};
  const std::vector<json> Ls{
      {{"kind", "zero"}},
      {{"kind", "bump"}, {"params", {{"amplitude", 0.3}, {"center", {1.5, 0.5}}, {"width", 0.3}}}}};
  int eq = 0, total = 0;
  std::string first_failure;
  for (int m = -2; m <= 2; ++m) {
    for (const auto& phi : phis) {
      for (const auto& L : Ls) {
        const json g{{"m", m}, {"phi", phi}, {"L", L}};
        const Report r = run_classify(scenario_from_json(classify_scenario({{"gauge_of", "config1"}, {"gauge", g}})));
        ++total;
        if (r.verdict == Verdict::Equivalent) {
          ++eq;
        } else if (first_failure.empty()) {
          first_failure = " (first failure m=" + std::to_string(m) + ": " + r.reason + ")";
        }
      }
    }
  }
  const json bump_pair = classify_scenario(
      {{"gauge_of", "config1"},
       {"gauge", {{"m", 1}, {"phi", phis[1]}}},
       {"add_scalar", {{"kind", "bump"}, {"params", {{"amplitude", 0.2}, {"center", {2.0, 0.0}}, {"width", 0.3}}}}}});
  const Report b1 = run_classify(scenario_from_json(bump_pair));
  const Report b2 = run_classify(scenario_from_json(bump_pair));
  const std::string wkind = b1.witness ? b1.witness->value("kind", std::string("?")) : std::string("none");
  const bool witness = b1.verdict == Verdict::NotEquivalent && wkind.find("scalar") != std::string::npos;
  const bool deterministic = b1.to_json().dump() == b2.to_json().dump();
  const json gauged = classify_scenario({{"gauge_of", "config1"}, {"gauge", {{"m", -1}, {"phi", phis[2]}, {"L", Ls[1]}}}});
  const bool deterministic_eq =
      run_classify(scenario_from_json(gauged)).to_json().dump() == run_classify(scenario_from_json(gauged)).to_json().dump();
  std::ostringstream os;
  os << eq << "/" << total << " gauge pairs Equivalent" << first_failure << ", V bump "
     << (b1.verdict ? to_string(*b1.verdict) : "no verdict") << " with witness " << wkind
     << ", repeated runs " << (deterministic && deterministic_eq ? "identical" : "differ");
  return {eq == total && witness && deterministic && deterministic_eq, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"decomposition round trip", decomposition_round_trip},
      {"AB line-integral constancy", ab_constancy},
      {"gradient line integral", gradient_line_integral},
      {"winding resolution", winding_resolution},
      {"channel unitarity and flux periodicity", channel_checks},
      {"near-diagonal singularity", near_diagonal},
      {"solver round trip", solver_round_trip},
      {"tomographic recovery", tomography},
      {"gauge-scalar reconstruction", gauge_scalar},
      {"spatial identities", spatial_identities},
      {"end-to-end classify", end_to_end},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
