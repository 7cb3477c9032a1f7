#include "abgauge/pipeline/classify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "abgauge/error.hpp"
#include "abgauge/fields/catalog.hpp"
#include "abgauge/fields/operations.hpp"
#include "abgauge/scattering/kernel_io.hpp"
#include "abgauge/tomography/gauge_scalar.hpp"
#include "abgauge/tomography/xray.hpp"

namespace abgauge {

using nlohmann::json;

namespace {

// Runs fn, prefixing any library error with the stage name.
template <class Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    fail(e.code(), "stage " + name + ": " + e.what());
  }
}

std::vector<Vec3> comparison_points(const PotentialConfig& c) {
  std::vector<Vec3> pts;
  for (const Vec3& x : c.probe_points()) {
    if (norm(x) >= 1.25 * c.obstacle_radius) pts.push_back(x);
  }
  return pts;
}

void add_metadata(Report& report, const Scenario& s) {
  bool convex = true, rapid = true;
  for (const auto& c : s.configs) {
    convex = convex && c.config.convex_obstacle;
    rapid = rapid && c.config.rapid_decay;
  }
  report.metadata["dimension"] = std::to_string(s.configs.front().config.dimension);
  report.metadata["obstacle"] = convex ? "convex" : "non-convex";
  report.metadata["regime"] = convex ? "proven regime" : "outside proven regime";
  report.metadata["decay"] = rapid ? "rapid decay declared" : "rapid decay not declared";
  report.metadata["seed"] = std::to_string(s.seed);
}

ScatteringKernel planar_kernel_for(const PotentialConfig& c, const KernelSettings& k) {
  const TransversalDecomposition d = decompose_transversal(c.transversal);
  return assemble_kernel(d.alpha, d.a0, d.a0, remainder_from_json(k.remainder, k.grid), k.energy, k.bound);
}

std::vector<Complex> sphere_remainder(const json& spec, const SphereGrid& grid) {
  const std::string kind = spec.value("kind", std::string("zero"));
  const std::size_t n = grid.size();
  std::vector<Complex> v(n * n);
  if (kind == "zero") return v;
  if (kind != "bump") fail(ErrorCode::InvalidArgument, "unknown remainder kind '" + kind + "'");
  const double a = spec.value("amplitude", 0.1);
  const double w = spec.value("width", 0.5);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) v[i * n + j] = a * std::exp((dot(grid.node(i), grid.node(j)) - 1.0) / (w * w));
    }
  return v;
}

ScatteringKernel spatial_base_kernel(const KernelSettings& k, int level) {
  auto grid = SphereGrid::icosahedral(level);
  return ScatteringKernel::spatial(grid, k.sigma, SphereFunction::zero(grid), SphereFunction::zero(grid),
                                   sphere_remainder(k.remainder, *grid), k.bound, k.energy);
}

double max_curl_3d(const PotentialConfig& c) {
  const auto pts = comparison_points(c);
  const auto B = curl([&c](const Vec3& x) { return c.transversal(x); }, c.obstacle_radius, pts);
  double worst = 0.0;
  for (const auto& b : B) worst = std::max(worst, b.max_abs());
  return worst;
}

// Lines used to localise a scalar mismatch.
std::vector<Line> probe_lines(const PotentialConfig& c, std::uint64_t seed) {
  std::vector<Line> lines;
  const double R = c.obstacle_radius;
  if (c.dimension == 2) {
    const ParallelGeometry g{36, 24, R, 4.0 * R};
    for (int i = 0; i < g.angles; ++i)
      for (int j = 0; j < g.offsets; ++j)
        if (g.measured(j)) lines.push_back(g.line(i, j));
    return lines;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  std::uniform_real_distribution<double> U(1.05 * R, 4.0 * R);
  while (lines.size() < 400) {
    const Vec3 w = normalized(Vec3(N(rng), N(rng), N(rng)));
    Vec3 q(N(rng), N(rng), N(rng));
    q = q - dot(q, w) * w;
    if (norm(q) < 1e-6) continue;
    lines.push_back(Line::make(U(rng) * normalized(q), w, 3));
  }
  return lines;
}

Witness scalar_witness(const PotentialConfig& c1, const PotentialConfig& c2, std::uint64_t seed, double tail_tol) {
  const LineIntegralOptions opts{tail_tol, defaults::kSinogramRelTol};
  Witness w;
  w.kind = "scalar_line_integral";
  for (const Line& line : probe_lines(c1, seed)) {
    const double a = line_integral_scalar(c1, line, opts);
    const double b = line_integral_scalar(c2, line, opts);
    if (std::abs(a - b) > w.magnitude) {
      w.magnitude = std::abs(a - b);
      w.value1 = a;
      w.value2 = b;
      if (c1.dimension == 2) {
        w.theta = std::atan2(line.omega().y, line.omega().x);
        w.theta_prime = line.orientation() >= 0 ? line.distance_to_origin() : -line.distance_to_origin();
      }
    }
  }
  w.description = "line integrals of V differ";
  if (c1.dimension == 2) w.description += " (theta = line direction, theta_prime = signed offset)";
  return w;
}

json witness_json(const Witness& w) {
  json j = to_json(w);
  if (w.kind == "scalar_line_integral") {
    j["theta"] = w.theta;
    j["offset"] = w.theta_prime;
  }
  return j;
}

void set_not_equivalent(Report& r, const Witness& w, const std::string& reason) {
  r.verdict = Verdict::NotEquivalent;
  r.witness = witness_json(w);
  r.reason = reason;
}

}  // namespace

RemainderGrid remainder_from_json(const json& spec, int M) {
  const std::string kind = spec.value("kind", std::string("zero"));
  if (kind == "zero") return RemainderGrid::zero(M);
  if (kind != "bump") fail(ErrorCode::InvalidArgument, "unknown remainder kind '" + kind + "'");
  const double a = spec.value("amplitude", 0.1);
  const auto c = spec.value("center", std::vector<double>{0.0, 0.0});
  if (c.size() != 2) fail(ErrorCode::InvalidArgument, "remainder bump center needs two angles");
  const double w = spec.value("width", 0.5);
  return RemainderGrid::sample(M, [=](double t, double tp) {
    return Complex(a * std::exp((std::cos(t - c[0]) - 1.0) / (w * w) + (std::cos(tp - c[1]) - 1.0) / (w * w)), 0.0);
  });
}

ScenarioKernels scenario_kernels(const Scenario& s) {
  if (s.configs.size() != 2) fail(ErrorCode::InvalidArgument, "two configurations are required");
  const auto& c1 = s.configs[0];
  const auto& c2 = s.configs[1];
  const int dim = c1.config.dimension;
  const KernelSettings& k = s.kernels;
  ScenarioKernels out{dim == 2 ? planar_kernel_for(c1.config, k) : spatial_base_kernel(k, k.level),
                      ScatteringKernel::planar(0.0, AngularFunction(1), AngularFunction(1), RemainderGrid::zero(1),
                                               {}, 1.0),
                      {},
                      s.solver.curl_nonzero};

  if (dim == 3) {
    if (s.solver.curl_nonzero) out.provenance.push_back("curl A0 != 0 declared in the scenario");
    const double c = max_curl_3d(c1.config);
    if (c > s.tolerances.curl_tol) {
      out.curl_nonzero = true;
      out.provenance.push_back("curl A0 != 0 measured on config1 (max |curl A0| = " + std::to_string(c) + ")");
    }
    if (c2.gauge && c2.gauge->has_psi()) {
      // Kernel nodes coincide with the gauge phase nodes.
      out.kernel1 = spatial_base_kernel(k, c2.gauge->psi().grid().level());
    }
  }

  if (k.kernel1_path && k.kernel2_path) {
    out.kernel1 = load_kernel(*k.kernel1_path);
    out.kernel2 = load_kernel(*k.kernel2_path);
    out.provenance.push_back("kernels loaded from " + *k.kernel1_path + " and " + *k.kernel2_path);
    return out;
  }
  if (k.kernel1_path) {
    out.kernel1 = load_kernel(*k.kernel1_path);
    out.provenance.push_back("kernel1 loaded from " + *k.kernel1_path);
  } else if (dim == 2) {
    out.provenance.push_back("kernel1 assembled from the flux and angular gradient of config1 (AB family)");
  } else {
    out.provenance.push_back("kernel1 is the declared base kernel i sigma/|w - w'|^2 on level " +
                             std::to_string(out.kernel1.sphere_grid()->level()));
  }

  if (c2.gauge) {
    out.kernel2 = apply_gauge_to_kernel(out.kernel1, *c2.gauge);
    out.provenance.push_back("kernel2 synthesised from kernel1 by the gauge action of the declared gauge");
    if (c2.perturbed) {
      out.provenance.push_back("config2 perturbations are not represented in kernel2 (no forward scattering solver)");
    }
  } else if (c1.source == c2.source) {
    out.kernel2 = out.kernel1;
    out.provenance.push_back("identical configurations share one kernel");
  } else if (dim == 2) {
    out.kernel2 = planar_kernel_for(c2.config, k);
    out.provenance.push_back("kernel2 assembled from the flux and angular gradient of config2 (AB family)");
  } else {
    fail(ErrorCode::InvalidArgument,
         "n = 3 classify needs kernel files or config2 declared as a gauge of config1");
  }
  return out;
}

Report run_classify(const Scenario& s) {
  if (s.kind != ScenarioKind::Classify) fail(ErrorCode::InvalidArgument, "scenario kind is not classify");
  s.validate();
  Report r;
  r.scenario = s.name;
  r.kind = to_string(s.kind);
  add_metadata(r, s);
  const PotentialConfig& c1 = s.configs[0].config;
  const PotentialConfig& c2 = s.configs[1].config;
  const int dim = c1.dimension;
  const Tolerances& tol = s.tolerances;

  ScenarioKernels kernels = stage("kernels", [&] { return scenario_kernels(s); });
  r.provenance = kernels.provenance;
  SolverOptions sopts = s.solver;
  sopts.curl_nonzero = kernels.curl_nonzero;
  const SolverResult sr = stage("solver", [&] { return gauge_equivalence_solver(kernels.kernel1, kernels.kernel2, sopts); });
  for (const auto& p : sr.provenance) r.provenance.push_back(p);
  r.info("solver.usable_entries", sr.usable_entries, "gauge_equivalence_solver");
  r.info("solver.fit_residual", sr.fit_residual, "gauge_equivalence_solver");
  if (sr.antipodal) r.info("solver.antipodal_defect", sr.antipodal->max_defect, "antipodal_defect");
  r.stages.push_back("solver: " + to_string(sr.verdict));

  if (sr.verdict == Verdict::Ambiguous) {
    r.verdict = Verdict::Ambiguous;
    r.reason = sr.reason;
    return r;
  }
  if (sr.verdict == Verdict::NotEquivalent) {
    r.add("solver.kernel_distance", sr.verification_distance, sopts.match_tol, "kernel_distance");
    r.verdict = Verdict::NotEquivalent;
    r.reason = sr.reason;
    if (sr.witness) r.witness = to_json(*sr.witness);
    return r;
  }
  r.add("solver.kernel_distance", sr.verification_distance, sopts.match_tol, "kernel_distance");
  const GaugeElement g = *sr.gauge;

  // Undo the kernel-level gauge on config2.
  const PotentialConfig back = stage("inverse-gauge", [&] { return apply_gauge_to_potential(c2, g.inverse()); });
  r.stages.push_back("inverse-gauge: applied");

  // Transversal parts.
  bool transversal_ok = true;
  Witness tw;
  tw.kind = "transversal";
  stage("transversal", [&] {
    if (dim == 2) {
      const auto d1 = decompose_transversal(c1.transversal);
      const auto d2 = decompose_transversal(back.transversal);
      const double da = std::abs(d1.alpha - d2.alpha);
      const double dp = d1.a0.without_mean().coefficient_distance(d2.a0.without_mean());
      transversal_ok = r.add("transversal.alpha_difference", da, tol.transversal_match, "decompose_transversal").passed;
      transversal_ok =
          r.add("transversal.a0_coefficient_distance", dp, tol.transversal_match, "decompose_transversal").passed &&
          transversal_ok;
      tw.value1 = d1.alpha;
      tw.value2 = d2.alpha;
      tw.magnitude = std::max(da, dp);
      tw.description = "transversal parts differ after removing the kernel gauge";
    } else {
      double worst = 0.0;
      for (const Vec3& x : comparison_points(c1)) {
        const double d = norm(c1.transversal(x) - back.transversal(x)) * norm(x);
        if (d > worst) {
          worst = d;
          tw.value1 = norm(c1.transversal(x));
          tw.value2 = norm(back.transversal(x));
        }
      }
      tw.magnitude = worst;
      tw.description = "transversal parts differ after removing the kernel gauge (max |x||A0 - A0'|)";
      transversal_ok = r.add("transversal.max_scaled_difference", worst, tol.transversal_match,
                             "transversal pointwise comparison").passed;
    }
    return 0;
  });
  r.stages.push_back(std::string("transversal: ") + (transversal_ok ? "match" : "mismatch"));
  if (!transversal_ok) {
    set_not_equivalent(r, tw, "transversal parts differ");
    return r;
  }

  // Short-range parts differ by a gradient.
  const ShortRangeField diff = back.short_range - c1.short_range;
  std::optional<GaugeScalar> L1;
  bool short_ok = true;
  if (!(back.short_range.is_zero() && c1.short_range.is_zero())) {
    GaugeScalarOptions gopts;
    gopts.curl_tol = tol.curl_tol;
    gopts.loop_tol = tol.loop_tol;
    gopts.path_tol = tol.path_tol;
    gopts.tail_tol = tol.tail_tol;
    gopts.seed = s.seed;
    const double r_outer = std::max(s.geometry.rmax, 4.0 * c1.obstacle_radius);
    try {
      L1 = stage("short-range", [&] { return find_gauge_scalar(diff, c1.obstacle_radius, r_outer, gopts); });
      r.add("short_range.max_curl", L1->max_curl(), tol.curl_tol, "find_gauge_scalar");
      r.add("short_range.path_defect", L1->max_path_defect(), tol.path_tol, "find_gauge_scalar");
      if (dim == 2) r.add("short_range.loop_integral", std::abs(L1->loop_integral()), tol.loop_tol, "find_gauge_scalar");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotCurlFree && e.code() != ErrorCode::ResidualFlux) throw;
      short_ok = false;
      Witness w;
      w.kind = e.code() == ErrorCode::NotCurlFree ? "short_range_curl" : "short_range_flux";
      w.description = e.what();
      set_not_equivalent(r, w, "short-range parts do not differ by a gradient");
    }
  } else {
    r.stages.push_back("short-range: both zero");
  }
  if (!short_ok) {
    r.stages.push_back("short-range: not a gradient");
    return r;
  }
  if (L1) r.stages.push_back("short-range: gradient found");

  // Scalar potentials are gauge invariant.
  double vdiff = 0.0;
  for (const Vec3& x : comparison_points(c1)) vdiff = std::max(vdiff, std::abs(c1.scalar(x) - c2.scalar(x)));
  const bool scalar_ok = r.add("scalar.max_difference", vdiff, tol.scalar_match, "pointwise V comparison").passed;
  r.stages.push_back(std::string("scalar: ") + (scalar_ok ? "match" : "mismatch"));
  if (!scalar_ok) {
    const Witness w = stage("scalar", [&] { return scalar_witness(c1, c2, s.seed, tol.tail_tol); });
    set_not_equivalent(r, w, "scalar potentials differ");
    return r;
  }

  GaugeElement full = g;
  if (dim == 2) {
    full = GaugeElement::planar(g.m(), g.phi(), L1 ? L1->as_potential() : ScalarPotential::zero(2));
  } else {
    full = GaugeElement::spatial(g.psi(), L1 ? L1->as_potential() : ScalarPotential::zero(3));
  }
  r.gauge = gauge_to_json(full);
  if (L1 && dim == 2) {
    const double r_outer = std::max(s.geometry.rmax, 4.0 * c1.obstacle_radius);
    r.fields.push_back({"gauge_scalar_L1", L1->sample(AnnulusRegion::around(c1.obstacle_radius, r_outer, 64))});
  }

  // Agreement with a declared gauge.
  if (const auto& declared = s.configs[1].gauge) {
    if (dim == 2) {
      r.add("gauge.m_difference", std::abs(declared->m() - g.m()), 0.0, "gauge_equivalence_solver");
      r.add("gauge.phi_max_error", declared->phi().without_mean().coefficient_distance(g.phi()), tol.phase_fit,
            "gauge_equivalence_solver");
    } else {
      r.add("gauge.psi_max_error", declared->psi().without_mean().max_abs_difference(g.psi()), tol.phase_fit,
            "gauge_equivalence_solver");
    }
    double lerr = 0.0;
    for (const Vec3& x : comparison_points(c1)) {
      const double l = L1 ? (*L1)(x) : 0.0;
      lerr = std::max(lerr, std::abs(l - declared->L()(x)));
    }
    r.add("gauge.L_max_error", lerr, tol.phase_fit, "find_gauge_scalar");
  }

  r.verdict = r.all_passed() ? Verdict::Equivalent : Verdict::NotEquivalent;
  r.reason = r.all_passed() ? "all stages agree within tolerance" : "a stage exceeded its tolerance";
  return r;
}

Report run_kernel_lab(const Scenario& s) {
  if (s.kind != ScenarioKind::KernelLab) fail(ErrorCode::InvalidArgument, "scenario kind is not kernel-lab");
  Report r;
  r.scenario = s.name;
  r.kind = to_string(s.kind);
  const KernelSettings& k = s.kernels;
  const int dim = s.kernel_gauge ? s.kernel_gauge->dimension() : 2;
  ScatteringKernel S1 = stage("kernels", [&] {
    if (k.kernel1_path) return load_kernel(*k.kernel1_path);
    if (dim == 2) {
      return assemble_kernel(k.alpha, angular_from_json(k.phase_in), angular_from_json(k.phase_out),
                             remainder_from_json(k.remainder, k.grid), k.energy, k.bound);
    }
    const int level = s.kernel_gauge && s.kernel_gauge->has_psi() ? s.kernel_gauge->psi().grid().level() : k.level;
    return spatial_base_kernel(k, level);
  });
  r.provenance.push_back(k.kernel1_path ? "kernel loaded from " + *k.kernel1_path : "kernel assembled from parameters");
  const GaugeElement g = s.kernel_gauge ? *s.kernel_gauge : GaugeElement::identity(S1.dimension());
  const ScatteringKernel S2 = stage("gauge", [&] { return apply_gauge_to_kernel(S1, g); });
  r.provenance.push_back("kernel2 synthesised by the gauge action");

  if (S1.dimension() == 2) {
    const auto ch = S1.channels(s.solver.channel_cutoff);
    r.add("kernel.channel_unimodularity", ch.unimodularity_defect(), 1e-6, "ab_kernel_channels");
    r.add("kernel.remainder_bound_ratio", S1.remainder_bound_ratio(), 1.0, "assemble_kernel");
    if (sin_pi(S1.effective_alpha()) != 0.0) {
      const double e = near_diagonal_exponent(S1.effective_alpha());
      r.add("kernel.near_diagonal_exponent_deviation", std::abs(e - 1.0), 0.1, "near_diagonal_exponent");
    }
    ReportTable channels{"kernel_channels", {"k", "re", "im"}, {}};
    for (int q = -ch.cutoff(); q <= ch.cutoff(); ++q) channels.rows.push_back({double(q), ch[q].real(), ch[q].imag()});
    r.tables.push_back(channels);
    ReportTable slice{"kernel_slice", {"theta", "re1", "im1", "re2", "im2"}, {}};
    for (int i = 1; i < S1.grid_size(); ++i) {
      const Complex a = S1.at(i, 0), b = S2.at(i, 0);
      slice.rows.push_back({kTwoPi * i / S1.grid_size(), a.real(), a.imag(), b.real(), b.imag()});
    }
    r.tables.push_back(slice);
  }
  r.info("kernel.distance", kernel_distance(S1, S2, s.solver.diag_margin, s.solver.channel_cutoff), "kernel_distance");
  SolverOptions sopts = s.solver;
  const SolverResult sr = stage("solver", [&] { return gauge_equivalence_solver(S1, S2, sopts); });
  for (const auto& p : sr.provenance) r.provenance.push_back(p);
  r.verdict = sr.verdict;
  r.reason = sr.reason;
  if (sr.witness) r.witness = to_json(*sr.witness);
  if (sr.gauge) {
    r.gauge = gauge_to_json(*sr.gauge);
    if (S1.dimension() == 2) {
      r.add("gauge.m_difference", std::abs(sr.gauge->m() - g.m()), 0.0, "gauge_equivalence_solver");
      r.add("gauge.phi_max_error", g.phi().without_mean().coefficient_distance(sr.gauge->phi()), s.tolerances.phase_fit,
            "gauge_equivalence_solver");
    }
  }
  if (sr.verdict != Verdict::Ambiguous) {
    r.add("solver.kernel_distance", sr.verification_distance, sopts.match_tol, "kernel_distance");
  }
  return r;
}

}  // namespace abgauge
