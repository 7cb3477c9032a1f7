#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "abgauge/error.hpp"
#include "abgauge/fields/catalog.hpp"
#include "abgauge/fields/operations.hpp"
#include "abgauge/pipeline/classify.hpp"
#include "abgauge/pipeline/reconstruct.hpp"
#include "abgauge/pipeline/report.hpp"
#include "abgauge/pipeline/scenario.hpp"
#include "abgauge/scattering/kernel_io.hpp"
#include "abgauge/scattering/solver.hpp"
#include "abgauge/tomography/radon.hpp"
#include "abgauge/tomography/xray.hpp"

using namespace abgauge;
using nlohmann::json;

namespace {

constexpr int kExitError = 1;

void print(const json& j) { std::cout << std::setw(2) << j << '\n'; }

// Flat list k re im k re im ... as Fourier triples.
AngularFunction phase_from_flat(const std::vector<double>& flat) {
  if (flat.size() % 3 != 0) fail(ErrorCode::InvalidArgument, "--phi-coeffs expects triples k re im");
  json triples = json::array();
  for (std::size_t i = 0; i < flat.size(); i += 3) {
    triples.push_back({static_cast<int>(std::lround(flat[i])), flat[i + 1], flat[i + 2]});
  }
  return angular_from_json(triples);
}

struct GeometryFlags {
  int angles = 180;
  int offsets = 256;
  double rmin = 1.0;
  double rmax = 3.0;
  bool angles_set = false, offsets_set = false, rmin_set = false, rmax_set = false;

  void attach(CLI::App* app) {
    app->add_option("--angles", angles, "number of projection angles")->check(CLI::PositiveNumber);
    app->add_option("--offsets", offsets, "number of offsets per angle")->check(CLI::PositiveNumber);
    app->add_option("--rmin", rmin, "smallest measured |offset|");
    app->add_option("--rmax", rmax, "largest |offset|");
  }
  void record(CLI::App* app) {
    angles_set = app->count("--angles") > 0;
    offsets_set = app->count("--offsets") > 0;
    rmin_set = app->count("--rmin") > 0;
    rmax_set = app->count("--rmax") > 0;
  }
  ParallelGeometry geometry() const { return {angles, offsets, rmin, rmax}; }
  void override(ParallelGeometry& g) const {
    if (angles_set) g.angles = angles;
    if (offsets_set) g.offsets = offsets;
    if (rmin_set) g.rmin = rmin;
    if (rmax_set) g.rmax = rmax;
  }
};

Report run_scenario(const Scenario& s) {
  switch (s.kind) {
    case ScenarioKind::Classify:
      return run_classify(s);
    case ScenarioKind::Reconstruct:
      return run_reconstruct(s);
    case ScenarioKind::KernelLab:
      return run_kernel_lab(s);
  }
  fail(ErrorCode::InvalidArgument, "unknown scenario kind");
}

json summary(const Report& r, const std::vector<std::string>& files) {
  json j = r.to_json();
  j["files"] = files;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aharonov-Bohm gauge toolkit: potentials, X-ray data, scattering kernels and gauge equivalence"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "abgauge 0.1.0");

  int exit_status = 0;

  // decompose
  auto* decompose = app.add_subcommand("decompose", "split a planar transversal potential into flux and gradient");
  std::string config_path;
  decompose->add_option("config", config_path, "configuration JSON")->required()->check(CLI::ExistingFile);
  decompose->callback([&] {
    const PotentialConfig c = load_config(config_path);
    if (c.dimension != 2) fail(ErrorCode::DimensionMismatch, "decompose works on planar configurations");
    const auto d = decompose_transversal(c.transversal);
    print({{"alpha", d.alpha}, {"a0", triples_to_json(d.a0)}});
  });

  // flux
  auto* flux_cmd = app.add_subcommand("flux", "flux through a circle around the obstacle");
  double flux_radius = 2.0;
  int flux_nodes = 2048;
  flux_cmd->add_option("config", config_path, "configuration JSON")->required()->check(CLI::ExistingFile);
  flux_cmd->add_option("--radius", flux_radius, "circle radius");
  flux_cmd->add_option("--nodes", flux_nodes, "trapezoid nodes")->check(CLI::PositiveNumber);
  flux_cmd->callback([&] {
    const PotentialConfig c = load_config(config_path);
    print({{"radius", flux_radius}, {"flux", flux(c, flux_radius, flux_nodes)}});
  });

  // xray
  auto* xray = app.add_subcommand("xray", "forward-project a configuration to parallel-beam X-ray data");
  GeometryFlags xgeo;
  std::string xkind = "scalar", xout;
  double tail_tol = defaults::kTailTol;
  xray->add_option("config", config_path, "configuration JSON")->required()->check(CLI::ExistingFile);
  xray->add_option("--kind", xkind, "scalar, vector or exponentiated")
      ->check(CLI::IsMember({"scalar", "vector", "exponentiated"}));
  xray->add_option("--tail-tol", tail_tol, "line-integral truncation tolerance");
  xray->add_option("-o,--out", xout, "output CSV")->required();
  xgeo.attach(xray);
  xray->callback([&] {
    const PotentialConfig c = load_config(config_path);
    if (c.dimension != 2) fail(ErrorCode::DimensionMismatch, "parallel-beam data are planar");
    const ParallelGeometry g = xgeo.geometry();
    const LineIntegralOptions opts{tail_tol, defaults::kSinogramRelTol};
    XRayData data;
    if (xkind == "scalar") {
      data = forward_project_scalar(c, g, opts).to_xray(XRayKind::Scalar, "V");
    } else if (xkind == "vector") {
      data = forward_project_vector(c, g, opts).to_xray(XRayKind::Vector, "A");
    } else {
      const XRayData lines = Sinogram(g).to_xray(XRayKind::Vector, "A");
      data = xray_vector(c, lines.lines, true, opts);
      data.geometry = g;
    }
    data.write_csv(xout);
    print({{"kind", to_string(data.kind)}, {"lines", data.lines.size()}, {"file", xout}});
  });

  // radon
  auto* radon = app.add_subcommand("radon", "invert X-ray data: V from scalar data, B from vector data");
  std::string rin, rout;
  ReconstructionOptions ropts;
  std::string truth_config;
  radon->add_option("data", rin, "X-ray CSV written by 'xray'")->required()->check(CLI::ExistingFile);
  radon->add_option("-o,--out", rout, "output field CSV")->required();
  radon->add_option("--grid", ropts.grid_size, "pixels per side (0: offsets/2)");
  radon->add_option("--iterations", ropts.completion_iterations, "gap completion passes");
  radon->add_option("--truth", truth_config, "configuration to report errors against")->check(CLI::ExistingFile);
  radon->callback([&] {
    const XRayData data = XRayData::read_csv(rin);
    const bool vector = data.kind != XRayKind::Scalar;
    if (data.kind == XRayKind::Exponentiated) {
      fail(ErrorCode::InvalidArgument, "invert vector data, not its exponential");
    }
    const GridScalarField f = vector ? recover_field_2d(data, ropts) : radon_invert_scalar(data, ropts);
    f.write_csv(rout);
    json j{{"field", vector ? "B" : "V"}, {"cells", f.finite_count()}, {"max_abs", f.max_abs()}, {"file", rout}};
    if (!truth_config.empty()) {
      const PotentialConfig c = load_config(truth_config);
      const ParallelGeometry g = *data.geometry;
      GridScalarField truth;
      if (vector) {
        const VectorFn A1 = [&c](const Vec3& x) { return c.short_range(x); };
        truth = sample_on_annulus([&](const Vec3& x) { return c.short_range.is_zero() ? 0.0 : fd_curl2(A1, x); },
                                  f.grid, g.rmin, g.rmax);
      } else {
        truth = sample_on_annulus([&c](const Vec3& x) { return c.scalar(x); }, f.grid, g.rmin, g.rmax);
      }
      j["relative_l2_error"] = truth.max_abs() > 0 ? f.relative_l2_error(truth) : f.max_abs();
    }
    print(j);
  });

  // kernel
  auto* kernel = app.add_subcommand("kernel", "Aharonov-Bohm scattering kernels");
  kernel->require_subcommand(1);
  double alpha = 0.5, energy = 1.0;
  int grid = 64, m = 0;
  std::vector<double> phi_coeffs;
  std::string kout, k1, k2;

  auto* kbuild = kernel->add_subcommand("build", "assemble a kernel from flux and phase");
  kbuild->add_option("--alpha", alpha, "flux")->required();
  kbuild->add_option("--phi-coeffs", phi_coeffs, "incoming/outgoing phase as triples k re im");
  kbuild->add_option("--grid", grid, "circle grid size")->check(CLI::PositiveNumber);
  kbuild->add_option("--energy", energy, "energy label");
  kbuild->add_option("-o,--out", kout, "kernel JSON")->required();
  kbuild->callback([&] {
    const AngularFunction a0 = phase_from_flat(phi_coeffs);
    const ScatteringKernel S = assemble_kernel(alpha, a0, a0, RemainderGrid::zero(grid), energy);
    save_kernel(S, kout);
    const auto ch = S.channels(32);
    print({{"file", kout}, {"alpha", alpha}, {"integer_part", integer_part(alpha)},
           {"unimodularity_defect", ch.unimodularity_defect()}});
  });

  auto* kgauge = kernel->add_subcommand("gauge", "apply e^{i(m theta + phi)} to a kernel");
  kgauge->add_option("kernel", k1, "kernel JSON")->required()->check(CLI::ExistingFile);
  kgauge->add_option("--m", m, "integer winding");
  kgauge->add_option("--phi-coeffs", phi_coeffs, "zero-mean phase as triples k re im");
  kgauge->add_option("-o,--out", kout, "kernel JSON")->required();
  kgauge->callback([&] {
    const ScatteringKernel S = load_kernel(k1);
    const ScatteringKernel G = apply_gauge_to_kernel(S, GaugeElement::planar(m, phase_from_flat(phi_coeffs)));
    save_kernel(G, kout);
    print({{"file", kout}, {"winding", G.winding()}});
  });

  auto* kcompare = kernel->add_subcommand("compare", "off-diagonal and channel distance of two kernels");
  int diag_margin = defaults::kDiagMarginCells;
  kcompare->add_option("kernel1", k1)->required()->check(CLI::ExistingFile);
  kcompare->add_option("kernel2", k2)->required()->check(CLI::ExistingFile);
  kcompare->add_option("--diag-margin", diag_margin, "excluded cells around the diagonal");
  kcompare->callback([&] {
    const auto d = kernel_distance_detail(load_kernel(k1), load_kernel(k2), diag_margin);
    print({{"distance", d.total()}, {"off_diagonal", d.off_diagonal}, {"channels", d.channels},
           {"worst", {d.worst_i, d.worst_j}}});
  });

  auto* ksolve = kernel->add_subcommand("solve", "decide gauge equivalence of two kernels");
  SolverOptions sopts;
  ksolve->add_option("kernel1", k1)->required()->check(CLI::ExistingFile);
  ksolve->add_option("kernel2", k2)->required()->check(CLI::ExistingFile);
  ksolve->add_option("--band", sopts.band, "near-diagonal offsets per row");
  ksolve->add_option("--match-tol", sopts.match_tol, "verification tolerance");
  ksolve->add_flag("--curl-nonzero", sopts.curl_nonzero, "declare curl A0 != 0 (n = 3)");
  ksolve->callback([&] {
    const SolverResult r = gauge_equivalence_solver(load_kernel(k1), load_kernel(k2), sopts);
    print(to_json(r));
    exit_status = r.verdict == Verdict::Ambiguous ? 2 : 0;
  });

  // scenario runners
  std::string scenario_path, out_dir, format = "all";
  GeometryFlags sgeo;
  auto scenario_command = [&](const char* name, const char* help, std::optional<ScenarioKind> expected) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("scenario", scenario_path, "scenario JSON")->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", out_dir, "report directory (default: the scenario's output.dir)");
    cmd->add_option("--format", format, "json, csv or all")->check(CLI::IsMember({"json", "csv", "all"}));
    cmd->add_option("--tail-tol", tail_tol, "line-integral truncation tolerance");
    sgeo.attach(cmd);
    cmd->callback([&, cmd, expected] {
      sgeo.record(cmd);
      Scenario s = load_scenario(scenario_path);
      if (expected && s.kind != *expected) {
        fail(ErrorCode::InvalidArgument, "scenario kind is " + to_string(s.kind) + ", expected " + to_string(*expected));
      }
      sgeo.override(s.geometry);
      if (cmd->count("--tail-tol")) s.tolerances.tail_tol = tail_tol;
      const Report r = run_scenario(s);
      const std::string dir = out_dir.empty() ? s.output_dir : out_dir;
      std::vector<std::string> files;
      if (!dir.empty()) files = emit_report(r, dir, report_format_from_string(format));
      print(summary(r, files));
      exit_status = exit_code(r);
    });
  };
  scenario_command("classify", "run a classify scenario", ScenarioKind::Classify);
  scenario_command("reconstruct", "run a reconstruct scenario", ScenarioKind::Reconstruct);
  scenario_command("report", "run any scenario and emit its report", std::nullopt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return exit_status;
}
