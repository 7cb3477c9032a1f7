#include "abgauge/pipeline/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abgauge/error.hpp"
#include "abgauge/fields/differentiation.hpp"
#include "abgauge/fields/operations.hpp"
#include "abgauge/parallel.hpp"
#include "abgauge/tomography/restriction.hpp"

namespace abgauge {

namespace {

template <class Fn>
auto stage(const std::string& name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    fail(e.code(), "stage " + name + ": " + e.what());
  }
}

// Relative L2 error when the truth is nonzero, otherwise the largest |value|.
void add_field_error(Report& r, const std::string& name, const GridScalarField& rec, const GridScalarField& truth,
                     double rel_tol, double abs_tol, const std::string& op) {
  if (truth.max_abs() > 0.0) {
    r.add(name + ".relative_l2_error", rec.relative_l2_error(truth), rel_tol, op);
  } else {
    r.add(name + ".max_abs", rec.max_abs(), abs_tol, op);
  }
}

void reconstruct_planar(Report& r, const Scenario& s, const PotentialConfig& c, const std::string& tag) {
  const ParallelGeometry& geo = s.geometry;
  const LineIntegralOptions lopts{s.tolerances.tail_tol, defaults::kSinogramRelTol};
  const ReconstructionOptions& ropts = s.reconstruction;

  const Sinogram scalar = stage("xray-scalar", [&] {
    return c.scalar.is_zero() ? Sinogram(geo) : forward_project_scalar(c, geo, lopts);
  });
  const Sinogram vector = stage("xray-vector", [&] { return forward_project_vector(c, geo, lopts); });
  r.sinograms.push_back({tag + "sinogram_scalar", scalar});
  r.sinograms.push_back({tag + "sinogram_vector", vector});
  r.stages.push_back(tag + "xray: " + std::to_string(geo.angles) + " x " + std::to_string(geo.offsets));

  const FluxEstimate flux = stage("flux", [&] { return estimate_flux(vector); });
  const double alpha_true = decompose_transversal(c.transversal).alpha;
  r.info(tag + "flux.alpha", flux.alpha, "estimate_flux");
  r.add(tag + "flux.alpha_error", std::abs(flux.alpha - alpha_true), s.tolerances.flux, "estimate_flux");
  r.info(tag + "flux.spread", flux.spread, "estimate_flux");

  const GridScalarField V = stage("radon", [&] { return radon_invert_scalar(scalar, ropts); });
  const GridScalarField Vt = sample_on_annulus([&c](const Vec3& x) { return c.scalar(x); }, V.grid, geo.rmin, geo.rmax);
  add_field_error(r, tag + "V", V, Vt, s.tolerances.reconstruction_v, 1e-9, "radon_invert_scalar");
  r.fields.push_back({tag + "V_reconstructed", V});
  r.fields.push_back({tag + "V_truth", Vt});

  const GridScalarField B = stage("field", [&] { return recover_field_2d(vector, ropts); });
  const VectorFn A1 = [&c](const Vec3& x) { return c.short_range(x); };
  const GridScalarField Bt = sample_on_annulus(
      [&](const Vec3& x) { return c.short_range.is_zero() ? 0.0 : fd_curl2(A1, x); }, B.grid, geo.rmin, geo.rmax);
  add_field_error(r, tag + "B", B, Bt, s.tolerances.reconstruction_b, 1e-6, "recover_field_2d");
  r.fields.push_back({tag + "B_reconstructed", B});
  r.fields.push_back({tag + "B_truth", Bt});
  r.stages.push_back(tag + "inversion: done");
}

void reconstruct_spatial(Report& r, const Scenario& s, const PotentialConfig& c, const std::string& tag) {
  const ParallelGeometry geo{s.geometry.angles, s.geometry.offsets, 0.0, s.geometry.rmax};
  const LineIntegralOptions lopts{s.tolerances.tail_tol, defaults::kSinogramRelTol};
  const VectorFn A = [&c](const Vec3& x) { return c.vector_potential(x); };
  for (double offset : s.planes.offsets) {
    const std::string ptag = tag + "plane_" + std::to_string(offset).substr(0, 6) + ".";
    const Sinogram data = stage("xray-plane", [&] { return forward_project_plane(c, offset, geo, lopts); });
    const GridScalarField B = stage("field", [&] { return recover_field_2d(data, s.reconstruction); });
    GridScalarField Bt(B.grid);
    parallel_for(static_cast<std::size_t>(B.grid.ny), [&](std::size_t jj) {
      const int j = static_cast<int>(jj);
      for (int i = 0; i < B.grid.nx; ++i) {
        if (std::isnan(B.at(i, j))) continue;
        const Vec3 p = B.grid.point(i, j);
        Bt.at(i, j) = fd_curl3(A, Vec3(p.x, p.y, offset)).b12;
      }
    });
    add_field_error(r, ptag + "B12", B, Bt, s.tolerances.reconstruction_b, 1e-6, "recover_field_2d");
    r.fields.push_back({ptag + "B12_reconstructed", B});
    r.fields.push_back({ptag + "B12_truth", Bt});
    const PlaneField restricted = stage("plane-restrict", [&] {
      return plane_restrict(A, Plane::from_normal({0, 0, 1}, offset), c.obstacle_radius, s.geometry.rmax, 32);
    });
    r.info(ptag + "B12_restricted_max_abs", restricted.max_abs(), "plane_restrict");
  }
  r.stages.push_back(tag + "plane sweep: " + std::to_string(s.planes.offsets.size()) + " planes");

  const ScalarFn Br = [&A](const Vec3& x) { return dot(fd_curl3(A, x).as_vector(), normalized(x)); };
  const auto grid = SphereGrid::icosahedral(s.planes.sphere_level);
  const SphereFunction lead =
      stage("leading-order", [&] { return extract_leading_order(Br, grid, s.planes.radii); });
  double m = 0.0;
  for (double v : lead.values()) m = std::max(m, std::abs(v));
  r.info(tag + "leading_order.max_abs", m, "extract_leading_order");
  ReportTable t{tag + "leading_order", {"w1", "w2", "w3", "value"}, {}};
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const Vec3& w = grid->node(i);
    t.rows.push_back({w.x, w.y, w.z, lead.value(i)});
  }
  r.tables.push_back(t);
}

}  // namespace

FluxEstimate estimate_flux(const Sinogram& v) {
  const ParallelGeometry& g = v.geometry;
  // Outermost measured offset pair p_j = -p_{offsets-1-j}.
  int jp = -1;
  for (int j = g.offsets - 1; j >= 0; --j)
    if (g.measured(j) && g.offset(j) > 0.0) {
      jp = j;
      break;
    }
  if (jp < 0) fail(ErrorCode::InsufficientCoverage, "no measured positive offset");
  const int jm = g.offsets - 1 - jp;
  FluxEstimate f;
  f.offset = g.offset(jp);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
  for (int i = 0; i < g.angles; ++i) {
    const double a = (v.at(i, jp) - v.at(i, jm)) / kTwoPi;
    sum += a;
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  f.alpha = sum / g.angles;
  f.spread = hi - lo;
  return f;
}

Sinogram forward_project_plane(const PotentialConfig& config, double c, const ParallelGeometry& geometry,
                               const LineIntegralOptions& opts) {
  if (config.dimension != 3) fail(ErrorCode::DimensionMismatch, "plane sweeps need a spatial configuration");
  if (std::abs(c) <= config.obstacle_radius) fail(ErrorCode::PlaneHitsObstacle, "plane meets the obstacle");
  geometry.validate();
  Sinogram s(geometry);
  parallel_for(static_cast<std::size_t>(geometry.angles), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    for (int j = 0; j < geometry.offsets; ++j) {
      if (!geometry.measured(j)) continue;
      const Line l2 = geometry.line(i, j);
      const Line l3 = Line::make(l2.x0() + Vec3(0.0, 0.0, c), l2.omega(), 3);
      s.at(i, j) = line_integral_vector(config, l3, opts);
    }
  });
  return s;
}

Report run_reconstruct(const Scenario& s) {
  if (s.kind != ScenarioKind::Reconstruct) fail(ErrorCode::InvalidArgument, "scenario kind is not reconstruct");
  s.validate();
  Report r;
  r.scenario = s.name;
  r.kind = to_string(s.kind);
  const auto& first = s.configs.front().config;
  r.metadata["dimension"] = std::to_string(first.dimension);
  r.metadata["regime"] = first.convex_obstacle ? "proven regime" : "outside proven regime";
  r.metadata["decay"] = first.rapid_decay ? "rapid decay declared" : "rapid decay not declared";
  r.provenance.push_back("synthetic data forward-projected from the scenario configuration");
  for (std::size_t k = 0; k < s.configs.size(); ++k) {
    const std::string tag = s.configs.size() > 1 ? "config" + std::to_string(k + 1) + "." : "";
    const auto& c = s.configs[k].config;
    if (c.dimension == 2) {
      reconstruct_planar(r, s, c, tag);
    } else {
      reconstruct_spatial(r, s, c, tag);
    }
  }
  return r;
}

}  // namespace abgauge
