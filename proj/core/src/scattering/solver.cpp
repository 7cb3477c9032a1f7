#include "abgauge/scattering/solver.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "abgauge/error.hpp"
#include "abgauge/fields/catalog.hpp"

namespace abgauge {

namespace {

double wrap(double x) { return std::remainder(x, kTwoPi); }

Complex unit_of(Complex z) {
  const double a = std::abs(z);
  return a > 0.0 ? z / a : Complex{};
}

std::string describe(const char* what, double value) {
  std::ostringstream os;
  os << what << " " << value;
  return os.str();
}

void check_pair(const ScatteringKernel& S1, const ScatteringKernel& S2) {
  if (S1.dimension() != S2.dimension()) fail(ErrorCode::DimensionMismatch, "kernel dimensions differ");
  if (S1.grid_size() != S2.grid_size()) fail(ErrorCode::GridMismatch, "kernel grids differ in size");
  if (S1.energy() != S2.energy()) fail(ErrorCode::InvalidArgument, "kernels carry different energy labels");
}

Witness off_diagonal_witness(const ScatteringKernel& fitted, const ScatteringKernel& S2, const KernelDistance& d) {
  Witness w;
  w.kind = "off_diagonal";
  w.node_i = d.worst_i;
  w.node_j = d.worst_j;
  if (S2.dimension() == 2) {
    const int M = S2.grid_size();
    w.theta = kTwoPi * d.worst_i / M;
    w.theta_prime = kTwoPi * d.worst_j / M;
  }
  w.value1 = fitted.at(d.worst_i, d.worst_j);
  w.value2 = S2.at(d.worst_i, d.worst_j);
  w.magnitude = d.off_diagonal;
  w.description = "kernels differ off the diagonal after the best-fit gauge";
  return w;
}

// Channel where S2 differs most from S1 shifted by the nearest integer winding.
Witness channel_witness(const ScatteringKernel& S1, const ScatteringKernel& S2, int cutoff) {
  const double a1 = S1.effective_alpha();
  const double a2 = S2.effective_alpha();
  const int shift = static_cast<int>(std::lround(a2 - a1));
  const ChannelSpectrum c1 = ab_kernel_channels(a1 + shift, cutoff);
  const ChannelSpectrum c2 = S2.channels(cutoff);
  Witness w;
  w.kind = "channel_spectrum";
  for (int k = -cutoff; k <= cutoff; ++k) {
    const double d = std::abs(c1[k] - c2[k]);
    if (d > w.magnitude) {
      w.magnitude = d;
      w.channel = k;
      w.value1 = c1[k];
      w.value2 = c2[k];
    }
  }
  std::ostringstream os;
  os << "fluxes " << a1 << " and " << a2 << " differ by a non-integer; channel " << w.channel
     << " of S1 shifted by " << shift << " does not match S2";
  w.description = os.str();
  return w;
}

SolverResult solve_planar(const ScatteringKernel& S1, const ScatteringKernel& S2, const SolverOptions& opts) {
  SolverResult r;
  r.provenance.push_back("n=2 near-diagonal ratio fit");
  const double s = sin_pi(S1.effective_alpha());
  if (std::abs(s) < opts.integer_flux_tol) {
    r.verdict = Verdict::Ambiguous;
    r.reason = "integer flux: no principal-value singularity, the gauge is not determined by the kernel";
    return r;
  }
  const double flux_gap = S2.effective_alpha() - S1.effective_alpha();
  if (std::abs(flux_gap - std::round(flux_gap)) > opts.integer_flux_tol) {
    r.verdict = Verdict::NotEquivalent;
    r.witness = channel_witness(S1, S2, opts.channel_cutoff);
    r.verification_distance = r.witness->magnitude;
    r.reason = "channel spectra differ";
    return r;
  }

  const int M = S1.grid_size();
  const double h = kTwoPi / M;
  const int band = std::clamp(opts.band, 1, std::max(1, M / 2 - 2));
  const double scale = std::abs(s) / kPi * (1.0 - opts.margin);
  auto usable = [&](int i, int j) {
    const double t = h * std::min((i - j + M) % M, (j - i + M) % M);
    return std::abs(S1.at(i, j)) >= scale / t;
  };

  // Row increments: R(i+1, j) / R(i, j) = e^{i(m h + phi(theta_{i+1}) - phi(theta_i))}.
  std::vector<double> rho(M, 0.0);
  std::vector<std::vector<double>> pieces(M);
  for (int i = 0; i < M; ++i) {
    const int next = (i + 1) % M;
    Complex acc{};
    for (int sft = 1; sft <= band; ++sft) {
      const int j = ((i - sft) % M + M) % M;
      if (!usable(i, j) || !usable(next, j)) continue;
      const Complex inc = unit_of(S2.at(next, j) * std::conj(S1.at(next, j)) * std::conj(S2.at(i, j)) * S1.at(i, j));
      if (inc == Complex{}) continue;
      acc += inc;
      pieces[i].push_back(std::arg(inc));
      ++r.usable_entries;
    }
    if (pieces[i].empty()) {
      fail(ErrorCode::SingularPartMissing, "no near-diagonal entry dominated by the singular part in row " +
                                               std::to_string(i));
    }
    rho[i] = std::arg(acc);
  }
  for (int i = 0; i < M; ++i)
    for (double p : pieces[i]) r.fit_residual = std::max(r.fit_residual, std::abs(wrap(p - rho[i])));

  double total = 0.0;
  for (double x : rho) total += x;
  const int m = static_cast<int>(std::lround(total / kTwoPi));
  std::vector<double> samples(M, 0.0);
  for (int i = 1; i < M; ++i) samples[i] = samples[i - 1] + rho[i - 1] - m * h;
  const int order = std::max(1, std::min(defaults::kFourierOrder, (M - 1) / 2));
  const AngularFunction phi = AngularFunction::from_samples(samples, order).without_mean();
  const GaugeElement g = GaugeElement::planar(m, phi);

  const ScatteringKernel fitted = apply_gauge_to_kernel(S1, g);
  const KernelDistance d = kernel_distance_detail(fitted, S2, opts.diag_margin, opts.channel_cutoff);
  r.verification_distance = d.total();
  if (d.total() < opts.match_tol) {
    r.verdict = Verdict::Equivalent;
    r.gauge = g;
    r.reason = "fitted gauge reproduces S2";
  } else {
    r.verdict = Verdict::NotEquivalent;
    if (d.off_diagonal >= d.channels) {
      r.witness = off_diagonal_witness(fitted, S2, d);
    } else {
      r.witness = channel_witness(fitted, S2, opts.channel_cutoff);
    }
    r.reason = describe("best-fit gauge leaves kernel distance", d.total());
  }
  return r;
}

SolverResult solve_spatial(const ScatteringKernel& S1, const ScatteringKernel& S2, const SolverOptions& opts) {
  SolverResult r;
  r.provenance.push_back("n=3 mesh-edge ratio fit");
  const auto& grid = *S1.sphere_grid();
  const auto& in = S1.sphere_psi_in().values();
  const auto [lo, hi] = std::minmax_element(in.begin(), in.end());
  const bool prefactor_varies = *hi - *lo > 1e-12;
  if (opts.curl_nonzero) r.provenance.push_back("curl A0 != 0 declared by the caller");
  if (prefactor_varies) r.provenance.push_back("nonconstant incoming prefactor");
  if (S1.sigma() == 0.0 || (!opts.curl_nonzero && !prefactor_varies)) {
    fail(ErrorCode::SingularPartMissing,
         "singular support not established: declare curl A0 != 0 or supply a nonconstant prefactor");
  }
  if (std::abs(S1.sigma() - S2.sigma()) > opts.match_tol) {
    r.verdict = Verdict::NotEquivalent;
    Witness w;
    w.kind = "singular_strength";
    w.value1 = S1.sigma();
    w.value2 = S2.sigma();
    w.magnitude = std::abs(S1.sigma() - S2.sigma());
    w.description = "strengths of the diagonal singularity differ";
    r.witness = w;
    r.verification_distance = w.magnitude;
    r.reason = "singular parts differ";
    return r;
  }

  const std::size_t n = grid.size();
  const double scale = std::abs(S1.sigma()) * (1.0 - opts.margin);
  auto ratio_arg = [&](std::size_t i, std::size_t j, double& out) {
    const double chord = norm(grid.node(i) - grid.node(j));
    const Complex a = S1.at(static_cast<int>(i), static_cast<int>(j));
    if (std::abs(a) < scale / (chord * chord)) return false;
    out = std::arg(S2.at(static_cast<int>(i), static_cast<int>(j)) * std::conj(a));
    return true;
  };

  // u_i - u_k from the common third vertex j of each face.
  std::vector<std::vector<std::pair<std::size_t, Complex>>> edges(n);
  auto add_edge = [&](std::size_t i, std::size_t k, std::size_t j) {
    double ai = 0.0, ak = 0.0;
    if (!ratio_arg(i, j, ai) || !ratio_arg(k, j, ak)) return;
    const Complex e = std::polar(1.0, ai - ak);
    ++r.usable_entries;
    for (auto& [node, acc] : edges[i])
      if (node == k) {
        acc += e;
        return;
      }
    edges[i].push_back({k, e});
  };
  for (const auto& f : grid.faces()) {
    for (int c = 0; c < 3; ++c) {
      const std::size_t i = f[c], k = f[(c + 1) % 3], j = f[(c + 2) % 3];
      add_edge(i, k, j);
      add_edge(k, i, j);
    }
  }

  std::vector<double> u(n, 0.0);
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> queue;
  seen[0] = true;
  queue.push(0);
  while (!queue.empty()) {
    const std::size_t k = queue.front();
    queue.pop();
    for (const auto& [node, acc] : edges[k]) {
      if (seen[node]) continue;
      // acc estimates e^{i(u_k - u_node)}
      u[node] = u[k] - std::arg(acc);
      seen[node] = true;
      queue.push(node);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    fail(ErrorCode::SingularPartMissing, "near-diagonal ratios do not connect every node");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [k, acc] : edges[i])
      r.fit_residual = std::max(r.fit_residual, std::abs(wrap(std::arg(acc) - (u[i] - u[k]))));

  const SphereFunction psi = SphereFunction(S1.sphere_grid(), u).without_mean();
  r.antipodal = antipodal_defect(psi);
  const GaugeElement g = GaugeElement::spatial(psi);
  const ScatteringKernel fitted = apply_gauge_to_kernel(S1, g);
  const KernelDistance d = kernel_distance_detail(fitted, S2, opts.diag_margin, opts.channel_cutoff);
  r.verification_distance = d.total();
  if (d.total() < opts.match_tol) {
    r.verdict = Verdict::Equivalent;
    r.gauge = g;
    r.reason = "fitted gauge reproduces S2";
  } else {
    r.verdict = Verdict::NotEquivalent;
    r.witness = off_diagonal_witness(fitted, S2, d);
    r.reason = describe("best-fit gauge leaves kernel distance", d.total());
  }
  return r;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equivalent:
      return "Equivalent";
    case Verdict::NotEquivalent:
      return "NotEquivalent";
    case Verdict::Ambiguous:
      return "Ambiguous";
  }
  return "Ambiguous";
}

SolverResult gauge_equivalence_solver(const ScatteringKernel& S1, const ScatteringKernel& S2,
                                      const SolverOptions& opts) {
  check_pair(S1, S2);
  if (!(opts.margin >= 0.0 && opts.margin < 1.0)) fail(ErrorCode::InvalidArgument, "margin must lie in [0, 1)");
  return S1.dimension() == 2 ? solve_planar(S1, S2, opts) : solve_spatial(S1, S2, opts);
}

nlohmann::json to_json(const Witness& w) {
  nlohmann::json j{{"kind", w.kind},
                   {"magnitude", w.magnitude},
                   {"value1", {w.value1.real(), w.value1.imag()}},
                   {"value2", {w.value2.real(), w.value2.imag()}},
                   {"description", w.description}};
  if (w.kind == "channel_spectrum") j["channel"] = w.channel;
  if (w.kind == "off_diagonal") {
    j["node_i"] = w.node_i;
    j["node_j"] = w.node_j;
    j["theta"] = w.theta;
    j["theta_prime"] = w.theta_prime;
  }
  return j;
}

nlohmann::json to_json(const SolverResult& r) {
  nlohmann::json j{{"verdict", to_string(r.verdict)},
                   {"reason", r.reason},
                   {"verification_distance", r.verification_distance},
                   {"fit_residual", r.fit_residual},
                   {"usable_entries", r.usable_entries},
                   {"provenance", r.provenance}};
  if (r.gauge) j["gauge"] = gauge_to_json(*r.gauge);
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.antipodal) {
    j["antipodal_defect"] = {{"max_defect", r.antipodal->max_defect},
                             {"fitted_constant", r.antipodal->fitted_constant},
                             {"constant_vanishes", r.antipodal->constant_vanishes}};
  }
  return j;
}

}  // namespace abgauge
