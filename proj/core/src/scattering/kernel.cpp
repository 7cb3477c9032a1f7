#include "abgauge/scattering/kernel.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "../fftw_lock.hpp"
#include "abgauge/error.hpp"
#include "abgauge/parallel.hpp"

namespace abgauge {

namespace {

Complex unit(double phase) { return std::polar(1.0, phase); }

// Periodic distance between cells i and j on an M-point circle grid.
int cell_distance(int i, int j, int M) {
  const int d = std::abs(i - j) % M;
  return std::min(d, M - d);
}

void check_bound(const RemainderBound& b) {
  if (!(b.delta > 0.0 && b.delta < 1.0)) fail(ErrorCode::InvalidArgument, "remainder exponent delta must lie in (0, 1)");
  if (!(b.C >= 0.0)) fail(ErrorCode::InvalidArgument, "remainder constant C must be non-negative");
}

void check_energy(double energy) {
  if (!(energy > 0.0)) fail(ErrorCode::InvalidArgument, "energy must be positive");
}

// Phases of the planar prefactor at the grid nodes.
struct NodePhases {
  std::vector<double> in;   // m theta_i + psi_in(theta_i)
  std::vector<double> out;  // m (theta_j + pi) + psi_out(theta_j + pi)
};

NodePhases node_phases(const ScatteringKernel& S) {
  const int M = S.grid_size();
  NodePhases p{std::vector<double>(M), std::vector<double>(M)};
  for (int i = 0; i < M; ++i) {
    const double t = kTwoPi * i / M;
    p.in[i] = S.winding() * t + S.psi_in()(t);
    p.out[i] = S.winding() * (t + kPi) + S.psi_out()(t + kPi);
  }
  return p;
}

struct SpherePhases {
  std::vector<double> in;   // psi_in(w_i)
  std::vector<double> out;  // psi_out(-w_j)
};

SpherePhases sphere_phases(const ScatteringKernel& S) {
  const auto& grid = *S.sphere_grid();
  const std::size_t n = grid.size();
  SpherePhases p{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    p.in[i] = S.sphere_psi_in().value(i);
    p.out[i] = S.sphere_psi_out().value(grid.antipode(i));
  }
  return p;
}

SphereFunction on_grid(const SphereFunction& f, const std::shared_ptr<const SphereGrid>& grid) {
  if (f.grid_ptr() == grid) return f;
  return SphereFunction::sample(grid, [&f](const Vec3& w) { return f(w); });
}

}  // namespace

RemainderGrid::RemainderGrid(int M, std::vector<Complex> values) : M_(M), values_(std::move(values)) {
  if (M < 1) fail(ErrorCode::InvalidArgument, "remainder grid size must be positive");
  if (values_.size() != static_cast<std::size_t>(M) * M) {
    fail(ErrorCode::GridMismatch, "remainder grid needs M*M values");
  }
}

RemainderGrid RemainderGrid::sample(int M, const std::function<Complex(double, double)>& f) {
  if (M < 1) fail(ErrorCode::InvalidArgument, "remainder grid size must be positive");
  std::vector<Complex> v(static_cast<std::size_t>(M) * M);
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) v[static_cast<std::size_t>(i) * M + j] = f(kTwoPi * i / M, kTwoPi * j / M);
  return RemainderGrid(M, std::move(v));
}

bool RemainderGrid::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Complex& c) { return c == Complex{}; });
}

void RemainderGrid::prepare_interpolant() const {
  if (spectrum_) return;
  std::vector<Complex> spec(values_.size());
  if (!values_.empty()) {
    std::vector<Complex> in = values_;
    auto* pin = reinterpret_cast<fftw_complex*>(in.data());
    auto* pout = reinterpret_cast<fftw_complex*>(spec.data());
    fftw_plan plan;
    {
      std::lock_guard lock(detail::fftw_planner_mutex());
      plan = fftw_plan_dft_2d(M_, M_, pin, pout, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
      std::lock_guard lock(detail::fftw_planner_mutex());
      fftw_destroy_plan(plan);
    }
    const double scale = 1.0 / (static_cast<double>(M_) * M_);
    for (auto& c : spec) c *= scale;
  }
  spectrum_ = std::make_shared<const std::vector<Complex>>(std::move(spec));
}

Complex RemainderGrid::operator()(double theta, double theta_prime) const {
  if (M_ == 0) return {};
  prepare_interpolant();
  const auto& spec = *spectrum_;
  // Symmetric frequency range; the Nyquist mode of an even grid is split
  // evenly between +M/2 and -M/2 so real data interpolate to real values.
  auto basis = [this](double x) {
    std::vector<Complex> e(M_);
    for (int idx = 0; idx < M_; ++idx) {
      if (M_ % 2 == 0 && idx == M_ / 2) {
        e[idx] = std::cos(0.5 * M_ * x);
      } else {
        e[idx] = unit((idx <= M_ / 2 ? idx : idx - M_) * x);
      }
    }
    return e;
  };
  const std::vector<Complex> ea = basis(theta);
  const std::vector<Complex> eb = basis(theta_prime);
  Complex sum{};
  for (int a = 0; a < M_; ++a) {
    Complex row{};
    for (int b = 0; b < M_; ++b) row += spec[static_cast<std::size_t>(a) * M_ + b] * eb[b];
    sum += ea[a] * row;
  }
  return sum;
}

Complex ab_singular_kernel(double alpha, double t) {
  const Complex denom = 1.0 - unit(t);
  if (std::abs(denom) == 0.0) fail(ErrorCode::InvalidArgument, "the AB kernel is singular on the diagonal");
  return Complex(0.0, sin_pi(alpha) / kPi) * unit(integer_part(alpha) * t) / denom;
}

ScatteringKernel ScatteringKernel::planar(double alpha, AngularFunction psi_in, AngularFunction psi_out,
                                          RemainderGrid remainder, RemainderBound bound, double energy, int winding) {
  check_bound(bound);
  check_energy(energy);
  if (!std::isfinite(alpha)) fail(ErrorCode::InvalidArgument, "flux must be finite");
  if (remainder.size() < 1) fail(ErrorCode::InvalidArgument, "planar kernels need a remainder grid");
  ScatteringKernel S;
  S.dimension_ = 2;
  S.energy_ = energy;
  S.alpha_ = alpha;
  S.winding_ = winding;
  S.psi_in_ = std::move(psi_in);
  S.psi_out_ = std::move(psi_out);
  S.remainder_ = std::move(remainder);
  S.bound_ = bound;
  return S;
}

ScatteringKernel ScatteringKernel::spatial(std::shared_ptr<const SphereGrid> grid, double sigma, SphereFunction psi_in,
                                           SphereFunction psi_out, std::vector<Complex> remainder,
                                           RemainderBound bound, double energy) {
  check_bound(bound);
  check_energy(energy);
  if (!grid) fail(ErrorCode::InvalidArgument, "spatial kernels need a sphere grid");
  const std::size_t n = grid->size();
  if (remainder.empty()) remainder.assign(n * n, Complex{});
  if (remainder.size() != n * n) fail(ErrorCode::GridMismatch, "spatial remainder needs N*N values");
  ScatteringKernel S;
  S.dimension_ = 3;
  S.energy_ = energy;
  S.sigma_ = sigma;
  S.sphere_in_ = on_grid(psi_in, grid);
  S.sphere_out_ = on_grid(psi_out, grid);
  S.sphere_remainder_ = std::move(remainder);
  S.grid_ = std::move(grid);
  S.bound_ = bound;
  return S;
}

const AngularFunction& ScatteringKernel::psi_in() const {
  if (dimension_ != 2) fail(ErrorCode::DimensionMismatch, "circle phases exist only for n = 2");
  return psi_in_;
}

const AngularFunction& ScatteringKernel::psi_out() const {
  if (dimension_ != 2) fail(ErrorCode::DimensionMismatch, "circle phases exist only for n = 2");
  return psi_out_;
}

const SphereFunction& ScatteringKernel::sphere_psi_in() const {
  if (dimension_ != 3) fail(ErrorCode::DimensionMismatch, "sphere phases exist only for n = 3");
  return *sphere_in_;
}

const SphereFunction& ScatteringKernel::sphere_psi_out() const {
  if (dimension_ != 3) fail(ErrorCode::DimensionMismatch, "sphere phases exist only for n = 3");
  return *sphere_out_;
}

const RemainderGrid& ScatteringKernel::remainder() const {
  if (dimension_ != 2) fail(ErrorCode::DimensionMismatch, "circle remainder exists only for n = 2");
  return remainder_;
}

const std::vector<Complex>& ScatteringKernel::sphere_remainder() const {
  if (dimension_ != 3) fail(ErrorCode::DimensionMismatch, "sphere remainder exists only for n = 3");
  return sphere_remainder_;
}

const std::shared_ptr<const SphereGrid>& ScatteringKernel::sphere_grid() const {
  if (dimension_ != 3) fail(ErrorCode::DimensionMismatch, "sphere grid exists only for n = 3");
  return grid_;
}

int ScatteringKernel::grid_size() const {
  return dimension_ == 2 ? remainder_.size() : static_cast<int>(grid_->size());
}

Complex ScatteringKernel::operator()(double theta, double theta_prime) const {
  if (dimension_ != 2) fail(ErrorCode::DimensionMismatch, "angle evaluation is for n = 2 kernels");
  const double in = winding_ * theta + psi_in_(theta);
  const double out = winding_ * (theta_prime + kPi) + psi_out_(theta_prime + kPi);
  return unit(in - out) * (ab_singular_kernel(alpha_, theta - theta_prime) + remainder_(theta, theta_prime));
}

Complex ScatteringKernel::at(int i, int j) const {
  const int n = grid_size();
  if (i < 0 || j < 0 || i >= n || j >= n) fail(ErrorCode::InvalidArgument, "kernel index out of range");
  if (i == j) fail(ErrorCode::InvalidArgument, "kernel values on the diagonal are distributional");
  if (dimension_ == 2) {
    const double t = kTwoPi * i / n;
    const double tp = kTwoPi * j / n;
    const double in = winding_ * t + psi_in_(t);
    const double out = winding_ * (tp + kPi) + psi_out_(tp + kPi);
    return unit(in - out) * (ab_singular_kernel(alpha_, t - tp) + remainder_.at(i, j));
  }
  const auto& g = *grid_;
  const double chord2 = norm(g.node(i) - g.node(j)) * norm(g.node(i) - g.node(j));
  const double phase = sphere_in_->value(i) - sphere_out_->value(g.antipode(j));
  return unit(phase) * (Complex(0.0, sigma_ / chord2) + sphere_remainder_[static_cast<std::size_t>(i) * n + j]);
}

ChannelSpectrum ScatteringKernel::channels(int cutoff) const {
  if (dimension_ != 2) fail(ErrorCode::DimensionMismatch, "channel spectra are defined for n = 2 kernels");
  return ab_kernel_channels(effective_alpha(), cutoff);
}

double ScatteringKernel::remainder_bound_ratio() const {
  const int n = grid_size();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double r = 0.0;
      double d = 0.0;
      if (dimension_ == 2) {
        r = std::abs(remainder_.at(i, j));
        d = kTwoPi * cell_distance(i, j, n) / n;
      } else {
        r = std::abs(sphere_remainder_[static_cast<std::size_t>(i) * n + j]);
        const Vec3 a = grid_->node(i), b = grid_->node(j);
        d = std::acos(std::clamp(dot(a, b), -1.0, 1.0));
      }
      if (r == 0.0) continue;
      const double ratio = bound_.C > 0.0 ? r * std::pow(d, bound_.delta) / bound_.C
                                          : std::numeric_limits<double>::infinity();
      worst = std::max(worst, ratio);
    }
  }
  return worst;
}

ScatteringKernel assemble_kernel(double alpha, const AngularFunction& a0_in, const AngularFunction& a0_out,
                                 const RemainderGrid& smooth, double energy, RemainderBound bound) {
  ScatteringKernel S = ScatteringKernel::planar(alpha, a0_in, a0_out, smooth, bound, energy);
  const double ratio = S.remainder_bound_ratio();
  if (ratio > 1.0 + 1e-12) {
    fail(ErrorCode::RemainderBoundViolated,
         "smooth remainder exceeds C|t|^-delta by a factor " + std::to_string(ratio));
  }
  const double defect = S.channels(32).unimodularity_defect();
  if (defect > 1e-6) fail(ErrorCode::InvalidArgument, "channel spectrum is not unimodular");
  return S;
}

ScatteringKernel apply_gauge_to_kernel(const ScatteringKernel& S, const GaugeElement& g) {
  if (S.dimension() != g.dimension()) {
    fail(ErrorCode::DimensionMismatch, "gauge and kernel dimensions differ");
  }
  ScatteringKernel out = S;
  if (S.dimension() == 2) {
    if (g.m() == 0 && g.phi().max_coefficient_magnitude() == 0.0) return out;
    out.winding_ += g.m();
    out.psi_in_ = S.psi_in_ + g.phi();
    out.psi_out_ = S.psi_out_ + g.phi();
    return out;
  }
  if (g.m() != 0) fail(ErrorCode::InvalidArgument, "integer windings do not exist for n = 3");
  if (!g.has_psi()) return out;
  const SphereFunction psi = on_grid(g.psi(), S.grid_);
  out.sphere_in_ = *S.sphere_in_ + psi;
  out.sphere_out_ = *S.sphere_out_ + psi;
  return out;
}

KernelDistance kernel_distance_detail(const ScatteringKernel& S1, const ScatteringKernel& S2, int diag_margin,
                                      int channel_cutoff) {
  if (S1.dimension() != S2.dimension()) fail(ErrorCode::DimensionMismatch, "kernel dimensions differ");
  if (S1.grid_size() != S2.grid_size()) fail(ErrorCode::GridMismatch, "kernel grids differ in size");
  if (S1.dimension() == 3 && S1.sphere_grid() != S2.sphere_grid() &&
      S1.sphere_grid()->level() != S2.sphere_grid()->level()) {
    fail(ErrorCode::GridMismatch, "kernel sphere grids differ");
  }
  if (S1.energy() != S2.energy()) fail(ErrorCode::InvalidArgument, "kernels carry different energy labels");

  const int n = S1.grid_size();
  std::vector<double> row_max(n, 0.0);
  std::vector<int> row_arg(n, -1);
  if (S1.dimension() == 2) {
    const NodePhases p1 = node_phases(S1), p2 = node_phases(S2);
    const auto& r1 = S1.remainder();
    const auto& r2 = S2.remainder();
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t ii) {
      const int i = static_cast<int>(ii);
      for (int j = 0; j < n; ++j) {
        if (cell_distance(i, j, n) <= diag_margin) continue;
        const double t = kTwoPi * (i - j) / n;
        const Complex a = unit(p1.in[i] - p1.out[j]) * (ab_singular_kernel(S1.alpha(), t) + r1.at(i, j));
        const Complex b = unit(p2.in[i] - p2.out[j]) * (ab_singular_kernel(S2.alpha(), t) + r2.at(i, j));
        const double d = std::abs(a - b);
        if (d > row_max[i] || row_arg[i] < 0) {
          row_max[i] = d;
          row_arg[i] = j;
        }
      }
    });
  } else {
    const auto& grid = *S1.sphere_grid();
    const SpherePhases p1 = sphere_phases(S1), p2 = sphere_phases(S2);
    const auto& r1 = S1.sphere_remainder();
    const auto& r2 = S2.sphere_remainder();
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t ii) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
        const double chord = norm(grid.node(ii) - grid.node(j));
        if (ii == j) continue;
        const std::size_t k = ii * n + j;
        const Complex sing1(0.0, S1.sigma() / (chord * chord));
        const Complex sing2(0.0, S2.sigma() / (chord * chord));
        const Complex a = unit(p1.in[ii] - p1.out[j]) * (sing1 + r1[k]);
        const Complex b = unit(p2.in[ii] - p2.out[j]) * (sing2 + r2[k]);
        const double d = std::abs(a - b);
        if (d > row_max[ii] || row_arg[ii] < 0) {
          row_max[ii] = d;
          row_arg[ii] = static_cast<int>(j);
        }
      }
    });
  }

  KernelDistance out;
  for (int i = 0; i < n; ++i) {
    if (row_arg[i] >= 0 && row_max[i] > out.off_diagonal) {
      out.off_diagonal = row_max[i];
      out.worst_i = i;
      out.worst_j = row_arg[i];
    }
  }
  out.channels = S1.dimension() == 2
                     ? S1.channels(channel_cutoff).distance(S2.channels(channel_cutoff))
                     : std::abs(S1.sigma() - S2.sigma());
  return out;
}

double kernel_distance(const ScatteringKernel& S1, const ScatteringKernel& S2, int diag_margin, int channel_cutoff) {
  return kernel_distance_detail(S1, S2, diag_margin, channel_cutoff).total();
}

double near_diagonal_exponent(double alpha, double t_min, double t_max, int samples) {
  if (!(t_min > 0.0 && t_max > t_min) || samples < 2) {
    fail(ErrorCode::InvalidArgument, "need 0 < t_min < t_max and at least two samples");
  }
  if (sin_pi(alpha) == 0.0) {
    fail(ErrorCode::SingularPartMissing, "integer flux has no principal-value singularity");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < samples; ++k) {
    const double x = std::log(t_min) + (std::log(t_max) - std::log(t_min)) * k / (samples - 1);
    const double y = std::log(std::abs(ab_singular_kernel(alpha, std::exp(x))));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (samples * sxy - sx * sy) / (samples * sxx - sx * sx);
  return -slope;
}

}  // namespace abgauge
