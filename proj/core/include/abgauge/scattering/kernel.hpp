#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "abgauge/angular/fourier.hpp"
#include "abgauge/angular/sphere.hpp"
#include "abgauge/fields/potentials.hpp"
#include "abgauge/scattering/channels.hpp"
#include "abgauge/tolerances.hpp"

namespace abgauge {

using Complex = std::complex<double>;

// Declared bound |S'(theta, theta')| <= C |theta - theta'|^{-delta}.
struct RemainderBound {
  double C = 1.0;
  double delta = 0.5;
};

// Smooth remainder S'(theta_i, theta'_j) on theta_i = 2 pi i / M. Off-grid
// values use trigonometric interpolation.
class RemainderGrid {
 public:
  RemainderGrid() = default;
  RemainderGrid(int M, std::vector<Complex> values);

  static RemainderGrid zero(int M) { return RemainderGrid(M, std::vector<Complex>(static_cast<std::size_t>(M) * M)); }
  static RemainderGrid sample(int M, const std::function<Complex(double, double)>& f);

  int size() const noexcept { return M_; }
  double node(int i) const { return kTwoPi * i / M_; }
  Complex at(int i, int j) const { return values_[static_cast<std::size_t>(i) * M_ + j]; }
  const std::vector<Complex>& values() const noexcept { return values_; }
  bool is_zero() const;
  Complex operator()(double theta, double theta_prime) const;

 private:
  void prepare_interpolant() const;

  int M_ = 0;
  std::vector<Complex> values_;
  mutable std::shared_ptr<const std::vector<Complex>> spectrum_;
};

// i sin(alpha pi)/pi e^{i[alpha]t}/(1 - e^{it}) for t != 0 mod 2 pi.
Complex ab_singular_kernel(double alpha, double t);

// Scattering kernel stored structurally.
//
// n = 2: S(theta, theta') = e^{i(m theta + psi_in(theta))} (S_alpha(theta - theta') + S'(theta, theta'))
//                           e^{-i(m (theta' + pi) + psi_out(theta' + pi))}
// n = 3: S(w, w') = e^{i psi_in(w)} (i sigma/|w - w'|^2 + S'(w, w')) e^{-i psi_out(-w')}
// on the nodes of a sphere grid. The delta part is never discretised.
class ScatteringKernel {
 public:
  static ScatteringKernel planar(double alpha, AngularFunction psi_in, AngularFunction psi_out, RemainderGrid remainder,
                                 RemainderBound bound, double energy, int winding = 0);
  static ScatteringKernel spatial(std::shared_ptr<const SphereGrid> grid, double sigma, SphereFunction psi_in,
                                  SphereFunction psi_out, std::vector<Complex> remainder, RemainderBound bound,
                                  double energy);

  int dimension() const noexcept { return dimension_; }
  double energy() const noexcept { return energy_; }
  double alpha() const noexcept { return alpha_; }
  int winding() const noexcept { return winding_; }
  // alpha + winding: the flux whose AB channels the convolution part carries.
  double effective_alpha() const noexcept { return alpha_ + winding_; }
  const AngularFunction& psi_in() const;
  const AngularFunction& psi_out() const;
  const SphereFunction& sphere_psi_in() const;
  const SphereFunction& sphere_psi_out() const;
  const RemainderGrid& remainder() const;
  const std::vector<Complex>& sphere_remainder() const;
  const std::shared_ptr<const SphereGrid>& sphere_grid() const;
  double sigma() const noexcept { return sigma_; }
  const RemainderBound& bound() const noexcept { return bound_; }

  // Grid size: M for n = 2, node count for n = 3.
  int grid_size() const;

  // Off-diagonal kernel value (t = theta - theta' not a multiple of 2 pi).
  Complex operator()(double theta, double theta_prime) const;
  // Value at grid nodes (i, j), i != j (planar: any cell off the diagonal).
  Complex at(int i, int j) const;

  // Channels of the convolution part including the winding:
  // k -> (-1)^m c_{k-m}(alpha), which equal the channels of alpha + m.
  ChannelSpectrum channels(int cutoff) const;

  // Largest |S'| |theta - theta'|^delta / C over off-diagonal cells.
  double remainder_bound_ratio() const;

 private:
  ScatteringKernel() = default;
  friend ScatteringKernel apply_gauge_to_kernel(const ScatteringKernel&, const GaugeElement&);

  int dimension_ = 2;
  double energy_ = 1.0;
  double alpha_ = 0.0;
  int winding_ = 0;
  AngularFunction psi_in_;
  AngularFunction psi_out_;
  RemainderGrid remainder_;
  std::shared_ptr<const SphereGrid> grid_;
  std::optional<SphereFunction> sphere_in_;
  std::optional<SphereFunction> sphere_out_;
  std::vector<Complex> sphere_remainder_;
  double sigma_ = 0.0;
  RemainderBound bound_;
};

// Assembly with prefactor e^{i a0_in(theta) - i a0_out(pi + theta')}.
// RemainderBoundViolated when the smooth part exceeds its declared bound.
ScatteringKernel assemble_kernel(double alpha, const AngularFunction& a0_in, const AngularFunction& a0_out,
                                 const RemainderGrid& smooth, double energy, RemainderBound bound = {});

// Left multiplication by e^{i(m theta + phi(theta))}, right by e^{-i(m(theta'+pi) + phi(theta'+pi))};
// the short-range part of g does not act on the kernel.
ScatteringKernel apply_gauge_to_kernel(const ScatteringKernel& S, const GaugeElement& g);

struct KernelDistance {
  // max |S1 - S2| over |i - j| > margin cells (periodic) for n = 2, over all
  // node pairs i != j for n = 3
  double off_diagonal = 0.0;
  // channel-spectrum distance (n = 2) or |sigma1 - sigma2| (n = 3)
  double channels = 0.0;
  double total() const { return off_diagonal + channels; }
  int worst_i = 0;
  int worst_j = 0;
};

KernelDistance kernel_distance_detail(const ScatteringKernel& S1, const ScatteringKernel& S2,
                                      int diag_margin = defaults::kDiagMarginCells, int channel_cutoff = 32);
double kernel_distance(const ScatteringKernel& S1, const ScatteringKernel& S2,
                       int diag_margin = defaults::kDiagMarginCells, int channel_cutoff = 32);

// Least-squares slope of log|S_alpha(t)| against log t over log-spaced t.
double near_diagonal_exponent(double alpha, double t_min = 1e-3, double t_max = 1e-1, int samples = 64);

}  // namespace abgauge
