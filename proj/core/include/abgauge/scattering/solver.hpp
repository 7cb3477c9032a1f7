#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abgauge/fields/potentials.hpp"
#include "abgauge/scattering/kernel.hpp"
#include "abgauge/tolerances.hpp"
#include "abgauge/tomography/restriction.hpp"

namespace abgauge {

enum class Verdict { Equivalent, NotEquivalent, Ambiguous };

std::string to_string(Verdict v);

// Evidence that two kernels are not gauge equivalent.
struct Witness {
  std::string kind;  // "channel_spectrum", "singular_strength" or "off_diagonal"
  double theta = 0.0;
  double theta_prime = 0.0;
  int node_i = -1;
  int node_j = -1;
  int channel = 0;
  Complex value1;
  Complex value2;
  double magnitude = 0.0;
  std::string description;
};

struct SolverOptions {
  int band = 3;            // near-diagonal offsets used per row
  double margin = 0.5;     // entry usable when |S1| >= (1 - margin) x singular size
  double match_tol = defaults::kKernelMatchTol;
  int diag_margin = defaults::kDiagMarginCells;
  int channel_cutoff = 32;
  double integer_flux_tol = defaults::kIntegerFluxTol;
  // Declared curl A0 != 0 for n = 3 kernels.
  bool curl_nonzero = false;
};

struct SolverResult {
  Verdict verdict = Verdict::Ambiguous;
  std::optional<GaugeElement> gauge;
  std::optional<Witness> witness;
  std::string reason;
  double verification_distance = 0.0;
  // Largest disagreement between individual near-diagonal phase increments
  // and the fitted ones.
  double fit_residual = 0.0;
  int usable_entries = 0;
  std::optional<AntipodalDefect> antipodal;
  std::vector<std::string> provenance;
};

// Finds g (with L = 0) such that apply_gauge_to_kernel(S1, g) matches S2 off
// the diagonal and in the singular part, or explains why none exists.
SolverResult gauge_equivalence_solver(const ScatteringKernel& S1, const ScatteringKernel& S2,
                                      const SolverOptions& opts = {});

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const SolverResult& r);

}  // namespace abgauge
