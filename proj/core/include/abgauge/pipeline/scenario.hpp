#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abgauge/fields/potentials.hpp"
#include "abgauge/scattering/kernel.hpp"
#include "abgauge/scattering/solver.hpp"
#include "abgauge/tolerances.hpp"
#include "abgauge/tomography/radon.hpp"
#include "abgauge/tomography/xray.hpp"

namespace abgauge {

inline constexpr const char* kScenarioSchema = "abgauge.scenario/1";

enum class ScenarioKind { Reconstruct, Classify, KernelLab };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& s);

struct Tolerances {
  double tail_tol = defaults::kTailTol;
  double curl_tol = defaults::kCurlTol;
  double loop_tol = defaults::kLoopTol;
  double path_tol = defaults::kPathTol;
  double phase_fit = defaults::kPhaseFitTol;
  double kernel_match = defaults::kKernelMatchTol;
  double transversal_match = defaults::kTransversalMatchTol;
  double scalar_match = defaults::kScalarMatchTol;
  double flux = 1e-6;               // recovered alpha
  double reconstruction_v = 0.08;   // relative L2 error of V
  double reconstruction_b = 0.08;   // relative L2 error of B
};

// How the scattering kernels of a classify or kernel-lab scenario are obtained.
struct KernelSettings {
  int grid = 64;                    // n = 2 circle grid
  int level = 2;                    // n = 3 sphere grid
  double energy = 1.0;
  double sigma = 1.0;               // n = 3 singular strength
  RemainderBound bound{};
  nlohmann::json remainder = {{"kind", "zero"}};
  std::optional<std::string> kernel1_path;
  std::optional<std::string> kernel2_path;
  // n = 2 kernel-lab base kernel
  double alpha = 0.5;
  nlohmann::json phase_in = nlohmann::json::array();
  nlohmann::json phase_out = nlohmann::json::array();
};

struct ScenarioConfig {
  PotentialConfig config;
  nlohmann::json source;
  // config = apply_gauge_to_potential(config1, gauge) when declared.
  std::optional<GaugeElement> gauge;
  bool perturbed = false;  // additive short-range or scalar terms on top of the gauge
};

// Three-dimensional reconstruction: planes x3 = c and the radii used for the
// leading-order extraction.
struct PlaneSweep {
  std::vector<double> offsets{1.5};
  std::vector<double> radii{20.0, 40.0, 80.0, 160.0};
  int sphere_level = 2;
};

struct Scenario {
  std::string name = "scenario";
  ScenarioKind kind = ScenarioKind::Classify;
  std::vector<ScenarioConfig> configs;
  ParallelGeometry geometry{};
  ReconstructionOptions reconstruction{};
  Tolerances tolerances{};
  SolverOptions solver{};
  KernelSettings kernels{};
  PlaneSweep planes{};
  std::optional<GaugeElement> kernel_gauge;  // kernel-lab gauge
  std::uint64_t seed = 20240611;
  std::string output_dir;
  std::string base_dir;

  // Both configs share dimension and obstacle radius; geometry is valid.
  void validate() const;
};

Scenario scenario_from_json(const nlohmann::json& j, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

// Builds the configuration entry, resolving {"gauge_of": "config1", "gauge": {...}}
// against `base` and adding optional "add_short_range" / "add_scalar" terms.
ScenarioConfig scenario_config_from_json(const nlohmann::json& j, const ScenarioConfig* base);

}  // namespace abgauge
