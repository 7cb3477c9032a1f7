#pragma once

#include <string>
#include <vector>

#include "abgauge/pipeline/report.hpp"
#include "abgauge/pipeline/scenario.hpp"
#include "abgauge/scattering/kernel.hpp"

namespace abgauge {

struct ScenarioKernels {
  ScatteringKernel kernel1;
  ScatteringKernel kernel2;
  std::vector<std::string> provenance;
  bool curl_nonzero = false;
};

// Kernels of a two-configuration scenario: loaded from the declared files,
// synthesised by the gauge action when config2 is declared as a gauge of
// config1, or (n = 2) assembled from each configuration's flux and angular
// gradient part.
ScenarioKernels scenario_kernels(const Scenario& scenario);

// Smooth remainder grid described by {"kind": "zero"} or
// {"kind": "bump", "amplitude", "center": [theta, theta'], "width"}.
RemainderGrid remainder_from_json(const nlohmann::json& spec, int M);

// Kernel-level solve followed by the potential-level checks; the verdict is
// Equivalent only when every stage passes. Stage errors are rethrown with the
// stage name prefixed.
Report run_classify(const Scenario& scenario);

// Builds a kernel, gauges it with the scenario gauge, compares and solves.
Report run_kernel_lab(const Scenario& scenario);

}  // namespace abgauge
