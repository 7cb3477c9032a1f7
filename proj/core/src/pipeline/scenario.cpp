#include "abgauge/pipeline/scenario.hpp"

#include <filesystem>
#include <fstream>

#include "abgauge/error.hpp"
#include "abgauge/fields/catalog.hpp"

namespace abgauge {

using nlohmann::json;
namespace fs = std::filesystem;

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Reconstruct:
      return "reconstruct";
    case ScenarioKind::Classify:
      return "classify";
    case ScenarioKind::KernelLab:
      return "kernel-lab";
  }
  return "classify";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
  if (s == "reconstruct") return ScenarioKind::Reconstruct;
  if (s == "classify") return ScenarioKind::Classify;
  if (s == "kernel-lab") return ScenarioKind::KernelLab;
  fail(ErrorCode::ParseError, "unknown scenario kind '" + s + "'");
}

void Scenario::validate() const {
  if (configs.empty()) fail(ErrorCode::InvalidArgument, "scenario has no configuration");
  if (kind == ScenarioKind::Classify && configs.size() != 2) {
    fail(ErrorCode::InvalidArgument, "classify scenarios need exactly two configurations");
  }
  const auto& c1 = configs.front().config;
  for (const auto& c : configs) {
    if (c.config.dimension != c1.dimension) fail(ErrorCode::DimensionMismatch, "configurations differ in dimension");
    if (c.config.obstacle_radius != c1.obstacle_radius) {
      fail(ErrorCode::InvalidArgument, "configurations must share the obstacle radius");
    }
  }
  if (kind == ScenarioKind::Reconstruct) {
    geometry.validate();
    if (c1.dimension == 2 && geometry.rmin < c1.obstacle_radius) {
      fail(ErrorCode::InvalidArgument, "geometry rmin must be at least the obstacle radius");
    }
    if (c1.dimension == 3) {
      for (double c : planes.offsets) {
        if (std::abs(c) <= c1.obstacle_radius) fail(ErrorCode::PlaneHitsObstacle, "plane offset inside the obstacle");
      }
    }
  }
}

ScenarioConfig scenario_config_from_json(const json& j, const ScenarioConfig* base) {
  ScenarioConfig out;
  out.source = j;
  if (j.contains("gauge_of")) {
    if (!base) fail(ErrorCode::ParseError, "gauge_of needs an earlier configuration");
    const std::string ref = j.at("gauge_of").get<std::string>();
    if (ref != "config1") fail(ErrorCode::ParseError, "gauge_of must reference config1");
    const int dim = base->config.dimension;
    out.gauge = gauge_from_json(j.value("gauge", json::object()), dim);
    out.config = apply_gauge_to_potential(base->config, *out.gauge);
  } else {
    out.config = config_from_json(j);
  }
  const int dim = out.config.dimension;
  if (j.contains("add_short_range")) {
    out.config.short_range = out.config.short_range + make_short_range(j.at("add_short_range"), dim);
    out.perturbed = true;
  }
  if (j.contains("add_scalar")) {
    out.config.scalar = out.config.scalar + make_scalar(j.at("add_scalar"), dim);
    out.perturbed = true;
  }
  return out;
}

Scenario scenario_from_json(const json& j, const std::string& base_dir) {
  try {
    if (j.value("schema", std::string{}) != kScenarioSchema) {
      fail(ErrorCode::ParseError, std::string("scenario must declare schema ") + kScenarioSchema);
    }
    Scenario s;
    s.base_dir = base_dir;
    s.name = j.value("name", std::string("scenario"));
    s.kind = scenario_kind_from_string(j.at("kind").get<std::string>());
    s.seed = j.value("seed", s.seed);

    std::vector<json> raw;
    if (j.contains("configs")) {
      for (const auto& c : j.at("configs")) raw.push_back(c);
    } else {
      if (j.contains("config1")) raw.push_back(j.at("config1"));
      if (j.contains("config2")) raw.push_back(j.at("config2"));
    }
    for (const auto& c : raw) {
      s.configs.push_back(scenario_config_from_json(c, s.configs.empty() ? nullptr : &s.configs.front()));
    }

    if (j.contains("geometry")) {
      const auto& g = j.at("geometry");
      s.geometry.angles = g.value("angles", s.geometry.angles);
      s.geometry.offsets = g.value("offsets", s.geometry.offsets);
      s.geometry.rmin = g.value("rmin", s.geometry.rmin);
      s.geometry.rmax = g.value("rmax", s.geometry.rmax);
    }
    if (j.contains("reconstruction")) {
      const auto& r = j.at("reconstruction");
      s.reconstruction.grid_size = r.value("grid_size", s.reconstruction.grid_size);
      s.reconstruction.completion_iterations = r.value("completion_iterations", s.reconstruction.completion_iterations);
      s.reconstruction.hann = r.value("hann", s.reconstruction.hann);
    }
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      auto& o = s.tolerances;
      o.tail_tol = t.value("tail_tol", o.tail_tol);
      o.curl_tol = t.value("curl_tol", o.curl_tol);
      o.loop_tol = t.value("loop_tol", o.loop_tol);
      o.path_tol = t.value("path_tol", o.path_tol);
      o.phase_fit = t.value("phase_fit", o.phase_fit);
      o.kernel_match = t.value("kernel_match", o.kernel_match);
      o.transversal_match = t.value("transversal_match", o.transversal_match);
      o.scalar_match = t.value("scalar_match", o.scalar_match);
      o.flux = t.value("flux", o.flux);
      o.reconstruction_v = t.value("reconstruction_v", o.reconstruction_v);
      o.reconstruction_b = t.value("reconstruction_b", o.reconstruction_b);
    }
    s.solver.match_tol = s.tolerances.kernel_match;
    if (j.contains("solver")) {
      const auto& o = j.at("solver");
      s.solver.band = o.value("band", s.solver.band);
      s.solver.margin = o.value("margin", s.solver.margin);
      s.solver.match_tol = o.value("match_tol", s.solver.match_tol);
      s.solver.diag_margin = o.value("diag_margin", s.solver.diag_margin);
      s.solver.channel_cutoff = o.value("channel_cutoff", s.solver.channel_cutoff);
      s.solver.curl_nonzero = o.value("curl_nonzero", s.solver.curl_nonzero);
    }
    if (j.contains("kernels")) {
      const auto& k = j.at("kernels");
      auto& o = s.kernels;
      o.grid = k.value("grid", o.grid);
      o.level = k.value("level", o.level);
      o.energy = k.value("energy", o.energy);
      o.sigma = k.value("sigma", o.sigma);
      o.bound.C = k.value("C", o.bound.C);
      o.bound.delta = k.value("delta", o.bound.delta);
      o.remainder = k.value("remainder", o.remainder);
      o.alpha = k.value("alpha", o.alpha);
      o.phase_in = k.value("phase_in", o.phase_in);
      o.phase_out = k.value("phase_out", o.phase_out);
      auto path = [&](const char* key) -> std::optional<std::string> {
        if (!k.contains(key)) return std::nullopt;
        fs::path p = k.at(key).get<std::string>();
        if (p.is_relative()) p = fs::path(base_dir) / p;
        return p.string();
      };
      o.kernel1_path = path("kernel1");
      o.kernel2_path = path("kernel2");
    }
    if (j.contains("planes")) {
      const auto& p = j.at("planes");
      s.planes.offsets = p.value("offsets", s.planes.offsets);
      s.planes.radii = p.value("radii", s.planes.radii);
      s.planes.sphere_level = p.value("sphere_level", s.planes.sphere_level);
    }
    if (j.contains("gauge")) {
      const int dim = s.configs.empty() ? j.value("dimension", 2) : s.configs.front().config.dimension;
      s.kernel_gauge = gauge_from_json(j.at("gauge"), dim);
    }
    if (j.contains("output")) {
      fs::path out = j.at("output").value("dir", std::string{});
      if (!out.empty() && out.is_relative()) out = fs::path(base_dir) / out;
      s.output_dir = out.string();
    }
    if (s.kind != ScenarioKind::KernelLab || !s.configs.empty()) s.validate();
    return s;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("scenario: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
  return scenario_from_json(j, fs::path(path).parent_path().string());
}

}  // namespace abgauge
