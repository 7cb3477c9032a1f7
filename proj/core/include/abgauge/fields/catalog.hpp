#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "abgauge/fields/potentials.hpp"

namespace abgauge {

// Field kinds understood in configuration files.
//
// vector: zero, ring_bump, inverse_power, gradient_power, gradient_gaussian,
//         sampled, sum
// scalar: zero, gaussian_ring, inverse_power, bump, sampled, sum
// spatial transversal: zero, azimuthal, gradient_sphere_poly
//
// Each spec is {"kind": ..., "params": {...}, "C": ..., "eps0": ...}. When C is
// absent the catalog derives a bound for its closed-form kinds; sampled fields
// carry no envelope unless one is declared.
ShortRangeField make_short_range(const nlohmann::json& spec, int dimension);
ScalarPotential make_scalar(const nlohmann::json& spec, int dimension);
// Gauge scalars use envelope base 0 (|L| <= C <x>^{-eps0}).
ScalarPotential make_gauge_scalar(const nlohmann::json& spec, int dimension);
TransversalField make_transversal(const nlohmann::json& spec, int dimension);

nlohmann::json triples_to_json(const AngularFunction& f);
AngularFunction angular_from_json(const nlohmann::json& triples, int order = defaults::kFourierOrder);

// {dimension, R, flux_profile | transversal, short_range, scalar, convex, rapid_decay}
PotentialConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const PotentialConfig& config);
PotentialConfig load_config(const std::string& path);

// {m, phi: triples, L: scalar spec} for n = 2; {psi: {level, values | terms}, L} for n = 3.
GaugeElement gauge_from_json(const nlohmann::json& j, int dimension);
nlohmann::json gauge_to_json(const GaugeElement& g);

// Regular-grid CSV with columns x1..xn followed by the field components.
struct GridCsv {
  int dimension = 2;
  int components = 1;
  std::vector<std::vector<double>> axes;  // sorted unique coordinates per axis
  std::vector<double> data;               // row-major over axes, then components
};
GridCsv read_grid_csv(const std::string& path, int dimension, int components);
void write_grid_csv(const std::string& path, int dimension, const std::vector<Vec3>& points,
                    const std::vector<std::vector<double>>& components);
ShortRangeField sampled_vector_field(const GridCsv& grid, std::optional<Envelope> envelope);
ScalarPotential sampled_scalar_field(const GridCsv& grid, std::optional<Envelope> envelope);

}  // namespace abgauge
