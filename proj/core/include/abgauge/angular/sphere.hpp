#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "abgauge/vec.hpp"

namespace abgauge {

// Quasi-uniform grid on S^2 from recursive refinement of the icosahedron.
// The node set is closed under omega -> -omega and antipodal nodes are exact
// negatives of each other, so antipodal checks incur no interpolation error.
class SphereGrid {
 public:
  using Face = std::array<std::size_t, 3>;

  // Shared, cached instance; level 0 is the icosahedron (12 nodes), each
  // level quadruples the face count (10*4^level + 2 nodes).
  static std::shared_ptr<const SphereGrid> icosahedral(int level);

  SphereGrid(const SphereGrid&) = delete;
  SphereGrid& operator=(const SphereGrid&) = delete;
  ~SphereGrid();

  int level() const noexcept { return level_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Vec3& node(std::size_t i) const { return nodes_[i]; }
  std::span<const Vec3> nodes() const noexcept { return nodes_; }
  std::size_t antipode(std::size_t i) const { return antipode_[i]; }
  const std::vector<Face>& faces() const noexcept { return faces_; }
  const std::vector<std::vector<std::size_t>>& neighbors() const noexcept { return neighbors_; }
  // Area weights (sum 4*pi) for quadrature over the sphere.
  std::span<const double> weights() const noexcept { return weights_; }
  // Mean chord length between neighbouring nodes.
  double spacing() const noexcept { return spacing_; }

  std::optional<std::size_t> find_node(const Vec3& omega, double tol = 1e-12) const;

  struct Location {
    Face nodes{};
    std::array<double, 3> weights{};
  };
  // Face containing the ray through omega, with normalised barycentric weights.
  Location locate(const Vec3& omega) const;

  // Cubic polyharmonic RBF with a linear polynomial tail. Returns the
  // size()+4 coefficients interpolating `values` at the nodes.
  std::vector<double> rbf_coefficients(std::span<const double> values) const;
  double rbf_eval(std::span<const double> coefficients, const Vec3& omega) const;

 private:
  explicit SphereGrid(int level);
  struct RbfSolver;

  int level_;
  std::vector<Vec3> nodes_;
  std::vector<std::size_t> antipode_;
  std::vector<Face> faces_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<double> weights_;
  double spacing_ = 0.0;

  mutable std::once_flag rbf_once_;
  mutable std::unique_ptr<RbfSolver> rbf_;
};

// Real samples on a SphereGrid with an interpolation rule for off-grid points.
class SphereFunction {
 public:
  enum class Interpolation { Linear = 1, Cubic = 3 };

  SphereFunction(std::shared_ptr<const SphereGrid> grid, std::vector<double> values,
                 Interpolation interpolation = Interpolation::Cubic);

  static SphereFunction sample(std::shared_ptr<const SphereGrid> grid,
                               const std::function<double(const Vec3&)>& f,
                               Interpolation interpolation = Interpolation::Cubic);
  static SphereFunction zero(std::shared_ptr<const SphereGrid> grid);

  const SphereGrid& grid() const noexcept { return *grid_; }
  const std::shared_ptr<const SphereGrid>& grid_ptr() const noexcept { return grid_; }
  Interpolation interpolation() const noexcept { return interpolation_; }
  std::size_t size() const noexcept { return values_.size(); }
  double value(std::size_t node) const { return values_[node]; }
  std::span<const double> values() const noexcept { return values_; }

  // Exact node value when omega is a grid node, interpolated otherwise.
  double operator()(const Vec3& omega) const;
  double mean() const;
  SphereFunction without_mean() const;
  double max_abs_difference(const SphereFunction& other) const;

  SphereFunction operator-() const;
  friend SphereFunction operator+(const SphereFunction& a, const SphereFunction& b);
  friend SphereFunction operator-(const SphereFunction& a, const SphereFunction& b);
  friend SphereFunction operator*(double s, const SphereFunction& f);

 private:
  std::shared_ptr<const SphereGrid> grid_;
  std::vector<double> values_;
  Interpolation interpolation_;
  std::vector<double> rbf_;
};

// f(omega) - f(-omega); omega must be a unit vector.
double antipodal_difference(const SphereFunction& f, const Vec3& omega);

}  // namespace abgauge
