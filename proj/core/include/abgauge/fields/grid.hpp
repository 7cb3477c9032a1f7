#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "abgauge/vec.hpp"

namespace abgauge {

// Regular planar grid of cell centres over [x_min, x_max] x [y_min, y_max].
struct Grid2D {
  double x_min = -1.0;
  double x_max = 1.0;
  double y_min = -1.0;
  double y_max = 1.0;
  int nx = 1;
  int ny = 1;

  static Grid2D square(double half_width, int n) { return {-half_width, half_width, -half_width, half_width, n, n}; }

  double dx() const { return (x_max - x_min) / nx; }
  double dy() const { return (y_max - y_min) / ny; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  Vec3 point(int i, int j) const { return {x_min + (i + 0.5) * dx(), y_min + (j + 0.5) * dy(), 0.0}; }

  bool operator==(const Grid2D&) const = default;
};

// Annular region r_inner < |x| < r_outer sampled at the cells of a grid.
struct AnnulusRegion {
  Grid2D grid;
  double r_inner = 1.0;
  double r_outer = 2.0;

  static AnnulusRegion around(double r_inner, double r_outer, int n) {
    return {Grid2D::square(r_outer, n), r_inner, r_outer};
  }
  bool contains(const Vec3& x) const {
    const double r = norm(x);
    return r > r_inner && r < r_outer;
  }
};

// Scalar samples on a Grid2D; NaN marks cells outside the certified region.
struct GridScalarField {
  Grid2D grid;
  std::vector<double> values;

  GridScalarField() = default;
  explicit GridScalarField(const Grid2D& g)
      : grid(g), values(g.size(), std::numeric_limits<double>::quiet_NaN()) {}

  double& at(int i, int j) { return values[grid.index(i, j)]; }
  double at(int i, int j) const { return values[grid.index(i, j)]; }

  // Largest |value| over finite cells.
  double max_abs() const;
  std::size_t finite_count() const;
  // sqrt(sum (f - g)^2 / sum g^2) over cells where both are finite.
  double relative_l2_error(const GridScalarField& truth) const;
  // Rows "x,y,value".
  void write_csv(const std::string& path) const;
};

}  // namespace abgauge
