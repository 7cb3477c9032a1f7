#pragma once

#include <array>

#include "abgauge/fields/potentials.hpp"
#include "abgauge/tolerances.hpp"

namespace abgauge {

// Centered finite differences with step h = relative_step * |x|.
struct FdOptions {
  double relative_step = defaults::kFdRelativeStep;
  int order = defaults::kFdOrder;  // 2 or 4
};

double fd_step(const Vec3& x, const FdOptions& opts);

// Planar or spatial two-form B = sum_{i<j} b_ij dx_i ^ dx_j. Only the upper
// components are stored so antisymmetry holds exactly.
struct TwoForm {
  double b12 = 0.0;
  double b13 = 0.0;
  double b23 = 0.0;

  double component(int i, int j) const;
  // B(u, v) = sum_ij b_ij u_i v_j
  double operator()(const Vec3& u, const Vec3& v) const;
  // Hodge dual vector (b23, -b13, b12), the usual curl in R^3.
  Vec3 as_vector() const { return {b23, -b13, b12}; }
  double max_abs() const;
};

Vec3 fd_gradient(const ScalarFn& f, const Vec3& x, int dimension, const FdOptions& opts = {});

// J[i][j] = d A_i / d x_j for i, j < dimension.
std::array<std::array<double, 3>, 3> fd_jacobian(const VectorFn& A, const Vec3& x, int dimension,
                                                 const FdOptions& opts = {});

// d1 A2 - d2 A1
double fd_curl2(const VectorFn& A, const Vec3& x, const FdOptions& opts = {});
TwoForm fd_curl3(const VectorFn& A, const Vec3& x, const FdOptions& opts = {});

}  // namespace abgauge
