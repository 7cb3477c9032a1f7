#include "abgauge/fields/differentiation.hpp"

#include <algorithm>
#include <cmath>

namespace abgauge {

namespace {

template <class T, class F>
T centered(const F& f, const Vec3& x, int axis, double h, int order) {
  Vec3 e;
  e[axis] = h;
  if (order == 2) return (f(x + e) - f(x - e)) * (1.0 / (2.0 * h));
  return (f(x - 2.0 * e) - 8.0 * f(x - e) + 8.0 * f(x + e) - f(x + 2.0 * e)) * (1.0 / (12.0 * h));
}

void check_order(const FdOptions& opts) {
  if (opts.order != 2 && opts.order != 4) fail(ErrorCode::InvalidArgument, "finite-difference order must be 2 or 4");
  if (!(opts.relative_step > 0.0)) fail(ErrorCode::InvalidArgument, "finite-difference step must be positive");
}

}  // namespace

double fd_step(const Vec3& x, const FdOptions& opts) {
  const double r = norm(x);
  return opts.relative_step * (r > 0.0 ? r : 1.0);
}

double TwoForm::component(int i, int j) const {
  if (i == j) return 0.0;
  const double sign = i < j ? 1.0 : -1.0;
  const int a = std::min(i, j);
  const int b = std::max(i, j);
  if (a == 0 && b == 1) return sign * b12;
  if (a == 0 && b == 2) return sign * b13;
  return sign * b23;
}

double TwoForm::operator()(const Vec3& u, const Vec3& v) const {
  return b12 * (u.x * v.y - u.y * v.x) + b13 * (u.x * v.z - u.z * v.x) + b23 * (u.y * v.z - u.z * v.y);
}

double TwoForm::max_abs() const { return std::max({std::abs(b12), std::abs(b13), std::abs(b23)}); }

Vec3 fd_gradient(const ScalarFn& f, const Vec3& x, int dimension, const FdOptions& opts) {
  check_order(opts);
  const double h = fd_step(x, opts);
  Vec3 g;
  for (int a = 0; a < dimension; ++a) g[a] = centered<double>(f, x, a, h, opts.order);
  return g;
}

std::array<std::array<double, 3>, 3> fd_jacobian(const VectorFn& A, const Vec3& x, int dimension,
                                                 const FdOptions& opts) {
  check_order(opts);
  const double h = fd_step(x, opts);
  std::array<std::array<double, 3>, 3> J{};
  for (int j = 0; j < dimension; ++j) {
    const Vec3 col = centered<Vec3>(A, x, j, h, opts.order);
    for (int i = 0; i < dimension; ++i) J[i][j] = col[i];
  }
  return J;
}

double fd_curl2(const VectorFn& A, const Vec3& x, const FdOptions& opts) {
  const auto J = fd_jacobian(A, x, 2, opts);
  return J[1][0] - J[0][1];
}

TwoForm fd_curl3(const VectorFn& A, const Vec3& x, const FdOptions& opts) {
  const auto J = fd_jacobian(A, x, 3, opts);
  return {J[1][0] - J[0][1], J[2][0] - J[0][2], J[2][1] - J[1][2]};
}

}  // namespace abgauge
