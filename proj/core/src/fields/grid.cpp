#include "abgauge/fields/grid.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>

#include "abgauge/error.hpp"

namespace abgauge {

double GridScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values)
    if (std::isfinite(v)) m = std::max(m, std::abs(v));
  return m;
}

std::size_t GridScalarField::finite_count() const {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](double v) { return std::isfinite(v); }));
}

double GridScalarField::relative_l2_error(const GridScalarField& truth) const {
  if (!(truth.grid == grid)) fail(ErrorCode::GridMismatch, "fields live on different grids");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || !std::isfinite(truth.values[i])) continue;
    const double d = values[i] - truth.values[i];
    num += d * d;
    den += truth.values[i] * truth.values[i];
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

void GridScalarField::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path);
  out << std::setprecision(17) << "x,y,value\n";
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const Vec3 p = grid.point(i, j);
      out << p.x << ',' << p.y << ',' << at(i, j) << '\n';
    }
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

}  // namespace abgauge
