#include "abgauge/angular/sphere.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

#include "abgauge/error.hpp"

namespace abgauge {

struct SphereGrid::RbfSolver {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

namespace {

double rbf_kernel(double r) { return r * r * r; }

std::uint64_t edge_key(std::size_t a, std::size_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
}

// L'Huilier-free form of the spherical excess of a unit triangle.
double spherical_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double num = std::abs(dot(a, cross(b, c)));
  const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(num, den);
}

struct CellKey {
  long x, y, z;
  bool operator==(const CellKey&) const = default;
};
struct CellHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    return static_cast<std::size_t>(k.x * 73856093L ^ k.y * 19349663L ^ k.z * 83492791L);
  }
};

}  // namespace

std::shared_ptr<const SphereGrid> SphereGrid::icosahedral(int level) {
  if (level < 0 || level > 6) fail(ErrorCode::InvalidArgument, "sphere grid level must be in [0, 6]");
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const SphereGrid>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(level);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const SphereGrid> grid(new SphereGrid(level));
  cache.emplace(level, grid);
  return grid;
}

SphereGrid::~SphereGrid() = default;

SphereGrid::SphereGrid(int level) : level_(level) {
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  const double raw[12][3] = {{0, 1, phi},  {0, -1, phi},  {0, 1, -phi},  {0, -1, -phi},
                             {1, phi, 0},  {-1, phi, 0},  {1, -phi, 0},  {-1, -phi, 0},
                             {phi, 0, 1},  {-phi, 0, 1},  {phi, 0, -1},  {-phi, 0, -1}};
  for (const auto& v : raw) nodes_.push_back(normalized(Vec3(v[0], v[1], v[2])));

  // Icosahedron faces: vertex triples at mutual minimal distance.
  double edge = 1e9;
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = i + 1; j < 12; ++j) edge = std::min(edge, norm(nodes_[i] - nodes_[j]));
  auto adjacent = [&](std::size_t i, std::size_t j) {
    return std::abs(norm(nodes_[i] - nodes_[j]) - edge) < 1e-9;
  };
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = i + 1; j < 12; ++j)
      for (std::size_t k = j + 1; k < 12; ++k)
        if (adjacent(i, j) && adjacent(j, k) && adjacent(i, k)) faces_.push_back({i, j, k});

  for (int l = 0; l < level; ++l) {
    std::unordered_map<std::uint64_t, std::size_t> midpoint;
    auto mid = [&](std::size_t a, std::size_t b) {
      const auto key = edge_key(a, b);
      auto found = midpoint.find(key);
      if (found != midpoint.end()) return found->second;
      nodes_.push_back(normalized(nodes_[a] + nodes_[b]));
      midpoint.emplace(key, nodes_.size() - 1);
      return nodes_.size() - 1;
    };
    std::vector<Face> refined;
    refined.reserve(faces_.size() * 4);
    for (const auto& f : faces_) {
      const auto ab = mid(f[0], f[1]);
      const auto bc = mid(f[1], f[2]);
      const auto ca = mid(f[2], f[0]);
      refined.push_back({f[0], ab, ca});
      refined.push_back({f[1], bc, ab});
      refined.push_back({f[2], ca, bc});
      refined.push_back({ab, bc, ca});
    }
    faces_ = std::move(refined);
  }

  // Outward orientation.
  for (auto& f : faces_) {
    const Vec3 n = cross(nodes_[f[1]] - nodes_[f[0]], nodes_[f[2]] - nodes_[f[0]]);
    if (dot(n, nodes_[f[0]] + nodes_[f[1]] + nodes_[f[2]]) < 0.0) std::swap(f[1], f[2]);
  }

  // Antipodal pairing through a spatial hash, then exact symmetrisation.
  const double cell = 1e-6;
  auto key_of = [&](const Vec3& v) {
    return CellKey{static_cast<long>(std::floor(v.x / cell)), static_cast<long>(std::floor(v.y / cell)),
                   static_cast<long>(std::floor(v.z / cell))};
  };
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> hash;
  for (std::size_t i = 0; i < nodes_.size(); ++i) hash[key_of(nodes_[i])].push_back(i);
  antipode_.assign(nodes_.size(), nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Vec3 target = -nodes_[i];
    const CellKey k = key_of(target);
    double best = 1e-9;
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy)
        for (long dz = -1; dz <= 1; ++dz) {
          auto it = hash.find({k.x + dx, k.y + dy, k.z + dz});
          if (it == hash.end()) continue;
          for (auto j : it->second) {
            const double d = norm(nodes_[j] - target);
            if (d < best) {
              best = d;
              antipode_[i] = j;
            }
          }
        }
    if (antipode_[i] == nodes_.size()) fail(ErrorCode::InvalidArgument, "sphere grid is not antipodally closed");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i < antipode_[i]) nodes_[antipode_[i]] = -nodes_[i];
  }

  neighbors_.assign(nodes_.size(), {});
  weights_.assign(nodes_.size(), 0.0);
  double chord_sum = 0.0;
  std::size_t chord_count = 0;
  for (const auto& f : faces_) {
    const double area = spherical_area(nodes_[f[0]], nodes_[f[1]], nodes_[f[2]]);
    for (int a = 0; a < 3; ++a) {
      weights_[f[a]] += area / 3.0;
      const auto u = f[a];
      const auto v = f[(a + 1) % 3];
      auto& nu = neighbors_[u];
      if (std::find(nu.begin(), nu.end(), v) == nu.end()) {
        nu.push_back(v);
        neighbors_[v].push_back(u);
        chord_sum += norm(nodes_[u] - nodes_[v]);
        ++chord_count;
      }
    }
  }
  spacing_ = chord_sum / static_cast<double>(chord_count);
}

std::optional<std::size_t> SphereGrid::find_node(const Vec3& omega, double tol) const {
  // Nearest node via the containing face.
  const Location loc = locate(omega);
  for (auto i : loc.nodes) {
    if (norm(nodes_[i] - omega) <= tol) return i;
  }
  return std::nullopt;
}

SphereGrid::Location SphereGrid::locate(const Vec3& omega) const {
  Location best;
  double best_min = -1e300;
  for (const auto& f : faces_) {
    const Vec3& a = nodes_[f[0]];
    const Vec3& b = nodes_[f[1]];
    const Vec3& c = nodes_[f[2]];
    const double det = dot(a, cross(b, c));
    const double la = dot(omega, cross(b, c)) / det;
    const double lb = dot(a, cross(omega, c)) / det;
    const double lc = dot(a, cross(b, omega)) / det;
    const double lmin = std::min({la, lb, lc});
    if (lmin > best_min) {
      best_min = lmin;
      const double s = la + lb + lc;
      best.nodes = f;
      best.weights = {la / s, lb / s, lc / s};
      if (lmin >= 0.0) break;
    }
  }
  return best;
}

std::vector<double> SphereGrid::rbf_coefficients(std::span<const double> values) const {
  const auto n = static_cast<Eigen::Index>(nodes_.size());
  if (values.size() != nodes_.size()) fail(ErrorCode::GridMismatch, "value count does not match grid size");
  std::call_once(rbf_once_, [&] {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 4, n + 4);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rbf_kernel(norm(nodes_[i] - nodes_[j]));
      m(i, n) = m(n, i) = 1.0;
      for (int d = 0; d < 3; ++d) m(i, n + 1 + d) = m(n + 1 + d, i) = nodes_[i][d];
    }
    rbf_ = std::make_unique<RbfSolver>();
    rbf_->lu.compute(m);
  });
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 4);
  for (Eigen::Index i = 0; i < n; ++i) rhs(i) = values[i];
  const Eigen::VectorXd sol = rbf_->lu.solve(rhs);
  return {sol.data(), sol.data() + sol.size()};
}

double SphereGrid::rbf_eval(std::span<const double> c, const Vec3& omega) const {
  const std::size_t n = nodes_.size();
  double sum = c[n] + c[n + 1] * omega.x + c[n + 2] * omega.y + c[n + 3] * omega.z;
  for (std::size_t j = 0; j < n; ++j) sum += c[j] * rbf_kernel(norm(nodes_[j] - omega));
  return sum;
}

SphereFunction::SphereFunction(std::shared_ptr<const SphereGrid> grid, std::vector<double> values,
                               Interpolation interpolation)
    : grid_(std::move(grid)), values_(std::move(values)), interpolation_(interpolation) {
  if (!grid_) fail(ErrorCode::InvalidArgument, "SphereFunction needs a grid");
  if (values_.size() != grid_->size()) fail(ErrorCode::GridMismatch, "value count does not match grid size");
  if (interpolation_ == Interpolation::Cubic) rbf_ = grid_->rbf_coefficients(values_);
}

SphereFunction SphereFunction::sample(std::shared_ptr<const SphereGrid> grid,
                                      const std::function<double(const Vec3&)>& f,
                                      Interpolation interpolation) {
  std::vector<double> values(grid->size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = f(grid->node(i));
  return SphereFunction(std::move(grid), std::move(values), interpolation);
}

SphereFunction SphereFunction::zero(std::shared_ptr<const SphereGrid> grid) {
  const auto n = grid->size();
  return SphereFunction(std::move(grid), std::vector<double>(n, 0.0));
}

double SphereFunction::operator()(const Vec3& omega) const {
  const Vec3 u = normalized(omega);
  const auto loc = grid_->locate(u);
  for (auto i : loc.nodes) {
    if (norm(grid_->node(i) - u) <= 1e-13) return values_[i];
  }
  if (interpolation_ == Interpolation::Cubic) return grid_->rbf_eval(rbf_, u);
  double sum = 0.0;
  for (int a = 0; a < 3; ++a) sum += loc.weights[a] * values_[loc.nodes[a]];
  return sum;
}

double SphereFunction::mean() const {
  double acc = 0.0;
  const auto w = grid_->weights();
  for (std::size_t i = 0; i < values_.size(); ++i) acc += w[i] * values_[i];
  return acc / (4.0 * kPi);
}

SphereFunction SphereFunction::without_mean() const {
  std::vector<double> v = values_;
  const double m = mean();
  for (auto& x : v) x -= m;
  return SphereFunction(grid_, std::move(v), interpolation_);
}

double SphereFunction::max_abs_difference(const SphereFunction& other) const {
  if (other.grid_ != grid_) fail(ErrorCode::GridMismatch, "sphere functions live on different grids");
  double d = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) d = std::max(d, std::abs(values_[i] - other.values_[i]));
  return d;
}

SphereFunction SphereFunction::operator-() const { return -1.0 * *this; }

SphereFunction operator+(const SphereFunction& a, const SphereFunction& b) {
  if (a.grid_ != b.grid_) fail(ErrorCode::GridMismatch, "sphere functions live on different grids");
  std::vector<double> v(a.values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
  return SphereFunction(a.grid_, std::move(v), a.interpolation_);
}

SphereFunction operator-(const SphereFunction& a, const SphereFunction& b) { return a + (-b); }

SphereFunction operator*(double s, const SphereFunction& f) {
  std::vector<double> v = f.values_;
  for (auto& x : v) x *= s;
  return SphereFunction(f.grid_, std::move(v), f.interpolation_);
}

double antipodal_difference(const SphereFunction& f, const Vec3& omega) {
  if (std::abs(norm(omega) - 1.0) > 1e-12) fail(ErrorCode::InvalidArgument, "omega must be a unit vector");
  if (auto node = f.grid().find_node(omega)) {
    return f.value(*node) - f.value(f.grid().antipode(*node));
  }
  return f(omega) - f(-omega);
}

}  // namespace abgauge
