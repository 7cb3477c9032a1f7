#include "abgauge/fields/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>

namespace abgauge {

using nlohmann::json;

namespace {

double param(const json& spec, const char* name, double fallback) {
  if (spec.contains("params") && spec["params"].contains(name)) return spec["params"][name].get<double>();
  return fallback;
}

double required(const json& spec, const char* name) {
  if (!spec.contains("params") || !spec["params"].contains(name))
    fail(ErrorCode::ParseError, "field '" + spec.value("kind", std::string("?")) + "' needs parameter " + name);
  return spec["params"][name].get<double>();
}

Vec3 vec_param(const json& spec, const char* name, int dimension) {
  Vec3 v;
  if (!spec.contains("params") || !spec["params"].contains(name)) return v;
  const auto& a = spec["params"][name];
  if (!a.is_array() || static_cast<int>(a.size()) != dimension)
    fail(ErrorCode::ParseError, std::string("parameter ") + name + " must have one entry per dimension");
  for (int i = 0; i < dimension; ++i) v[i] = a[i].get<double>();
  return v;
}

// Smallest C with magnitude(r) <= C <r>^{-(base+eps0)} on a fine radial grid,
// padded by 5%. Valid for profiles that decay monotonically past r_max.
double radial_bound(const std::function<double(double)>& magnitude, double base, double eps0, double r_max) {
  double c = 0.0;
  const int n = 20000;
  for (int i = 0; i <= n; ++i) {
    const double r = r_max * i / n;
    c = std::max(c, magnitude(r) * std::pow(1.0 + r * r, 0.5 * (base + eps0)));
  }
  return 1.05 * c;
}

std::optional<Envelope> declared(const json& spec, double base) {
  if (!spec.contains("C")) return std::nullopt;
  return Envelope{spec["C"].get<double>(), spec.value("eps0", 1.0), base};
}

FieldSpec spec_of(const json& spec) {
  return FieldSpec{spec.value("kind", std::string("zero")), spec.value("params", json::object())};
}

Vec3 planar_perp(const Vec3& x) { return {-x.y, x.x, 0.0}; }

class GridInterpolator {
 public:
  explicit GridInterpolator(GridCsv g) : g_(std::move(g)) {}

  // Multilinear interpolation of component c; zero outside the grid box.
  double operator()(const Vec3& x, int c) const {
    const int n = g_.dimension;
    std::array<std::size_t, 3> lo{};
    std::array<double, 3> frac{};
    for (int a = 0; a < n; ++a) {
      const auto& ax = g_.axes[a];
      if (ax.size() < 2 || x[a] < ax.front() || x[a] > ax.back()) return 0.0;
      auto it = std::upper_bound(ax.begin(), ax.end(), x[a]);
      std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - ax.begin()) - 1));
      i = std::min(i, ax.size() - 2);
      lo[a] = i;
      frac[a] = (x[a] - ax[i]) / (ax[i + 1] - ax[i]);
    }
    double sum = 0.0;
    for (int corner = 0; corner < (1 << n); ++corner) {
      double w = 1.0;
      std::size_t flat = 0;
      for (int a = 0; a < n; ++a) {
        const int bit = (corner >> a) & 1;
        w *= bit ? frac[a] : 1.0 - frac[a];
        flat = flat * g_.axes[a].size() + lo[a] + bit;
      }
      if (w != 0.0) sum += w * g_.data[flat * g_.components + c];
    }
    return sum;
  }

  std::vector<Vec3> nodes() const {
    std::vector<Vec3> pts;
    const int n = g_.dimension;
    std::size_t total = 1;
    for (int a = 0; a < n; ++a) total *= g_.axes[a].size();
    for (std::size_t flat = 0; flat < total; ++flat) {
      Vec3 p;
      std::size_t rest = flat;
      for (int a = n - 1; a >= 0; --a) {
        p[a] = g_.axes[a][rest % g_.axes[a].size()];
        rest /= g_.axes[a].size();
      }
      pts.push_back(p);
    }
    return pts;
  }

 private:
  GridCsv g_;
};

GridCsv read_sampled(const json& spec, int dimension, int components) {
  if (!spec.contains("params") || !spec["params"].contains("path"))
    fail(ErrorCode::ParseError, "sampled field needs params.path");
  return read_grid_csv(spec["params"]["path"].get<std::string>(), dimension, components);
}

// Monomial sum psi(w) = sum coef w1^a w2^b w3^c and its Euclidean gradient.
struct SpherePoly {
  std::vector<std::array<double, 4>> terms;

  std::pair<double, Vec3> value_and_gradient(const Vec3& w) const {
    double v = 0.0;
    Vec3 g;
    for (const auto& t : terms) {
      const int a = static_cast<int>(t[0]), b = static_cast<int>(t[1]), c = static_cast<int>(t[2]);
      const double coef = t[3];
      v += coef * std::pow(w.x, a) * std::pow(w.y, b) * std::pow(w.z, c);
      if (a > 0) g.x += coef * a * std::pow(w.x, a - 1) * std::pow(w.y, b) * std::pow(w.z, c);
      if (b > 0) g.y += coef * b * std::pow(w.x, a) * std::pow(w.y, b - 1) * std::pow(w.z, c);
      if (c > 0) g.z += coef * c * std::pow(w.x, a) * std::pow(w.y, b) * std::pow(w.z, c - 1);
    }
    return {v, g};
  }
};

}  // namespace

ShortRangeField make_short_range(const json& spec, int dimension) {
  const std::string kind = spec.value("kind", std::string("zero"));
  const double base = 1.0;
  const double eps0 = spec.value("eps0", 1.0);
  if (kind == "zero") return ShortRangeField::zero(dimension);
  if (kind == "sum") {
    ShortRangeField acc = ShortRangeField::zero(dimension);
    for (const auto& t : spec.at("terms")) acc = acc + make_short_range(t, dimension);
    return acc;
  }
  if (kind == "ring_bump") {
    const double amp = param(spec, "amplitude", 1.0);
    const double c = required(spec, "center");
    const double w = required(spec, "width");
    auto h = [amp, c, w](double r) { return amp * std::exp(-(r - c) * (r - c) / (2.0 * w * w)); };
    auto env = declared(spec, base);
    if (!env) env = Envelope{radial_bound([&](double r) { return std::abs(h(r)) * r; }, base, eps0, c + 40.0 * w), eps0, base};
    return ShortRangeField(dimension, [h](const Vec3& x) { return planar_perp(x) * h(norm(x)); }, env, spec_of(spec));
  }
  if (kind == "inverse_power") {
    // amp (-x2, x1, 0) <x>^{-(2 + eps0)}, bounded by |amp| <x>^{-1-eps0}
    const double amp = param(spec, "amplitude", 1.0);
    const double p = param(spec, "exponent", 1.0 + eps0);
    auto env = declared(spec, base);
    if (!env) env = Envelope{std::abs(amp), p - 1.0, base};
    return ShortRangeField(dimension,
                           [amp, p](const Vec3& x) { return planar_perp(x) * (amp * std::pow(1.0 + dot(x, x), -0.5 * (p + 1.0))); },
                           env, spec_of(spec));
  }
  if (kind == "gradient_power") {
    // grad(amp <x>^{-p}) = -p amp x <x>^{-p-2}
    const double amp = param(spec, "amplitude", 1.0);
    const double p = required(spec, "exponent");
    auto env = declared(spec, base);
    if (!env) env = Envelope{std::abs(amp) * p, p, base};
    return ShortRangeField(dimension,
                           [amp, p](const Vec3& x) { return x * (-p * amp * std::pow(1.0 + dot(x, x), -0.5 * p - 1.0)); },
                           env, spec_of(spec));
  }
  if (kind == "gradient_gaussian") {
    const double amp = param(spec, "amplitude", 1.0);
    const double w = required(spec, "width");
    const Vec3 c = vec_param(spec, "center", dimension);
    auto env = declared(spec, base);
    if (!env) {
      const double cn = norm(c);
      env = Envelope{radial_bound(
                         [&](double r) {
                           const double d = std::max(0.0, r - cn);
                           return std::abs(amp) / (w * std::sqrt(std::exp(1.0))) * (d > w ? std::exp(-(d * d - w * w) / (2.0 * w * w)) * d / w : 1.0);
                         },
                         base, eps0, cn + 40.0 * w),
                     eps0, base};
    }
    return ShortRangeField(dimension,
                           [amp, w, c](const Vec3& x) {
                             const Vec3 d = x - c;
                             return d * (-amp / (w * w) * std::exp(-dot(d, d) / (2.0 * w * w)));
                           },
                           env, spec_of(spec));
  }
  if (kind == "sampled") {
    return sampled_vector_field(read_sampled(spec, dimension, dimension), declared(spec, base));
  }
  fail(ErrorCode::ParseError, "unknown vector field kind '" + kind + "'");
}

namespace {

ScalarPotential make_scalar_with_base(const json& spec, int dimension, double base) {
  const std::string kind = spec.value("kind", std::string("zero"));
  const double eps0 = spec.value("eps0", 1.0);
  if (kind == "zero") {
    return ScalarPotential::zero(dimension).with_envelope(Envelope{0.0, 1.0, base});
  }
  if (kind == "sum") {
    ScalarPotential acc = ScalarPotential::zero(dimension).with_envelope(Envelope{0.0, 1.0, base});
    for (const auto& t : spec.at("terms")) acc = acc + make_scalar_with_base(t, dimension, base);
    return acc;
  }
  if (kind == "gaussian_ring") {
    const double amp = param(spec, "amplitude", 1.0);
    const double c = required(spec, "center");
    const double w = required(spec, "width");
    auto h = [amp, c, w](double r) { return amp * std::exp(-(r - c) * (r - c) / (2.0 * w * w)); };
    auto env = declared(spec, base);
    if (!env) env = Envelope{radial_bound([&](double r) { return std::abs(h(r)); }, base, eps0, c + 40.0 * w), eps0, base};
    return ScalarPotential(dimension, [h](const Vec3& x) { return h(norm(x)); }, env, spec_of(spec));
  }
  if (kind == "inverse_power") {
    const double amp = param(spec, "amplitude", 1.0);
    const double p = param(spec, "exponent", base + eps0);
    auto env = declared(spec, base);
    if (!env) env = Envelope{std::abs(amp), p - base, base};
    return ScalarPotential(dimension, [amp, p](const Vec3& x) { return amp * std::pow(1.0 + dot(x, x), -0.5 * p); },
                           env, spec_of(spec));
  }
  if (kind == "bump") {
    const double amp = param(spec, "amplitude", 1.0);
    const double w = required(spec, "width");
    const Vec3 c = vec_param(spec, "center", dimension);
    auto env = declared(spec, base);
    if (!env) {
      const double cn = norm(c);
      env = Envelope{radial_bound(
                         [&](double r) {
                           const double d = std::max(0.0, r - cn);
                           return std::abs(amp) * std::exp(-d * d / (2.0 * w * w));
                         },
                         base, eps0, cn + 40.0 * w),
                     eps0, base};
    }
    return ScalarPotential(dimension,
                           [amp, w, c](const Vec3& x) {
                             const Vec3 d = x - c;
                             return amp * std::exp(-dot(d, d) / (2.0 * w * w));
                           },
                           env, spec_of(spec));
  }
  if (kind == "sampled") return sampled_scalar_field(read_sampled(spec, dimension, 1), declared(spec, base));
  fail(ErrorCode::ParseError, "unknown scalar field kind '" + kind + "'");
}

}  // namespace

ScalarPotential make_scalar(const json& spec, int dimension) { return make_scalar_with_base(spec, dimension, 1.0); }

ScalarPotential make_gauge_scalar(const json& spec, int dimension) {
  return make_scalar_with_base(spec, dimension, 0.0);
}

TransversalField make_transversal(const json& spec, int dimension) {
  if (dimension == 2) {
    return TransversalField::planar(angular_from_json(spec));
  }
  const std::string kind = spec.value("kind", std::string("zero"));
  if (kind == "zero") return TransversalField::zero(3);
  if (kind == "azimuthal") {
    const double amp = param(spec, "amplitude", 1.0);
    return TransversalField::spatial([amp](const Vec3& x) { return planar_perp(x) * (amp / dot(x, x)); }, spec_of(spec));
  }
  if (kind == "gradient_sphere_poly") {
    SpherePoly poly;
    for (const auto& t : spec.at("params").at("terms")) {
      if (!t.is_array() || t.size() != 4) fail(ErrorCode::ParseError, "sphere polynomial terms are [a, b, c, coef]");
      poly.terms.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>(), t[3].get<double>()});
    }
    // grad psi(x/|x|) = (I - w w^T) grad P(w) / |x|
    return TransversalField::spatial(
        [poly](const Vec3& x) {
          const double r = norm(x);
          const Vec3 w = x / r;
          const Vec3 g = poly.value_and_gradient(w).second;
          return (g - w * dot(w, g)) / r;
        },
        spec_of(spec));
  }
  fail(ErrorCode::ParseError, "unknown transversal kind '" + kind + "'");
}

json triples_to_json(const AngularFunction& f) {
  json out = json::array();
  for (const auto& t : f.nonnegative_triples()) out.push_back({t.k, t.re, t.im});
  return out;
}

AngularFunction angular_from_json(const json& triples, int order) {
  if (!triples.is_array()) fail(ErrorCode::ParseError, "Fourier data must be an array of [k, re, im] triples");
  std::vector<FourierTriple> t;
  for (const auto& e : triples) {
    if (!e.is_array() || e.size() != 3) fail(ErrorCode::ParseError, "Fourier triple must be [k, re, im]");
    t.push_back({e[0].get<int>(), e[1].get<double>(), e[2].get<double>()});
  }
  return AngularFunction::from_triples(t, order);
}

PotentialConfig config_from_json(const json& j) {
  try {
    PotentialConfig c;
    c.dimension = j.value("dimension", 2);
    c.obstacle_radius = j.value("R", 1.0);
    c.convex_obstacle = j.value("convex", true);
    c.rapid_decay = j.value("rapid_decay", false);
    if (c.dimension == 2) {
      c.transversal = make_transversal(j.value("flux_profile", json::array()), 2);
    } else {
      c.transversal = make_transversal(j.value("transversal", json{{"kind", "zero"}}), c.dimension);
    }
    c.short_range = make_short_range(j.value("short_range", json{{"kind", "zero"}}), c.dimension);
    c.scalar = make_scalar(j.value("scalar", json{{"kind", "zero"}}), c.dimension);
    c.validate();
    return c;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("configuration: ") + e.what());
  }
}

namespace {

json field_to_json(const FieldSpec& spec, const std::optional<Envelope>& env) {
  json j{{"kind", spec.kind}, {"params", spec.params}};
  if (env) {
    j["C"] = env->C;
    j["eps0"] = env->eps0;
  }
  return j;
}

}  // namespace

json config_to_json(const PotentialConfig& c) {
  json j{{"dimension", c.dimension}, {"R", c.obstacle_radius}, {"convex", c.convex_obstacle},
         {"rapid_decay", c.rapid_decay}};
  if (c.dimension == 2) j["flux_profile"] = triples_to_json(c.transversal.a_hat());
  else j["transversal"] = {{"kind", c.transversal.spec().kind}, {"params", c.transversal.spec().params}};
  j["short_range"] = field_to_json(c.short_range.spec(), c.short_range.envelope());
  j["scalar"] = field_to_json(c.scalar.spec(), c.scalar.envelope());
  return j;
}

PotentialConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
  return config_from_json(j);
}

GaugeElement gauge_from_json(const json& j, int dimension) {
  if (dimension == 3) {
    if (j.value("m", 0) != 0) fail(ErrorCode::InvalidArgument, "n = 3 gauges carry no winding");
    ScalarPotential L = make_gauge_scalar(j.value("L", json{{"kind", "zero"}}), 3);
    if (!j.contains("psi")) return GaugeElement::spatial(SphereFunction::zero(SphereGrid::icosahedral(2)), L);
    const auto& p = j.at("psi");
    auto grid = SphereGrid::icosahedral(p.value("level", 2));
    if (p.contains("terms")) {
      // sum of coef * w1^a w2^b w3^c, zero mean
      const auto terms = p.at("terms").get<std::vector<std::array<double, 4>>>();
      auto psi = SphereFunction::sample(grid, [&terms](const Vec3& w) {
        double v = 0.0;
        for (const auto& t : terms) v += t[3] * std::pow(w.x, t[0]) * std::pow(w.y, t[1]) * std::pow(w.z, t[2]);
        return v;
      });
      return GaugeElement::spatial(psi.without_mean(), L);
    }
    auto values = p.at("values").get<std::vector<double>>();
    if (values.size() != grid->size()) fail(ErrorCode::GridMismatch, "psi values do not match the sphere grid");
    return GaugeElement::spatial(SphereFunction(grid, std::move(values)), L);
  }
  if (dimension != 2) fail(ErrorCode::DimensionMismatch, "gauges exist for n = 2 and n = 3");
  const int m = j.value("m", 0);
  const AngularFunction phi = angular_from_json(j.value("phi", json::array()));
  ScalarPotential L = make_gauge_scalar(j.value("L", json{{"kind", "zero"}}), 2);
  return GaugeElement::planar(m, phi, L);
}

json gauge_to_json(const GaugeElement& g) {
  json j{{"dimension", g.dimension()}, {"m", g.m()}};
  if (g.dimension() == 2) j["phi"] = triples_to_json(g.phi());
  if (g.dimension() == 3 && g.has_psi()) {
    const SphereFunction psi = g.psi();
    j["psi"] = {{"level", psi.grid().level()},
                {"values", std::vector<double>(psi.values().begin(), psi.values().end())}};
  }
  j["L"] = field_to_json(g.L().spec(), g.L().envelope());
  return j;
}

GridCsv read_grid_csv(const std::string& path, int dimension, int components) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  GridCsv g;
  g.dimension = dimension;
  g.components = components;
  std::vector<std::vector<double>> rows;
  std::string line;
  const std::size_t width = static_cast<std::size_t>(dimension + components);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (rows.empty()) continue;  // header
      fail(ErrorCode::ParseError, path + ": non-numeric row");
    }
    if (row.size() != width) fail(ErrorCode::ParseError, path + ": expected " + std::to_string(width) + " columns");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::ParseError, path + ": no data rows");
  g.axes.resize(dimension);
  for (int a = 0; a < dimension; ++a) {
    auto& ax = g.axes[a];
    for (const auto& r : rows) ax.push_back(r[a]);
    std::sort(ax.begin(), ax.end());
    ax.erase(std::unique(ax.begin(), ax.end(), [](double u, double v) { return std::abs(u - v) <= 1e-12 * std::max(1.0, std::abs(u)); }),
             ax.end());
  }
  std::size_t total = 1;
  for (const auto& ax : g.axes) total *= ax.size();
  if (total != rows.size()) fail(ErrorCode::ParseError, path + ": rows do not form a complete regular grid");
  g.data.assign(total * components, 0.0);
  for (const auto& r : rows) {
    std::size_t flat = 0;
    for (int a = 0; a < dimension; ++a) {
      const auto& ax = g.axes[a];
      const auto it = std::lower_bound(ax.begin(), ax.end(), r[a] - 1e-12 * std::max(1.0, std::abs(r[a])));
      flat = flat * ax.size() + static_cast<std::size_t>(it - ax.begin());
    }
    for (int c = 0; c < components; ++c) g.data[flat * components + c] = r[dimension + c];
  }
  return g;
}

void write_grid_csv(const std::string& path, int dimension, const std::vector<Vec3>& points,
                    const std::vector<std::vector<double>>& components) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path);
  out << std::setprecision(17);
  for (int a = 0; a < dimension; ++a) out << (a ? "," : "") << 'x' << a + 1;
  for (std::size_t c = 0; c < components.size(); ++c) out << ",v" << c + 1;
  out << '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int a = 0; a < dimension; ++a) out << (a ? "," : "") << points[i][a];
    for (const auto& comp : components) out << ',' << comp[i];
    out << '\n';
  }
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

ShortRangeField sampled_vector_field(const GridCsv& grid, std::optional<Envelope> envelope) {
  if (grid.components != grid.dimension) fail(ErrorCode::DimensionMismatch, "vector grid needs n components");
  auto interp = std::make_shared<GridInterpolator>(grid);
  const int n = grid.dimension;
  ShortRangeField f(n,
                    [interp, n](const Vec3& x) {
                      Vec3 v;
                      for (int c = 0; c < n; ++c) v[c] = (*interp)(x, c);
                      return v;
                    },
                    envelope, FieldSpec{"sampled", json::object()});
  const auto nodes = interp->nodes();
  f.check_envelope(nodes);
  return f;
}

ScalarPotential sampled_scalar_field(const GridCsv& grid, std::optional<Envelope> envelope) {
  if (grid.components != 1) fail(ErrorCode::DimensionMismatch, "scalar grid needs one component");
  auto interp = std::make_shared<GridInterpolator>(grid);
  ScalarPotential f(grid.dimension, [interp](const Vec3& x) { return (*interp)(x, 0); }, envelope,
                    FieldSpec{"sampled", json::object()});
  const auto nodes = interp->nodes();
  f.check_envelope(nodes);
  return f;
}

}  // namespace abgauge
