#include "abgauge/tomography/xray.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "abgauge/parallel.hpp"
#include "abgauge/quadrature.hpp"

namespace abgauge {

std::string to_string(XRayKind kind) {
  switch (kind) {
    case XRayKind::Scalar: return "scalar";
    case XRayKind::Vector: return "vector";
    case XRayKind::Exponentiated: return "exponentiated";
  }
  return "scalar";
}

XRayKind xray_kind_from_string(const std::string& s) {
  if (s == "scalar") return XRayKind::Scalar;
  if (s == "vector") return XRayKind::Vector;
  if (s == "exponentiated") return XRayKind::Exponentiated;
  fail(ErrorCode::ParseError, "unknown X-ray data kind '" + s + "'");
}

double ParallelGeometry::angle(int i) const { return kPi * i / angles; }

double ParallelGeometry::offset(int j) const { return -rmax + (j + 0.5) * spacing(); }

void ParallelGeometry::validate() const {
  if (angles < 2 || offsets < 8) fail(ErrorCode::InsufficientCoverage, "need at least 2 angles and 8 offsets");
  if (!(rmax > rmin) || rmin < 0.0) fail(ErrorCode::InsufficientCoverage, "need 0 <= rmin < rmax");
  int measured_count = 0;
  for (int j = 0; j < offsets; ++j) measured_count += measured(j) ? 1 : 0;
  if (measured_count < 4) fail(ErrorCode::InsufficientCoverage, "fewer than 4 offsets avoid the obstacle");
}

void XRayData::validate(double unimodular_tol) const {
  if (lines.size() != values.size()) fail(ErrorCode::InvalidArgument, "one value per line expected");
  for (const auto& l : lines)
    if (l.dimension() != dimension) fail(ErrorCode::DimensionMismatch, "line dimension differs from data dimension");
  if (kind == XRayKind::Exponentiated) {
    for (const auto& v : values)
      if (std::abs(std::abs(v) - 1.0) > unimodular_tol)
        fail(ErrorCode::InvalidArgument, "exponentiated X-ray values must have modulus 1");
  } else {
    for (const auto& v : values)
      if (v.imag() != 0.0) fail(ErrorCode::InvalidArgument, "real X-ray data has an imaginary part");
  }
}

void XRayData::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path);
  out << std::setprecision(17);
  out << "# kind=" << to_string(kind) << " component=" << (component.empty() ? "-" : component) << '\n';
  if (geometry)
    out << "# geometry angles=" << geometry->angles << " offsets=" << geometry->offsets << " rmin=" << geometry->rmin
        << " rmax=" << geometry->rmax << '\n';
  out << "n";
  for (int a = 1; a <= dimension; ++a) out << ",x0_" << a;
  for (int a = 1; a <= dimension; ++a) out << ",omega_" << a;
  out << ",value_re,value_im\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out << dimension;
    for (int a = 0; a < dimension; ++a) out << ',' << lines[i].x0()[a];
    for (int a = 0; a < dimension; ++a) out << ',' << lines[i].omega()[a];
    out << ',' << values[i].real() << ',' << values[i].imag() << '\n';
  }
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

namespace {

std::string meta_value(const std::string& line, const std::string& key) {
  const auto pos = line.find(key + "=");
  if (pos == std::string::npos) return {};
  const auto start = pos + key.size() + 1;
  const auto end = line.find(' ', start);
  return line.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

}  // namespace

XRayData XRayData::read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  XRayData d;
  bool dimension_known = false;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (auto k = meta_value(line, "kind"); !k.empty()) d.kind = xray_kind_from_string(k);
      if (auto c = meta_value(line, "component"); !c.empty() && c != "-") d.component = c;
      if (line.find("geometry") != std::string::npos) {
        try {
          ParallelGeometry g;
          g.angles = std::stoi(meta_value(line, "angles"));
          g.offsets = std::stoi(meta_value(line, "offsets"));
          g.rmin = std::stod(meta_value(line, "rmin"));
          g.rmax = std::stod(meta_value(line, "rmax"));
          d.geometry = g;
        } catch (const std::exception&) {
          fail(ErrorCode::ParseError, path + ": malformed geometry line");
        }
      }
      continue;
    }
    if (line[0] == 'n') continue;  // header
    std::vector<double> cells;
    std::stringstream ss(line);
    std::string cell;
    try {
      while (std::getline(ss, cell, ',')) cells.push_back(std::stod(cell));
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, path + ": non-numeric row");
    }
    if (cells.empty()) continue;
    const int n = static_cast<int>(cells[0]);
    if ((n != 2 && n != 3) || cells.size() != static_cast<std::size_t>(2 * n + 3))
      fail(ErrorCode::ParseError, path + ": malformed row");
    if (dimension_known && n != d.dimension) fail(ErrorCode::ParseError, path + ": mixed dimensions");
    d.dimension = n;
    dimension_known = true;
    Vec3 x0;
    Vec3 w;
    for (int a = 0; a < n; ++a) {
      x0[a] = cells[1 + a];
      w[a] = cells[1 + n + a];
    }
    d.lines.push_back(Line::make(x0, w, n));
    d.values.emplace_back(cells[1 + 2 * n], cells[2 + 2 * n]);
  }
  d.validate();
  return d;
}

double truncation_length(const Envelope& envelope, double tail_tol) {
  const double e = envelope.base + envelope.eps0 - 1.0;
  if (!(e > 0.0)) fail(ErrorCode::TailNotBounded, "envelope does not make the line integral converge");
  if (envelope.C <= 0.0) return 0.0;
  return std::pow(envelope.C / (e * tail_tol), 1.0 / e);
}

namespace {

void check_line(const Line& line, double obstacle_radius) {
  if (!(line.distance_to_origin() > obstacle_radius))
    fail(ErrorCode::LineHitsObstacle, "line at distance " + std::to_string(line.distance_to_origin()) +
                                          " meets the obstacle of radius " + std::to_string(obstacle_radius));
}

template <class F>
double truncated_line_quadrature(const F& f, const Line& line, double obstacle_radius,
                                 const std::optional<Envelope>& env, const LineIntegralOptions& opts) {
  if (!env) fail(ErrorCode::TailNotBounded, "no decay envelope declared for the integrand");
  const double S = truncation_length(*env, opts.tail_tol);
  if (S <= 0.0) return 0.0;
  const double core = std::min(S, 4.0 * std::max(line.distance_to_origin(), obstacle_radius));
  quad::Options q;
  q.rel_tol = opts.rel_tol;
  return quad::integrate_truncated(f, core, std::max(S, core), q);
}

}  // namespace

double line_integral_scalar(const ScalarPotential& V, const Line& line, double obstacle_radius,
                            const LineIntegralOptions& opts) {
  check_line(line, obstacle_radius);
  if (V.is_zero()) return 0.0;
  return truncated_line_quadrature([&](double s) { return V(line.at(s)); }, line, obstacle_radius, V.envelope(), opts);
}

double line_integral_scalar(const PotentialConfig& config, const Line& line, const LineIntegralOptions& opts) {
  if (line.dimension() != config.dimension) fail(ErrorCode::DimensionMismatch, "line and configuration dimensions differ");
  return line_integral_scalar(config.scalar, line, config.obstacle_radius, opts);
}

double line_integral_short_range(const ShortRangeField& A1, const Line& line, double obstacle_radius,
                                 const LineIntegralOptions& opts) {
  check_line(line, obstacle_radius);
  if (A1.is_zero()) return 0.0;
  const Vec3 w = line.omega();
  return truncated_line_quadrature([&](double s) { return dot(A1(line.at(s)), w); }, line, obstacle_radius,
                                   A1.envelope(), opts);
}

VectorTransform::VectorTransform(const PotentialConfig& config, LineIntegralOptions opts)
    : config_(config), opts_(opts) {
  if (config.dimension == 2) decomposition_ = decompose_transversal(config.transversal);
}

double VectorTransform::long_range(const Line& line) const {
  if (line.dimension() != config_.dimension) fail(ErrorCode::DimensionMismatch, "line and configuration dimensions differ");
  check_line(line, config_.obstacle_radius);
  if (config_.dimension == 2) {
    const double sign = line.orientation() > 0.0 ? 1.0 : -1.0;
    return decomposition_.alpha * kPi * sign + antipodal_difference(decomposition_.a0, line.omega());
  }
  const Vec3 w = line.omega();
  quad::Options q;
  q.rel_tol = opts_.rel_tol;
  return quad::integrate_tan_mapped([&](double s) { return dot(config_.transversal(line.at(s)), w); },
                                    std::max(line.distance_to_origin(), 1.0), q);
}

double VectorTransform::short_range(const Line& line) const {
  return line_integral_short_range(config_.short_range, line, config_.obstacle_radius, opts_);
}

double VectorTransform::operator()(const Line& line) const { return long_range(line) + short_range(line); }

double line_integral_vector(const PotentialConfig& config, const Line& line, const LineIntegralOptions& opts) {
  return VectorTransform(config, opts)(line);
}

XRayData xray_scalar(const PotentialConfig& config, const std::vector<Line>& lines, const LineIntegralOptions& opts) {
  XRayData d;
  d.dimension = config.dimension;
  d.kind = XRayKind::Scalar;
  d.component = "V";
  d.lines = lines;
  d.values.resize(lines.size());
  parallel_for(lines.size(), [&](std::size_t i) { d.values[i] = line_integral_scalar(config, lines[i], opts); });
  return d;
}

XRayData xray_vector(const PotentialConfig& config, const std::vector<Line>& lines, bool exponentiate,
                     const LineIntegralOptions& opts) {
  const VectorTransform transform(config, opts);
  XRayData d;
  d.dimension = config.dimension;
  d.kind = exponentiate ? XRayKind::Exponentiated : XRayKind::Vector;
  d.component = "A";
  d.lines = lines;
  d.values.resize(lines.size());
  parallel_for(lines.size(), [&](std::size_t i) {
    const double v = transform(lines[i]);
    d.values[i] = exponentiate ? std::polar(1.0, v) : std::complex<double>(v, 0.0);
  });
  return d;
}

}  // namespace abgauge
