#include "abgauge/tomography/radon.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>

#include "../fftw_lock.hpp"
#include "abgauge/parallel.hpp"

namespace abgauge {

void Sinogram::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path);
  out << std::setprecision(17);
  for (int i = 0; i < geometry.angles; ++i) {
    for (int j = 0; j < geometry.offsets; ++j) out << (j ? "," : "") << at(i, j);
    out << '\n';
  }
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

void Sinogram::write_long_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path);
  out << std::setprecision(17) << "angle,offset,measured,value\n";
  for (int i = 0; i < geometry.angles; ++i)
    for (int j = 0; j < geometry.offsets; ++j)
      out << geometry.angle(i) << ',' << geometry.offset(j) << ',' << (geometry.measured(j) ? 1 : 0) << ','
          << at(i, j) << '\n';
  if (!out) fail(ErrorCode::IoError, "failed writing " + path);
}

XRayData Sinogram::to_xray(XRayKind kind, const std::string& component) const {
  XRayData d;
  d.dimension = 2;
  d.kind = kind;
  d.component = component;
  d.geometry = geometry;
  for (int i = 0; i < geometry.angles; ++i)
    for (int j = 0; j < geometry.offsets; ++j) {
      if (!geometry.measured(j)) continue;
      d.lines.push_back(geometry.line(i, j));
      d.values.emplace_back(at(i, j), 0.0);
    }
  return d;
}

namespace {

struct LineCoordinates {
  double theta;
  double p;
  bool flipped;
};

// theta in [0, pi) with the offset sign adjusted when the direction is reversed.
LineCoordinates coordinates(const Line& l) {
  double theta = std::atan2(l.omega().y, l.omega().x);
  double p = l.orientation();
  bool flipped = false;
  if (theta < -1e-12) {
    theta += kPi;
    p = -p;
    flipped = true;
  } else if (theta >= kPi - 1e-12) {
    theta -= kPi;
    p = -p;
    flipped = true;
  }
  if (theta < 0.0) theta = 0.0;
  return {theta, p, flipped};
}

ParallelGeometry infer_geometry(const XRayData& data) {
  std::vector<double> thetas;
  std::vector<double> ps;
  for (const auto& l : data.lines) {
    const auto c = coordinates(l);
    thetas.push_back(c.theta);
    ps.push_back(c.p);
  }
  auto unique_sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }), v.end());
    return v;
  };
  const auto ut = unique_sorted(thetas);
  const auto up = unique_sorted(ps);
  if (ut.size() < 2 || up.size() < 4) fail(ErrorCode::InsufficientCoverage, "too few distinct angles or offsets");
  double dp = INFINITY;
  for (std::size_t k = 1; k < up.size(); ++k) dp = std::min(dp, up[k] - up[k - 1]);
  ParallelGeometry g;
  g.angles = static_cast<int>(ut.size());
  g.rmax = std::max(std::abs(up.front()), std::abs(up.back())) + 0.5 * dp;
  g.offsets = static_cast<int>(std::lround(2.0 * g.rmax / dp));
  double pmin = INFINITY;
  for (double p : up) pmin = std::min(pmin, std::abs(p));
  g.rmin = std::max(0.0, pmin - 0.5 * dp);
  return g;
}

}  // namespace

Sinogram Sinogram::from_xray(const XRayData& data) {
  if (data.dimension != 2) fail(ErrorCode::DimensionMismatch, "parallel-beam inversion is planar");
  if (data.kind == XRayKind::Exponentiated)
    fail(ErrorCode::InvalidArgument, "resolve the winding and take phases before inverting exponentiated data");
  data.validate();
  const ParallelGeometry g = data.geometry ? *data.geometry : infer_geometry(data);
  g.validate();
  Sinogram s(g);
  std::vector<char> seen(s.values.size(), 0);
  const double dp = g.spacing();
  for (std::size_t k = 0; k < data.lines.size(); ++k) {
    const auto c = coordinates(data.lines[k]);
    const int i = static_cast<int>(std::lround(c.theta * g.angles / kPi)) % g.angles;
    const int j = static_cast<int>(std::lround((c.p + g.rmax) / dp - 0.5));
    if (j < 0 || j >= g.offsets || std::abs(g.angle(i) - c.theta) > 1e-6 || std::abs(g.offset(j) - c.p) > 1e-6 * dp * g.offsets)
      fail(ErrorCode::InsufficientCoverage, "line does not sit on the parallel-beam grid");
    const double sign = (c.flipped && data.kind == XRayKind::Vector) ? -1.0 : 1.0;
    s.at(i, j) = sign * data.values[k].real();
    seen[static_cast<std::size_t>(i) * g.offsets + j] = 1;
  }
  for (int i = 0; i < g.angles; ++i)
    for (int j = 0; j < g.offsets; ++j)
      if (g.measured(j) && !seen[static_cast<std::size_t>(i) * g.offsets + j])
        fail(ErrorCode::InsufficientCoverage, "missing line at angle index " + std::to_string(i) +
                                                  ", offset index " + std::to_string(j));
  return s;
}

Sinogram forward_project_scalar(const PotentialConfig& config, const ParallelGeometry& geometry,
                                const LineIntegralOptions& opts) {
  geometry.validate();
  Sinogram s(geometry);
  parallel_for(static_cast<std::size_t>(geometry.angles), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    for (int j = 0; j < geometry.offsets; ++j)
      if (geometry.measured(j)) s.at(i, j) = line_integral_scalar(config, geometry.line(i, j), opts);
  });
  return s;
}

Sinogram forward_project_vector(const PotentialConfig& config, const ParallelGeometry& geometry,
                                const LineIntegralOptions& opts) {
  geometry.validate();
  const VectorTransform transform(config, opts);
  Sinogram s(geometry);
  parallel_for(static_cast<std::size_t>(geometry.angles), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    for (int j = 0; j < geometry.offsets; ++j)
      if (geometry.measured(j)) s.at(i, j) = transform(geometry.line(i, j));
  });
  return s;
}

Grid2D reconstruction_grid(const ParallelGeometry& geometry, const ReconstructionOptions& opts) {
  const int n = opts.grid_size > 0 ? opts.grid_size : std::max(8, geometry.offsets / 2);
  return Grid2D::square(geometry.rmax, n);
}

namespace {

// Ram-Lak spatial kernel (h_0 = 1/4d^2, h_odd = -1/(n pi d)^2) transformed on a
// zero-padded length, times an optional Hann window vanishing at Nyquist.
class RampFilter {
 public:
  RampFilter(int offsets, double dp, bool hann) : offsets_(offsets), dp_(dp) {
    length_ = 1;
    while (length_ < 4 * offsets) length_ *= 2;
    std::vector<double> h(length_, 0.0);
    h[0] = 1.0 / (4.0 * dp * dp);
    for (int n = 1; n < offsets; n += 2) {
      const double v = -1.0 / (n * n * kPi * kPi * dp * dp);
      h[n] = v;
      h[length_ - n] = v;
    }
    std::vector<fftw_complex> spectrum(length_ / 2 + 1);
    {
      std::lock_guard lock(detail::fftw_planner_mutex());
      fftw_plan p = fftw_plan_dft_r2c_1d(length_, h.data(), spectrum.data(), FFTW_ESTIMATE);
      fftw_execute(p);
      fftw_destroy_plan(p);
      forward_ = fftw_plan_dft_r2c_1d(length_, h.data(), spectrum.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
      std::vector<double> tmp(length_);
      backward_ = fftw_plan_dft_c2r_1d(length_, spectrum.data(), tmp.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    response_.resize(length_ / 2 + 1);
    for (int k = 0; k <= length_ / 2; ++k) {
      const double f = static_cast<double>(k) / length_;
      const double window = hann ? 0.5 * (1.0 + std::cos(kTwoPi * f)) : 1.0;
      // The kernel is even, so its transform is real.
      response_[k] = spectrum[k][0] * window;
    }
  }

  ~RampFilter() {
    std::lock_guard lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }

  RampFilter(const RampFilter&) = delete;
  RampFilter& operator=(const RampFilter&) = delete;

  // q = (h * row) dp, truncated to the original length. Thread safe.
  void apply(const double* row, double* q) const {
    std::vector<double> buf(length_, 0.0);
    std::copy(row, row + offsets_, buf.begin());
    std::vector<fftw_complex> spec(length_ / 2 + 1);
    fftw_execute_dft_r2c(forward_, buf.data(), spec.data());
    for (int k = 0; k <= length_ / 2; ++k) {
      spec[k][0] *= response_[k];
      spec[k][1] *= response_[k];
    }
    fftw_execute_dft_c2r(backward_, spec.data(), buf.data());
    const double scale = dp_ / length_;
    for (int j = 0; j < offsets_; ++j) q[j] = buf[j] * scale;
  }

 private:
  int offsets_;
  double dp_;
  int length_ = 0;
  std::vector<double> response_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

GridScalarField backproject(const std::vector<double>& filtered, const ParallelGeometry& g, const Grid2D& grid) {
  GridScalarField out(grid);
  std::vector<double> sn(g.angles);
  std::vector<double> cs(g.angles);
  for (int i = 0; i < g.angles; ++i) {
    sn[i] = std::sin(g.angle(i));
    cs[i] = std::cos(g.angle(i));
  }
  const double dp = g.spacing();
  const double p0 = g.offset(0);
  const double weight = kPi / g.angles;
  parallel_for(static_cast<std::size_t>(grid.ny), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i < grid.nx; ++i) {
      const Vec3 x = grid.point(i, j);
      double acc = 0.0;
      for (int a = 0; a < g.angles; ++a) {
        const double u = (x.x * sn[a] - x.y * cs[a] - p0) / dp;
        if (u < 0.0 || u > g.offsets - 1) continue;
        const int k = std::min(static_cast<int>(u), g.offsets - 2);
        const double t = u - k;
        const double* q = filtered.data() + static_cast<std::size_t>(a) * g.offsets;
        acc += (1.0 - t) * q[k] + t * q[k + 1];
      }
      out.at(i, j) = acc * weight;
    }
  });
  return out;
}

std::vector<double> filter_all(const Sinogram& s, bool hann) {
  const auto& g = s.geometry;
  RampFilter filter(g.offsets, g.spacing(), hann);
  std::vector<double> q(s.values.size());
  parallel_for(static_cast<std::size_t>(g.angles), [&](std::size_t i) {
    filter.apply(s.values.data() + i * g.offsets, q.data() + i * g.offsets);
  });
  return q;
}

double bilinear(const GridScalarField& img, const Vec3& x) {
  const auto& gr = img.grid;
  const double u = (x.x - gr.x_min) / gr.dx() - 0.5;
  const double v = (x.y - gr.y_min) / gr.dy() - 0.5;
  if (u < -1.0 || v < -1.0 || u > gr.nx || v > gr.ny) return 0.0;
  const int i0 = static_cast<int>(std::floor(u));
  const int j0 = static_cast<int>(std::floor(v));
  const double tu = u - i0;
  const double tv = v - j0;
  auto px = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= gr.nx || j >= gr.ny) return 0.0;
    return img.at(i, j);
  };
  return (1 - tu) * (1 - tv) * px(i0, j0) + tu * (1 - tv) * px(i0 + 1, j0) + (1 - tu) * tv * px(i0, j0 + 1) +
         tu * tv * px(i0 + 1, j0 + 1);
}

// Re-projects the masked image on the unmeasured lines by ray marching.
void complete_gap(Sinogram& s, const GridScalarField& img) {
  const auto& g = s.geometry;
  const double ds = 0.5 * img.grid.dx();
  const double reach = 1.5 * g.rmax;
  const int steps = static_cast<int>(std::ceil(2.0 * reach / ds));
  parallel_for(static_cast<std::size_t>(g.angles), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    const double t = g.angle(i);
    const Vec3 w(std::cos(t), std::sin(t));
    const Vec3 n(std::sin(t), -std::cos(t));
    for (int j = 0; j < g.offsets; ++j) {
      if (g.measured(j)) continue;
      const Vec3 x0 = n * g.offset(j);
      double acc = 0.0;
      for (int k = 0; k < steps; ++k) acc += bilinear(img, x0 + (-reach + k * ds) * w);
      s.at(i, j) = acc * ds;
    }
  });
}

GridScalarField invert_with_completion(const Sinogram& data, const ReconstructionOptions& opts) {
  const auto& g = data.geometry;
  g.validate();
  if (data.values.size() != static_cast<std::size_t>(g.angles) * g.offsets)
    fail(ErrorCode::InsufficientCoverage, "sinogram size does not match its geometry");
  const Grid2D grid = reconstruction_grid(g, opts);
  Sinogram s = data;
  for (int i = 0; i < g.angles; ++i)
    for (int j = 0; j < g.offsets; ++j)
      if (!g.measured(j)) s.at(i, j) = 0.0;

  auto masked = [&](GridScalarField img) {
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) {
        const double r = norm(grid.point(i, j));
        if (!(r > g.rmin && r < g.rmax)) img.at(i, j) = 0.0;
      }
    return img;
  };

  GridScalarField img = filtered_backprojection(s, grid, opts.hann);
  if (g.rmin > 0.0) {
    for (int it = 0; it < opts.completion_iterations; ++it) {
      complete_gap(s, masked(img));
      img = filtered_backprojection(s, grid, opts.hann);
    }
  }
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double r = norm(grid.point(i, j));
      if (!(r > g.rmin && r < g.rmax)) img.at(i, j) = std::numeric_limits<double>::quiet_NaN();
    }
  return img;
}

}  // namespace

GridScalarField filtered_backprojection(const Sinogram& data, const Grid2D& grid, bool hann) {
  return backproject(filter_all(data, hann), data.geometry, grid);
}

GridScalarField radon_invert_scalar(const Sinogram& data, const ReconstructionOptions& opts) {
  return invert_with_completion(data, opts);
}

GridScalarField radon_invert_scalar(const XRayData& data, const ReconstructionOptions& opts) {
  if (data.kind != XRayKind::Scalar) fail(ErrorCode::InvalidArgument, "scalar inversion needs scalar X-ray data");
  return invert_with_completion(Sinogram::from_xray(data), opts);
}

Sinogram offset_derivative(const Sinogram& v) {
  const auto& g = v.geometry;
  Sinogram d(g);
  const double dp = g.spacing();
  auto ok = [&](int j) { return j >= 0 && j < g.offsets && g.measured(j); };
  for (int i = 0; i < g.angles; ++i) {
    for (int j = 0; j < g.offsets; ++j) {
      if (!g.measured(j)) continue;
      double value = 0.0;
      if (ok(j - 1) && ok(j + 1)) {
        value = (v.at(i, j + 1) - v.at(i, j - 1)) / (2.0 * dp);
      } else if (ok(j + 1) && ok(j + 2)) {
        value = (-3.0 * v.at(i, j) + 4.0 * v.at(i, j + 1) - v.at(i, j + 2)) / (2.0 * dp);
      } else if (ok(j - 1) && ok(j - 2)) {
        value = (3.0 * v.at(i, j) - 4.0 * v.at(i, j - 1) + v.at(i, j - 2)) / (2.0 * dp);
      } else {
        fail(ErrorCode::InsufficientCoverage, "offset sampling too sparse to differentiate");
      }
      d.at(i, j) = value;
    }
  }
  return d;
}

GridScalarField recover_field_2d(const Sinogram& vector_transform, const ReconstructionOptions& opts) {
  vector_transform.geometry.validate();
  return invert_with_completion(offset_derivative(vector_transform), opts);
}

GridScalarField recover_field_2d(const XRayData& data, const ReconstructionOptions& opts) {
  if (data.kind != XRayKind::Vector) fail(ErrorCode::InvalidArgument, "field recovery needs real vector-transform data");
  return recover_field_2d(Sinogram::from_xray(data), opts);
}

GridScalarField sample_on_annulus(const ScalarFn& f, const Grid2D& grid, double r_inner, double r_outer) {
  GridScalarField out(grid);
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const Vec3 x = grid.point(i, j);
      const double r = norm(x);
      if (r > r_inner && r < r_outer) out.at(i, j) = f(x);
    }
  return out;
}

}  // namespace abgauge
