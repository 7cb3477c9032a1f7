#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "abgauge/fields/operations.hpp"
#include "abgauge/tomography/geometry.hpp"

namespace abgauge {

enum class XRayKind { Scalar, Vector, Exponentiated };

std::string to_string(XRayKind kind);
XRayKind xray_kind_from_string(const std::string& s);

// Planar parallel-beam sampling: theta_i = i pi / angles and
// p_j = -rmax + (j + 1/2) 2 rmax / offsets. Lines with |p_j| <= rmin meet the
// obstacle and carry no data.
struct ParallelGeometry {
  int angles = 180;
  int offsets = 256;
  double rmin = 1.0;
  double rmax = 3.0;

  double angle(int i) const;
  double offset(int j) const;
  double spacing() const { return 2.0 * rmax / offsets; }
  bool measured(int j) const { return std::abs(offset(j)) > rmin; }
  Line line(int i, int j) const { return Line::from_angle_offset(angle(i), offset(j)); }
  // InsufficientCoverage for degenerate sampling.
  void validate() const;
  bool operator==(const ParallelGeometry&) const = default;
};

// Line-integral data: real transforms or exponentiated vector transforms.
struct XRayData {
  int dimension = 2;
  XRayKind kind = XRayKind::Scalar;
  std::string component;  // free-form label, e.g. "V" or "A"
  std::vector<Line> lines;
  std::vector<std::complex<double>> values;
  std::optional<ParallelGeometry> geometry;

  void validate(double unimodular_tol = 1e-10) const;
  // Rows (n, x0..., omega..., value_re, value_im); metadata in '#' lines.
  void write_csv(const std::string& path) const;
  static XRayData read_csv(const std::string& path);
};

struct LineIntegralOptions {
  double tail_tol = defaults::kTailTol;
  double rel_tol = defaults::kQuadratureRelTol;
};

// S with C S^{-e}/e < tail_tol for the envelope exponent e = base + eps0 - 1.
double truncation_length(const Envelope& envelope, double tail_tol);

double line_integral_scalar(const ScalarPotential& V, const Line& line, double obstacle_radius,
                            const LineIntegralOptions& opts = {});
double line_integral_scalar(const PotentialConfig& config, const Line& line, const LineIntegralOptions& opts = {});
// Integral of A1 . omega by truncated quadrature.
double line_integral_short_range(const ShortRangeField& A1, const Line& line, double obstacle_radius,
                                 const LineIntegralOptions& opts = {});

// Vector transform with the long-range part split off analytically in the
// plane: alpha pi sign(x0 x omega) + a0(omega) - a0(-omega). In three
// dimensions A0 . omega is integrated directly (it decays like s^-2).
class VectorTransform {
 public:
  explicit VectorTransform(const PotentialConfig& config, LineIntegralOptions opts = {});

  double operator()(const Line& line) const;
  double long_range(const Line& line) const;
  double short_range(const Line& line) const;
  const TransversalDecomposition& decomposition() const { return decomposition_; }

 private:
  PotentialConfig config_;
  LineIntegralOptions opts_;
  TransversalDecomposition decomposition_;
};

double line_integral_vector(const PotentialConfig& config, const Line& line, const LineIntegralOptions& opts = {});

XRayData xray_scalar(const PotentialConfig& config, const std::vector<Line>& lines,
                     const LineIntegralOptions& opts = {});
// Real vector transform, or e^{i transform} when exponentiate is set.
XRayData xray_vector(const PotentialConfig& config, const std::vector<Line>& lines, bool exponentiate = false,
                     const LineIntegralOptions& opts = {});

}  // namespace abgauge
