#pragma once

#include <functional>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "abgauge/angular/fourier.hpp"
#include "abgauge/angular/sphere.hpp"
#include "abgauge/error.hpp"
#include "abgauge/vec.hpp"

namespace abgauge {

using VectorFn = std::function<Vec3(const Vec3&)>;
using ScalarFn = std::function<double(const Vec3&)>;

// Declared decay bound |f(x)| <= C <x>^{-(base + eps0)}. Short-range vector
// and scalar potentials use base 1; gauge scalars use base 0.
struct Envelope {
  double C = 1.0;
  double eps0 = 1.0;
  double base = 1.0;

  double bound(const Vec3& x) const;
};

// Catalog description of a field; kind "callable" marks fields built in code.
struct FieldSpec {
  std::string kind = "callable";
  nlohmann::json params = nlohmann::json::object();
};

// A vector (T = Vec3) or scalar (T = double) field on the exterior domain,
// optionally carrying a declared decay envelope.
template <class T>
class DecayingField {
 public:
  using Fn = std::function<T(const Vec3&)>;

  DecayingField() : DecayingField(2) {}
  explicit DecayingField(int dimension);
  DecayingField(int dimension, Fn fn, std::optional<Envelope> envelope, FieldSpec spec = {});

  static DecayingField zero(int dimension) { return DecayingField(dimension); }

  int dimension() const noexcept { return dimension_; }
  bool is_zero() const noexcept { return !fn_; }
  const std::optional<Envelope>& envelope() const noexcept { return envelope_; }
  const FieldSpec& spec() const noexcept { return spec_; }
  const Fn& function() const noexcept { return fn_; }

  T operator()(const Vec3& x) const;

  // Largest ratio |f(x)| / bound(x) over the points; EnvelopeViolated when a
  // point exceeds the bound by more than the relative slack.
  double check_envelope(std::span<const Vec3> points, double slack = 1e-9) const;

  DecayingField with_envelope(std::optional<Envelope> envelope) const;

  DecayingField operator-() const;
  // Envelopes combine as C_a + C_b with the weaker decay rate.
  DecayingField operator+(const DecayingField& other) const;
  DecayingField operator-(const DecayingField& other) const { return *this + (-other); }
  DecayingField scaled(double s) const;

 private:
  int dimension_;
  Fn fn_;
  std::optional<Envelope> envelope_;
  FieldSpec spec_;
};

using ShortRangeField = DecayingField<Vec3>;
using ScalarPotential = DecayingField<double>;

extern template class DecayingField<Vec3>;
extern template class DecayingField<double>;

// Long-range transversal part A0, homogeneous of degree -1 with x.A0(x) = 0.
// In the plane A0(x) = (-x2, x1)/|x|^2 a_hat(theta); in three dimensions it is
// an arbitrary homogeneous transversal callable.
class TransversalField {
 public:
  TransversalField() = default;

  static TransversalField planar(AngularFunction a_hat);
  // Samples a_hat(theta) = x_perp . A0(x) on the unit circle; the callable is
  // kept for evaluation and for the transversality check.
  static TransversalField from_field_2d(VectorFn field, int order = defaults::kFourierOrder);
  static TransversalField spatial(VectorFn field, FieldSpec spec = {});
  static TransversalField zero(int dimension);

  int dimension() const noexcept { return dimension_; }
  const AngularFunction& a_hat() const;
  bool has_callable() const noexcept { return static_cast<bool>(fn_); }
  const FieldSpec& spec() const noexcept { return spec_; }

  Vec3 operator()(const Vec3& x) const;

  // max |x.A0(x)| / (|x||A0(x)| + 1/|x|) over the points; NotTransversal above tol.
  double check_transversal(std::span<const Vec3> points, double tol = defaults::kTransversalityTol) const;
  // max |t A0(t x) - A0(x)| over the (point, t) pairs.
  double homogeneity_defect(std::span<const Vec3> points, std::span<const double> scales) const;

 private:
  int dimension_ = 2;
  AngularFunction a_hat_;
  VectorFn fn_;
  FieldSpec spec_;
};

// Full exterior configuration (Omega, A0, A1, V) with the obstacle represented
// by its circumscribed radius.
struct PotentialConfig {
  int dimension = 2;
  double obstacle_radius = 1.0;
  TransversalField transversal;
  ShortRangeField short_range = ShortRangeField::zero(2);
  ScalarPotential scalar = ScalarPotential::zero(2);
  // Declared metadata; never verified semantically.
  bool convex_obstacle = true;
  bool rapid_decay = false;

  Vec3 vector_potential(const Vec3& x) const { return transversal(x) + short_range(x); }
  double scalar_potential(const Vec3& x) const { return scalar(x); }

  // Dimensions agree, R > 0 and declared envelopes hold on a probe set.
  void validate() const;
  // Probe points with R <= |x| <= 1e4 R used for envelope checks.
  std::vector<Vec3> probe_points(int count = 400) const;
};

// Gauge group element g = e^{i(m theta + phi(theta) + L(x))} in the plane and
// e^{i(psi(x/|x|) + L(x))} in three dimensions.
class GaugeElement {
 public:
  GaugeElement() = default;

  static GaugeElement identity(int dimension);
  static GaugeElement planar(int m, AngularFunction phi,
                             ScalarPotential L = ScalarPotential::zero(2),
                             double tol_mean = defaults::kMeanTol);
  static GaugeElement spatial(SphereFunction psi, ScalarPotential L = ScalarPotential::zero(3));

  int dimension() const noexcept { return dimension_; }
  int m() const noexcept { return m_; }
  const AngularFunction& phi() const;
  // Zero on the level-2 grid when no spatial phase is set.
  SphereFunction psi() const;
  bool has_psi() const noexcept { return psi_.has_value(); }
  const ScalarPotential& L() const noexcept { return L_; }
  // Envelope declared for grad L; defaults to the envelope of L lifted to base 1.
  std::optional<Envelope> gradient_envelope() const;
  GaugeElement with_gradient_envelope(Envelope e) const;

  // Angular part of the phase at direction theta (n=2) or omega (n=3).
  double angular_phase(const Vec3& x) const;
  // Gradient of the full phase at x.
  Vec3 phase_gradient(const Vec3& x) const;

  GaugeElement inverse() const;
  // (this * other): phases add.
  GaugeElement compose(const GaugeElement& other) const;

 private:
  int dimension_ = 2;
  int m_ = 0;
  AngularFunction phi_;
  AngularFunction dphi_;
  std::optional<SphereFunction> psi_;
  ScalarPotential L_ = ScalarPotential::zero(2);
  std::optional<Envelope> grad_envelope_;
};

}  // namespace abgauge
