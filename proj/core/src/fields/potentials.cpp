#include "abgauge/fields/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abgauge/fields/differentiation.hpp"

namespace abgauge {

double Envelope::bound(const Vec3& x) const {
  return C * std::pow(1.0 + dot(x, x), -0.5 * (base + eps0));
}

namespace {

double magnitude(const Vec3& v) { return norm(v); }
double magnitude(double v) { return std::abs(v); }

std::optional<Envelope> combine(const std::optional<Envelope>& a, const std::optional<Envelope>& b) {
  if (!a || !b) return std::nullopt;
  return Envelope{a->C + b->C, std::min(a->eps0, b->eps0), std::min(a->base, b->base)};
}

}  // namespace

template <class T>
DecayingField<T>::DecayingField(int dimension) : dimension_(dimension), envelope_(Envelope{0.0, 1.0, 1.0}), spec_{"zero", nlohmann::json::object()} {
  if (dimension != 2 && dimension != 3) fail(ErrorCode::DimensionMismatch, "dimension must be 2 or 3");
}

template <class T>
DecayingField<T>::DecayingField(int dimension, Fn fn, std::optional<Envelope> envelope, FieldSpec spec)
    : dimension_(dimension), fn_(std::move(fn)), envelope_(envelope), spec_(std::move(spec)) {
  if (dimension != 2 && dimension != 3) fail(ErrorCode::DimensionMismatch, "dimension must be 2 or 3");
  if (envelope_ && (!(envelope_->eps0 > 0.0) || envelope_->C < 0.0))
    fail(ErrorCode::InvalidArgument, "envelope needs C >= 0 and eps0 > 0");
}

template <class T>
T DecayingField<T>::operator()(const Vec3& x) const {
  if (!fn_) return T{};
  return fn_(x);
}

template <class T>
double DecayingField<T>::check_envelope(std::span<const Vec3> points, double slack) const {
  if (!fn_ || !envelope_) return 0.0;
  double worst = 0.0;
  for (const auto& x : points) {
    const double value = magnitude(fn_(x));
    const double bound = envelope_->bound(x);
    const double ratio = bound > 0.0 ? value / bound : (value > 0.0 ? INFINITY : 0.0);
    worst = std::max(worst, ratio);
    if (ratio > 1.0 + slack) {
      fail(ErrorCode::EnvelopeViolated,
           "field '" + spec_.kind + "' exceeds its envelope at |x| = " + std::to_string(norm(x)));
    }
  }
  return worst;
}

template <class T>
DecayingField<T> DecayingField<T>::with_envelope(std::optional<Envelope> envelope) const {
  DecayingField out = *this;
  out.envelope_ = envelope;
  return out;
}

template <class T>
DecayingField<T> DecayingField<T>::scaled(double s) const {
  if (!fn_) return *this;
  auto fn = fn_;
  std::optional<Envelope> env = envelope_;
  if (env) env->C *= std::abs(s);
  return DecayingField(dimension_, [fn, s](const Vec3& x) { return s * fn(x); }, env,
                       FieldSpec{"scaled", {{"factor", s}, {"of", spec_.kind}}});
}

template <class T>
DecayingField<T> DecayingField<T>::operator-() const {
  return scaled(-1.0);
}

template <class T>
DecayingField<T> DecayingField<T>::operator+(const DecayingField& other) const {
  if (dimension_ != other.dimension_) fail(ErrorCode::DimensionMismatch, "cannot add fields of different dimension");
  if (!other.fn_) return *this;
  if (!fn_) return other;
  auto f = fn_;
  auto g = other.fn_;
  return DecayingField(dimension_, [f, g](const Vec3& x) { return f(x) + g(x); },
                       combine(envelope_, other.envelope_),
                       FieldSpec{"sum", {{"terms", {spec_.kind, other.spec_.kind}}}});
}

template class DecayingField<Vec3>;
template class DecayingField<double>;

TransversalField TransversalField::planar(AngularFunction a_hat) {
  TransversalField t;
  t.dimension_ = 2;
  t.a_hat_ = std::move(a_hat);
  t.fn_ = nullptr;
  t.spec_ = FieldSpec{"flux_profile", nlohmann::json::object()};
  return t;
}

TransversalField TransversalField::from_field_2d(VectorFn field, int order) {
  const int m = 2 * order + 1;
  std::vector<double> samples(m);
  for (int j = 0; j < m; ++j) {
    const double t = kTwoPi * j / m;
    const Vec3 u(std::cos(t), std::sin(t));
    samples[j] = dot(perp(u), field(u));
  }
  TransversalField out = planar(AngularFunction::from_samples(samples, order));
  out.fn_ = std::move(field);
  out.spec_ = FieldSpec{"callable", nlohmann::json::object()};
  return out;
}

TransversalField TransversalField::spatial(VectorFn field, FieldSpec spec) {
  TransversalField t;
  t.dimension_ = 3;
  t.a_hat_ = AngularFunction(1);
  t.fn_ = std::move(field);
  t.spec_ = std::move(spec);
  return t;
}

TransversalField TransversalField::zero(int dimension) {
  if (dimension == 2) return planar(AngularFunction());
  if (dimension == 3) return spatial([](const Vec3&) { return Vec3{}; }, FieldSpec{"zero", nlohmann::json::object()});
  fail(ErrorCode::DimensionMismatch, "dimension must be 2 or 3");
}

const AngularFunction& TransversalField::a_hat() const {
  if (dimension_ != 2) fail(ErrorCode::DimensionMismatch, "a_hat is defined only in the plane");
  return a_hat_;
}

Vec3 TransversalField::operator()(const Vec3& x) const {
  const double r2 = dot(x, x);
  if (r2 < 1e-24) fail(ErrorCode::OriginSingularity, "transversal field evaluated at the origin");
  if (fn_) return fn_(x);
  return perp(x) * (a_hat_(polar_angle(x)) / r2);
}

double TransversalField::check_transversal(std::span<const Vec3> points, double tol) const {
  double worst = 0.0;
  for (const auto& x : points) {
    const Vec3 a = (*this)(x);
    const double r = norm(x);
    const double scale = r * norm(a) + 1.0 / r;
    worst = std::max(worst, std::abs(dot(x, a)) / scale);
  }
  if (worst > tol) fail(ErrorCode::NotTransversal, "x . A0(x) = " + std::to_string(worst) + " exceeds tolerance");
  return worst;
}

double TransversalField::homogeneity_defect(std::span<const Vec3> points, std::span<const double> scales) const {
  double worst = 0.0;
  for (const auto& x : points)
    for (double t : scales) worst = std::max(worst, norm(t * (*this)(t * x) - (*this)(x)));
  return worst;
}

std::vector<Vec3> PotentialConfig::probe_points(int count) const {
  const double radii[] = {1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0, 30.0, 100.0, 1e3, 1e4};
  const int nr = static_cast<int>(std::size(radii));
  const int per = std::max(1, count / nr);
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(per) * nr);
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (double rr : radii) {
    const double r = rr * obstacle_radius;
    for (int k = 0; k < per; ++k) {
      if (dimension == 2) {
        const double t = kTwoPi * (k + 0.5) / per;
        pts.emplace_back(r * std::cos(t), r * std::sin(t));
      } else {
        const double z = 1.0 - 2.0 * (k + 0.5) / per;
        const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
        pts.emplace_back(r * s * std::cos(golden * k), r * s * std::sin(golden * k), r * z);
      }
    }
  }
  return pts;
}

void PotentialConfig::validate() const {
  if (dimension != 2 && dimension != 3) fail(ErrorCode::DimensionMismatch, "dimension must be 2 or 3");
  if (!(obstacle_radius > 0.0)) fail(ErrorCode::InvalidArgument, "obstacle radius must be positive");
  if (transversal.dimension() != dimension || short_range.dimension() != dimension ||
      scalar.dimension() != dimension)
    fail(ErrorCode::DimensionMismatch, "configuration components disagree on dimension");
  const auto pts = probe_points();
  short_range.check_envelope(pts);
  scalar.check_envelope(pts);
  if (transversal.has_callable()) transversal.check_transversal(pts);
}

GaugeElement GaugeElement::identity(int dimension) {
  GaugeElement g;
  g.dimension_ = dimension;
  g.m_ = 0;
  g.phi_ = AngularFunction();
  g.dphi_ = AngularFunction();
  if (dimension != 2 && dimension != 3) fail(ErrorCode::DimensionMismatch, "dimension must be 2 or 3");
  g.L_ = ScalarPotential::zero(dimension);
  return g;
}

GaugeElement GaugeElement::planar(int m, AngularFunction phi, ScalarPotential L, double tol_mean) {
  if (L.dimension() != 2) fail(ErrorCode::DimensionMismatch, "planar gauge needs a planar L");
  if (std::abs(phi.mean()) >= tol_mean * std::max(1.0, phi.max_coefficient_magnitude()))
    fail(ErrorCode::NonzeroMean, "gauge phase phi must have zero mean");
  GaugeElement g;
  g.dimension_ = 2;
  g.m_ = m;
  g.phi_ = std::move(phi);
  g.dphi_ = g.phi_.derivative();
  g.L_ = std::move(L);
  return g;
}

GaugeElement GaugeElement::spatial(SphereFunction psi, ScalarPotential L) {
  if (L.dimension() != 3) fail(ErrorCode::DimensionMismatch, "spatial gauge needs a spatial L");
  double scale = 1.0;
  for (double v : psi.values()) scale = std::max(scale, std::abs(v));
  if (std::abs(psi.mean()) >= defaults::kMeanTol * scale)
    fail(ErrorCode::NonzeroMean, "gauge phase psi must have zero mean");
  GaugeElement g;
  g.dimension_ = 3;
  g.m_ = 0;
  g.phi_ = AngularFunction(1);
  g.dphi_ = AngularFunction(1);
  g.psi_ = std::move(psi);
  g.L_ = std::move(L);
  return g;
}

const AngularFunction& GaugeElement::phi() const {
  if (dimension_ != 2) fail(ErrorCode::DimensionMismatch, "phi is the planar gauge phase");
  return phi_;
}

SphereFunction GaugeElement::psi() const {
  if (dimension_ != 3) fail(ErrorCode::DimensionMismatch, "psi is the spatial gauge phase");
  if (!psi_) return SphereFunction::zero(SphereGrid::icosahedral(2));
  return *psi_;
}

std::optional<Envelope> GaugeElement::gradient_envelope() const {
  if (grad_envelope_) return grad_envelope_;
  const auto& e = L_.envelope();
  if (!e) return std::nullopt;
  return Envelope{e->C * std::max(1.0, e->eps0 + e->base), e->eps0, e->base + 1.0};
}

GaugeElement GaugeElement::with_gradient_envelope(Envelope e) const {
  GaugeElement g = *this;
  g.grad_envelope_ = e;
  return g;
}

double GaugeElement::angular_phase(const Vec3& x) const {
  if (dimension_ == 2) {
    const double t = polar_angle(x);
    return m_ * t + phi_(t);
  }
  return psi_ ? (*psi_)(x) : 0.0;
}

Vec3 GaugeElement::phase_gradient(const Vec3& x) const {
  const double r2 = dot(x, x);
  if (r2 < 1e-24) fail(ErrorCode::OriginSingularity, "gauge phase gradient at the origin");
  Vec3 g;
  if (dimension_ == 2) {
    const double t = polar_angle(x);
    g = perp(x) * ((m_ + dphi_(t)) / r2);
  } else if (psi_) {
    const SphereFunction& psi = *psi_;
    g = fd_gradient([&psi](const Vec3& y) { return psi(y); }, x, 3);
  }
  if (!L_.is_zero()) g += fd_gradient(L_.function(), x, dimension_);
  return g;
}

GaugeElement GaugeElement::inverse() const {
  GaugeElement g = *this;
  g.m_ = -m_;
  g.phi_ = -phi_;
  g.dphi_ = -dphi_;
  if (psi_) g.psi_ = -*psi_;
  g.L_ = -L_;
  return g;
}

GaugeElement GaugeElement::compose(const GaugeElement& other) const {
  if (dimension_ != other.dimension_) fail(ErrorCode::DimensionMismatch, "cannot compose gauges of different dimension");
  GaugeElement g = *this;
  g.m_ = m_ + other.m_;
  g.phi_ = phi_ + other.phi_;
  g.dphi_ = dphi_ + other.dphi_;
  if (psi_ && other.psi_) g.psi_ = *psi_ + *other.psi_;
  else if (other.psi_) g.psi_ = other.psi_;
  g.L_ = L_ + other.L_;
  g.grad_envelope_.reset();
  if (gradient_envelope() && other.gradient_envelope()) {
    const auto a = *gradient_envelope();
    const auto b = *other.gradient_envelope();
    g.grad_envelope_ = Envelope{a.C + b.C, std::min(a.eps0, b.eps0), std::min(a.base, b.base)};
  }
  return g;
}

}  // namespace abgauge
