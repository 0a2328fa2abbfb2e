#pragma once

// Geodesic polar charts for the three-site realization.
//
// Positions: with u_i = s_i q_i^2, U = u1 + u2 + u3 and E_i = exp(2 z u_i),
//
//   C_{-z}(rho)^2                        = exp(2 z U)
//   S_{-z}(rho)^2 C_k(theta)^2           = E1 E2 (E3 - 1) / z
//   S_{-z}(rho)^2 k S_k(theta)^2 cos^2 phi = E1 (E2 - 1) / z
//   S_{-z}(rho)^2 k S_k(theta)^2 sin^2 phi = (E1 - 1) / z
//
// where k = kappa2 and S_k, C_k are the curvature-labelled sine and cosine
// below. The site signs are (sgn k, sgn k, +1), so relativistic charts
// (k < 0) use the continued realization of SiteSigns.
//
// Momenta follow as a point transformation, P = J^T p with J = dx/dy taken
// by exact differentiation of polar_to_cart.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qdgeo/coalgebra.hpp"
#include "qdgeo/geometry.hpp"
#include "qdgeo/phase.hpp"

namespace qdgeo {

/// Point outside a chart. `relation()` is the 1-based index of the violated
/// chart relation (as listed above), or 0 for a coordinate singularity.
class ChartError : public DomainError {
 public:
  ChartError(int relation, const std::string& what) : DomainError(what), relation_(relation) {}
  int relation() const { return relation_; }

 private:
  int relation_;
};

/// (kappa1, kappa2) = (z, lambda2^2). kappa2 must be nonzero.
struct SpaceSignature {
  double kappa1 = 0.0;
  double kappa2 = 1.0;

  SpaceSignature() = default;
  SpaceSignature(double z, double k2);

  double z() const { return kappa1; }
  /// Site signs of the Cartesian realization matching this chart.
  SiteSigns site_signs() const;
  std::string name() const;
};

/// Below this |z| the charts use their undeformed limit.
inline constexpr double kFlatChartThreshold = 1e-13;

struct PolarPoint {
  double rho = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double p_rho = 0.0;
  double p_theta = 0.0;
  double p_phi = 0.0;

  PhasePoint to_phase() const;
  static PolarPoint from_phase(const PhasePoint& x);
};

// ---------------------------------------------------------------------------
// Curvature-labelled trigonometry

template <class T>
T kappa_sin(double kappa, const T& x) {
  const double xv = ad::value_of(x);
  const double kx2 = kappa * xv * xv;
  if (std::abs(kx2) < 1e-3) {
    T w = kappa * x * x;
    return x * (1.0 - w / 6.0 * (1.0 - w / 20.0 * (1.0 - w / 42.0 * (1.0 - w / 72.0 * (1.0 - w / 110.0)))));
  }
  if (kappa > 0) {
    double s = std::sqrt(kappa);
    return ad::sin(s * x) / s;
  }
  double s = std::sqrt(-kappa);
  return ad::sinh(s * x) / s;
}

template <class T>
T kappa_cos(double kappa, const T& x) {
  const double xv = ad::value_of(x);
  const double kx2 = kappa * xv * xv;
  if (std::abs(kx2) < 1e-3) {
    T w = kappa * x * x;
    return 1.0 - w / 2.0 * (1.0 - w / 12.0 * (1.0 - w / 30.0 * (1.0 - w / 56.0 * (1.0 - w / 90.0))));
  }
  if (kappa > 0) return ad::cos(std::sqrt(kappa) * x);
  return ad::cosh(std::sqrt(-kappa) * x);
}

template <class T>
T kappa_tan(double kappa, const T& x) {
  return kappa_sin(kappa, x) / kappa_cos(kappa, x);
}

/// Principal angle with S_k(angle)^2 = s2 and C_k(angle)^2 = c2.
template <class T>
T kappa_arc(double kappa, const T& s2, const T& c2) {
  if (kappa > 0) {
    double s = std::sqrt(kappa);
    return ad::atan2(ad::sqrt(kappa * s2), ad::sqrt(c2)) / s;
  }
  if (kappa < 0) {
    double s = std::sqrt(-kappa);
    return ad::asinh(ad::sqrt(-kappa * s2)) / s;
  }
  return ad::sqrt(s2);
}

namespace chart_detail {

// (exp(2 z x) - 1) / (2 z), and its z -> 0 limit x.
template <class T>
T dexp(double z, const T& x) {
  if (std::abs(z) < kFlatChartThreshold) return x;
  return ad::expm1(2.0 * z * x) / (2.0 * z);
}

// log(1 + z a) / (2 z), and its z -> 0 limit a / 2.
template <class T>
T half_log(double z, const T& a, int relation) {
  if (std::abs(z) < kFlatChartThreshold) return 0.5 * a;
  T arg = 1.0 + z * a;
  if (!(ad::value_of(arg) > 0.0))
    throw ChartError(relation, "chart relation " + std::to_string(relation) +
                                   ": logarithm of a non-positive value (point outside the chart)");
  return ad::log1p(z * a) / (2.0 * z);
}

// Removes rounding noise around zero; genuine negatives are chart violations.
template <class T>
T nonnegative(const T& x, double scale, int relation, const char* what) {
  double v = ad::value_of(x);
  if (v >= 0.0) return x;
  if (v > -1e-14 * std::max(1.0, scale)) return T(0.0);
  throw ChartError(relation, std::string("chart relation ") + std::to_string(relation) + ": negative radicand for " +
                                 what + " (point outside the chart)");
}

}  // namespace chart_detail

// ---------------------------------------------------------------------------
// Positions

/// (rho, theta, phi) on the principal branch. The origin maps to (0, 0, 0) and
/// the polar axis to phi = 0. Only q_i^2 enters, so every octant maps to the
/// same polar point.
template <class T>
std::array<T, 3> cart_to_polar(const std::array<T, 3>& q, const SpaceSignature& sig) {
  using namespace chart_detail;
  const double z = sig.z();
  const SiteSigns s = sig.site_signs();
  std::array<T, 3> u;
  for (int i = 0; i < 3; ++i) u[i] = s[i] * q[i] * q[i];
  T U = u[0] + u[1] + u[2];
  T u12 = u[0] + u[1];

  T dU = dexp(z, U);
  double dUv = ad::value_of(dU);
  if (dUv < 0.0)
    throw ChartError(1, "chart relation 1: sinh^2 of the radial coordinate would be negative (sum s_i q_i^2 = " +
                            std::to_string(ad::value_of(U)) + ")");
  if (dUv == 0.0) return {T(0.0), T(0.0), T(0.0)};

  T rho = kappa_arc(-z, 2.0 * dU, ad::exp(2.0 * z * U));

  T e12 = ad::exp(2.0 * z * u12);
  T c2 = nonnegative(T(e12 * dexp(z, u[2]) / dU), 1.0, 2, "cos^2 of theta");
  T t2 = dexp(z, u12) / dU;  // kappa2 S_k(theta)^2
  if (ad::value_of(t2) * sig.kappa2 < -1e-14)
    throw ChartError(3, "chart relation 3: sin^2 of theta has the wrong sign for kappa2 = " +
                            std::to_string(sig.kappa2));
  T theta = kappa_arc(sig.kappa2, T(t2 / sig.kappa2), c2);

  T d12 = dexp(z, u12);
  if (ad::value_of(d12) == 0.0) return {rho, theta, T(0.0)};
  T sin2 = nonnegative(T(dexp(z, u[0]) / d12), 1.0, 4, "sin^2 of phi");
  T cos2 = nonnegative(T(ad::exp(2.0 * z * u[0]) * dexp(z, u[1]) / d12), 1.0, 3, "cos^2 of phi");
  T phi = ad::atan2(ad::sqrt(sin2), ad::sqrt(cos2));
  return {rho, theta, phi};
}

/// Positive-octant preimage of a polar point.
template <class T>
std::array<T, 3> polar_to_cart(const std::array<T, 3>& y, const SpaceSignature& sig) {
  using namespace chart_detail;
  const double z = sig.z();
  const SiteSigns s = sig.site_signs();
  const double rho = ad::value_of(y[0]);
  if (rho < 0.0 || (z < 0 && !(std::sqrt(-z) * rho < std::numbers::pi / 2)))
    throw ChartError(1, "chart relation 1: radial coordinate outside the principal branch");
  T S2 = ad::square(kappa_sin(-z, y[0]));
  T t2 = sig.kappa2 * ad::square(kappa_sin(sig.kappa2, y[1]));
  T sphi = ad::sin(y[2]);
  T U = half_log(z, S2, 1);
  T u12 = half_log(z, T(S2 * t2), 3);
  T u1 = half_log(z, T(S2 * t2 * sphi * sphi), 4);
  std::array<T, 3> u{u1, u12 - u1, U - u12};
  const double scale = std::abs(ad::value_of(U)) + std::abs(ad::value_of(u12));
  std::array<T, 3> x;
  for (int i = 0; i < 3; ++i) {
    T w = nonnegative(T(u[i] / s[i]), scale, 4 - i, "q^2");
    x[i] = ad::sqrt(w);
  }
  return x;
}

/// J[i][a] = d x_i / d y_a of polar_to_cart.
template <class T>
std::array<std::array<T, 3>, 3> position_jacobian(const std::array<T, 3>& y, const SpaceSignature& sig) {
  using DT = ad::Dual<T>;
  std::array<std::array<T, 3>, 3> J;
  for (int a = 0; a < 3; ++a) {
    std::array<DT, 3> yd;
    for (int b = 0; b < 3; ++b) yd[b] = DT(y[b], T(a == b ? 1.0 : 0.0));
    auto x = polar_to_cart(yd, sig);
    for (int i = 0; i < 3; ++i) J[i][a] = x[i].d;
  }
  return J;
}

/// Residuals of the four chart relations at (q, y), each relative to
/// max(1, |lhs|, |rhs|).
std::array<double, 4> chart_residuals(const std::array<double, 3>& q, const std::array<double, 3>& y,
                                      const SpaceSignature& sig);

// ---------------------------------------------------------------------------
// Momenta

/// Scale between polar momenta and J^T p. `canonical` keeps every bracket;
/// `published` doubles the momenta, which is the normalization under which
/// the polar Hamiltonian equals twice the Cartesian one.
enum class MomentumScale { canonical, published };
double momentum_factor(MomentumScale scale);

/// Cartesian (q, p) -> polar (rho, theta, phi, p_rho, p_theta, p_phi).
/// Negative q_i are reflected into the positive octant together with p_i,
/// which is a symmetry of every Hamiltonian here. The origin is a chart
/// singularity; only the state at rest there is accepted.
PolarPoint to_polar(const PhasePoint& cart, const SpaceSignature& sig,
                    MomentumScale scale = MomentumScale::canonical);
/// Inverse of to_polar, landing in the positive octant.
PhasePoint to_cartesian(const PolarPoint& polar, const SpaceSignature& sig,
                        MomentumScale scale = MomentumScale::canonical);

/// rho, theta, phi, p_rho, p_theta, p_phi as functions on Cartesian phase
/// space (arity 3), for checking canonicity in the original chart.
std::vector<PhaseFunction> polar_chart_functions(const SpaceSignature& sig,
                                                 MomentumScale scale = MomentumScale::canonical);

// ---------------------------------------------------------------------------
// Radial reparametrization: dr = d rho / C_{-z}(rho), i.e.
// C_{-z}(rho) C_z(r) = 1.

template <class T>
T rho_to_r(const T& rho, double z) {
  if (z == 0.0) return rho;
  if (z > 0) {
    double m = std::sqrt(z);
    return ad::atan(ad::sinh(m * rho)) / m;
  }
  double m = std::sqrt(-z);
  if (!(m * std::abs(ad::value_of(rho)) < std::numbers::pi / 2))
    throw DomainError("rho_to_r: rho outside the principal branch for z = " + std::to_string(z));
  return ad::asinh(ad::tan(m * rho)) / m;
}

template <class T>
T r_to_rho(const T& r, double z) {
  if (z == 0.0) return r;
  if (z > 0) {
    double m = std::sqrt(z);
    if (!(m * std::abs(ad::value_of(r)) < std::numbers::pi / 2))
      throw DomainError("r_to_rho: r outside the principal branch for z = " + std::to_string(z));
    return ad::asinh(ad::tan(m * r)) / m;
  }
  double m = std::sqrt(-z);
  return ad::atan(ad::sinh(m * r)) / m;
}

/// (rho, ..., p_rho, ...) <-> (r, ..., p_r, ...), with p_r = p_rho C_{-z}(rho).
PolarPoint to_radial_r(const PolarPoint& x, double z);
PolarPoint to_radial_rho(const PolarPoint& x, double z);

// ---------------------------------------------------------------------------
// Polar Hamiltonians and constants, on (y, P) with y = (rho|r, theta, phi).

struct PolarIntegrable {
  PhaseFunction H;
  PhaseFunction C2;
  PhaseFunction C3;
};

struct PolarSuper {
  PhaseFunction H;
  PhaseFunction C2;
  PhaseFunction C3;
  PhaseFunction I2;
  PhaseFunction I3;
};

/// H = 1/2 C_{-z}(rho) (p_rho^2 + (p_theta^2 + p_phi^2 / S_k(theta)^2) / (k S_{-z}(rho)^2))
PolarIntegrable hamiltonian_polar_integrable(const SpaceSignature& sig);
/// H = 1/2 (p_r^2 + (p_theta^2 + p_phi^2 / S_k(theta)^2) / (k S_z(r)^2))
PolarSuper hamiltonian_polar_super(const SpaceSignature& sig);

enum class RadialKind { rho, r };

/// Throws ChartError (relation 0) on the coordinate singularities of the
/// polar Hamiltonians or outside the principal radial branch.
void check_polar_chart(const PolarPoint& x, const SpaceSignature& sig, RadialKind kind);

/// Metrics read off from the polar Hamiltonians (unit normalization).
DiagonalMetric polar_metric_integrable(const SpaceSignature& sig);
DiagonalMetric polar_metric_super(const SpaceSignature& sig);

/// Closed-form curvatures in the polar charts:
///   integrable (rho chart): K12 = K13 = -1/2 z^2 S_{-z}(rho)^2 / C_{-z}(rho), K23 = K12 / 2, K = 5 K12
///   superintegrable (r chart): K_ij = z, K = 6 z
CurvatureSample polar_curvature_reference(MetricKind kind, const SpaceSignature& sig, std::span<const double> y);

}  // namespace qdgeo
