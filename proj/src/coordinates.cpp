#include "qdgeo/coordinates.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <type_traits>

namespace qdgeo {

SpaceSignature::SpaceSignature(double z, double k2) : kappa1(z), kappa2(k2) {
  if (!std::isfinite(z) || !std::isfinite(k2)) throw std::invalid_argument("SpaceSignature: parameters must be finite");
  if (k2 == 0.0) throw std::invalid_argument("SpaceSignature: kappa2 must be nonzero");
}

SiteSigns SpaceSignature::site_signs() const {
  double s = kappa2 > 0 ? 1.0 : -1.0;
  return SiteSigns({s, s, 1.0});
}

std::string SpaceSignature::name() const {
  std::ostringstream os;
  os.precision(17);
  os << "(z=" << kappa1 << ", kappa2=" << kappa2 << ")";
  return os.str();
}

PhasePoint PolarPoint::to_phase() const { return PhasePoint({rho, theta, phi}, {p_rho, p_theta, p_phi}); }

PolarPoint PolarPoint::from_phase(const PhasePoint& x) {
  if (x.dim() != 3) throw std::invalid_argument("PolarPoint: phase point must be three-dimensional");
  return {x.q[0], x.q[1], x.q[2], x.p[0], x.p[1], x.p[2]};
}

std::array<double, 4> chart_residuals(const std::array<double, 3>& q, const std::array<double, 3>& y,
                                      const SpaceSignature& sig) {
  using chart_detail::dexp;
  const double z = sig.z();
  const SiteSigns s = sig.site_signs();
  std::array<double, 3> u;
  for (int i = 0; i < 3; ++i) u[i] = s[i] * q[i] * q[i];
  const double U = u[0] + u[1] + u[2];
  const double S2 = std::pow(kappa_sin(-z, y[0]), 2);
  const double C2 = std::pow(kappa_cos(-z, y[0]), 2);
  const double cth2 = std::pow(kappa_cos(sig.kappa2, y[1]), 2);
  const double sth2 = sig.kappa2 * std::pow(kappa_sin(sig.kappa2, y[1]), 2);
  const double e1 = std::exp(2 * z * u[0]), e2 = std::exp(2 * z * u[1]);

  auto rel = [](double lhs, double rhs) {
    return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
  };
  return {rel(C2, std::exp(2 * z * U)), rel(S2 * cth2, e1 * e2 * 2 * dexp(z, u[2])),
          rel(S2 * sth2 * std::pow(std::cos(y[2]), 2), e1 * 2 * dexp(z, u[1])),
          rel(S2 * sth2 * std::pow(std::sin(y[2]), 2), 2 * dexp(z, u[0]))};
}

double momentum_factor(MomentumScale scale) { return scale == MomentumScale::canonical ? 1.0 : 2.0; }

namespace {

Eigen::Matrix3d jacobian_matrix(const std::array<double, 3>& y, const SpaceSignature& sig) {
  auto J = position_jacobian(y, sig);
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) m(i, a) = J[i][a];
  if (!m.allFinite()) throw ChartError(0, "position Jacobian is not finite (chart boundary)");
  return m;
}

void require_finite(const PhasePoint& x, const char* where) {
  for (double v : x.flat())
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(where) + ": non-finite coordinate");
}

}  // namespace

PolarPoint to_polar(const PhasePoint& cart, const SpaceSignature& sig, MomentumScale scale) {
  if (cart.dim() != 3) throw std::invalid_argument("to_polar: Cartesian point must be three-dimensional");
  require_finite(cart, "to_polar");
  std::array<double, 3> q, p;
  for (int i = 0; i < 3; ++i) {
    double sgn = cart.q[i] < 0 ? -1.0 : 1.0;
    q[i] = sgn * cart.q[i];
    p[i] = sgn * cart.p[i];
  }
  auto y = cart_to_polar(q, sig);
  const bool at_rest = p[0] == 0.0 && p[1] == 0.0 && p[2] == 0.0;
  if (y[0] == 0.0 && at_rest) return {};
  Eigen::Matrix3d J = jacobian_matrix(y, sig);
  Eigen::Vector3d P = momentum_factor(scale) * J.transpose() * Eigen::Vector3d(p[0], p[1], p[2]);
  return {y[0], y[1], y[2], P[0], P[1], P[2]};
}

PhasePoint to_cartesian(const PolarPoint& polar, const SpaceSignature& sig, MomentumScale scale) {
  require_finite(polar.to_phase(), "to_cartesian");
  std::array<double, 3> y{polar.rho, polar.theta, polar.phi};
  auto x = polar_to_cart(y, sig);
  if (polar.rho == 0.0 && polar.p_rho == 0.0 && polar.p_theta == 0.0 && polar.p_phi == 0.0)
    return PhasePoint({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0});
  Eigen::Matrix3d J = jacobian_matrix(y, sig);
  Eigen::FullPivLU<Eigen::Matrix3d> lu(J.transpose());
  lu.setThreshold(1e-13);
  if (!lu.isInvertible()) throw ChartError(0, "position Jacobian is singular (chart boundary)");
  Eigen::Vector3d P(polar.p_rho, polar.p_theta, polar.p_phi);
  Eigen::Vector3d p = lu.solve(P / momentum_factor(scale));
  return PhasePoint({x[0], x[1], x[2]}, {p[0], p[1], p[2]});
}

std::vector<PhaseFunction> polar_chart_functions(const SpaceSignature& sig, MomentumScale scale) {
  static const char* names[6] = {"rho", "theta", "phi", "p_rho", "p_theta", "p_phi"};
  const double factor = momentum_factor(scale);
  std::vector<PhaseFunction> out;
  for (int a = 0; a < 3; ++a) {
    out.emplace_back(
        3,
        [sig, a](auto q, auto) {
          using T = std::remove_cv_t<typename decltype(q)::element_type>;
          return cart_to_polar(std::array<T, 3>{q[0], q[1], q[2]}, sig)[a];
        },
        names[a]);
  }
  for (int a = 0; a < 3; ++a) {
    out.emplace_back(
        3,
        [sig, a, factor](auto q, auto p) {
          using T = std::remove_cv_t<typename decltype(q)::element_type>;
          auto y = cart_to_polar(std::array<T, 3>{q[0], q[1], q[2]}, sig);
          auto J = position_jacobian(y, sig);
          T P = T(0.0);
          for (int i = 0; i < 3; ++i) {
            const double sgn = ad::value_of(q[i]) < 0 ? -1.0 : 1.0;
            P = P + sgn * J[i][a] * p[i];
          }
          return factor * P;
        },
        names[3 + a]);
  }
  return out;
}

PolarPoint to_radial_r(const PolarPoint& x, double z) {
  PolarPoint out = x;
  out.rho = rho_to_r(x.rho, z);
  out.p_rho = x.p_rho * kappa_cos(-z, x.rho);
  return out;
}

PolarPoint to_radial_rho(const PolarPoint& x, double z) {
  PolarPoint out = x;
  out.rho = r_to_rho(x.rho, z);
  out.p_rho = x.p_rho / kappa_cos(-z, out.rho);
  return out;
}

namespace {

// p_theta^2 + p_phi^2 / S_k(theta)^2
template <class T>
T angular(double k2, const T& theta, const T& pth, const T& pph) {
  return pth * pth + pph * pph / ad::square(kappa_sin(k2, theta));
}

}  // namespace

PolarIntegrable hamiltonian_polar_integrable(const SpaceSignature& sig) {
  const double z = sig.z(), k2 = sig.kappa2;
  PolarIntegrable out;
  out.H = PhaseFunction(
      3,
      [z, k2](auto y, auto P) {
        auto S = kappa_sin(-z, y[0]);
        return 0.5 * kappa_cos(-z, y[0]) * (P[0] * P[0] + angular(k2, y[1], P[1], P[2]) / (k2 * S * S));
      },
      "H^I polar");
  out.C2 = PhaseFunction(3, [](auto, auto P) { return P[2] * P[2]; }, "C^(2) polar");
  out.C3 = PhaseFunction(3, [k2](auto y, auto P) { return angular(k2, y[1], P[1], P[2]); }, "C^(3) polar");
  return out;
}

PolarSuper hamiltonian_polar_super(const SpaceSignature& sig) {
  const double z = sig.z(), k2 = sig.kappa2;
  auto base = hamiltonian_polar_integrable(sig);
  PolarSuper out;
  out.H = PhaseFunction(
      3,
      [z, k2](auto y, auto P) {
        auto S = kappa_sin(z, y[0]);
        return 0.5 * (P[0] * P[0] + angular(k2, y[1], P[1], P[2]) / (k2 * S * S));
      },
      "H^S polar");
  out.C2 = base.C2;
  out.C3 = base.C3;
  out.I2 = PhaseFunction(
      3,
      [z, k2](auto y, auto P) {
        auto ct = kappa_cos(z, y[0]) / kappa_sin(z, y[0]);
        auto st = kappa_sin(k2, y[1]);
        auto w = k2 * st * ad::sin(y[2]) * P[0] + kappa_cos(k2, y[1]) * ad::sin(y[2]) * ct * P[1] +
                 ad::cos(y[2]) * ct / st * P[2];
        return w * w;
      },
      "I^(2) polar");
  out.I3 = PhaseFunction(
      3,
      [z, k2](auto y, auto P) {
        auto ct = kappa_cos(z, y[0]) / kappa_sin(z, y[0]);
        auto st = kappa_sin(k2, y[1]);
        auto w = k2 * st * P[0] + kappa_cos(k2, y[1]) * ct * P[1];
        return w * w + (z * k2 + ct * ct / (st * st)) * P[2] * P[2];
      },
      "I^(3) polar");
  return out;
}

void check_polar_chart(const PolarPoint& x, const SpaceSignature& sig, RadialKind kind) {
  const double z = sig.z();
  for (double v : x.to_phase().flat())
    if (!std::isfinite(v)) throw ChartError(0, "polar point has a non-finite coordinate");
  const double radial_kappa = kind == RadialKind::rho ? -z : z;
  const char* rname = kind == RadialKind::rho ? "rho" : "r";
  if (!(x.rho > 0.0)) throw ChartError(0, std::string("coordinate singularity: ") + rname + " must be positive");
  if (radial_kappa > 0 && !(std::sqrt(radial_kappa) * x.rho < std::numbers::pi / 2))
    throw ChartError(0, std::string("coordinate singularity: ") + rname + " outside the principal radial branch");
  if (std::abs(kappa_sin(radial_kappa, x.rho)) < 1e-12)
    throw ChartError(0, std::string("coordinate singularity: S(") + rname + ") vanishes");
  if (std::abs(kappa_sin(sig.kappa2, x.theta)) < 1e-12)
    throw ChartError(0, "coordinate singularity: S_kappa2(theta) vanishes");
}

namespace {

std::vector<PhasePoint> polar_check_points(const SpaceSignature& sig) {
  // Interior of every chart: small radius, theta and phi away from the axes.
  std::vector<PhasePoint> pts;
  double rmax = std::abs(sig.z()) > 0 ? 0.5 / std::sqrt(std::abs(sig.z())) : 1.0;
  for (double f : {0.3, 0.6, 0.9}) {
    double th = 0.4 * f + 0.3;
    if (sig.kappa2 > 0) th = std::min(th, 0.5 / std::sqrt(sig.kappa2));
    pts.emplace_back(std::vector<double>{f * rmax, th, 0.5 + f}, std::vector<double>{0.3, -0.2, 0.1});
  }
  return pts;
}

}  // namespace

DiagonalMetric polar_metric_integrable(const SpaceSignature& sig) {
  auto pts = polar_check_points(sig);
  auto g = metric_from_hamiltonian(hamiltonian_polar_integrable(sig).H, pts, 1.0);
  g.label = "polar integrable " + sig.name();
  return g;
}

DiagonalMetric polar_metric_super(const SpaceSignature& sig) {
  auto pts = polar_check_points(sig);
  auto g = metric_from_hamiltonian(hamiltonian_polar_super(sig).H, pts, 1.0);
  g.label = "polar superintegrable " + sig.name();
  return g;
}

CurvatureSample polar_curvature_reference(MetricKind kind, const SpaceSignature& sig, std::span<const double> y) {
  CurvatureSample out;
  out.q.assign(y.begin(), y.end());
  const double z = sig.z();
  if (kind == MetricKind::superintegrable) {
    out.sectional = {z, z, z};
    out.scalar = 6 * z;
    return out;
  }
  double S = kappa_sin(-z, y[0]), C = kappa_cos(-z, y[0]);
  double k12 = -0.5 * z * z * S * S / C;
  out.sectional = {k12, k12, 0.5 * k12};
  out.scalar = 5 * k12;
  return out;
}

}  // namespace qdgeo
