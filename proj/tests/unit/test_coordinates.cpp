#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qdgeo/coordinates.hpp"
#include "qdgeo/poisson.hpp"

using namespace qdgeo;

namespace {

// Composite Simpson rule for int_0^b f, as an independent oracle.
template <class F>
double simpson(F f, double b, int n = 4000) {
  double h = b / n, s = f(0.0) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

// Chart-interior Cartesian points in the positive octant.
std::vector<PhasePoint> chart_points(const SpaceSignature& sig, std::uint64_t seed, std::size_t count) {
  PhaseSampler smp(3, seed, 1.0);
  std::vector<PhasePoint> out;
  for (std::size_t k = 0; out.size() < count; ++k) {
    auto x = smp.point(k);
    for (auto& v : x.q) v = 0.15 + 0.75 * std::abs(v);
    if (sig.kappa2 < 0 && x.q[2] * x.q[2] < 1.2 * (x.q[0] * x.q[0] + x.q[1] * x.q[1])) continue;
    out.push_back(x);
  }
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("kappa trigonometry") {
  CHECK(kappa_sin(0.0, 1.7) == 1.7);
  CHECK(kappa_cos(0.0, 1.7) == 1.0);
  CHECK(kappa_sin(1.0, std::numbers::pi / 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kappa_sin(-1.0, 1.0) == doctest::Approx(1.1752011936438014).epsilon(1e-15));
  CHECK(kappa_tan(4.0, 0.3) == doctest::Approx(std::tan(0.6) / 2).epsilon(1e-15));
  for (double k : {-3.0, -1e-3, -1e-9, 0.0, 1e-9, 2e-4, 1.0, 5.0})
    for (double x : {0.01, 0.3, 0.7, 1.3}) {
      double s = kappa_sin(k, x), c = kappa_cos(k, x);
      CHECK(std::abs(c * c + k * s * s - 1.0) < 1e-14);
    }
  // Continuity across the switch to the series.
  double x = 1.0, k = 1e-3;
  CHECK(kappa_sin(k * (1 - 1e-12), x) == doctest::Approx(kappa_sin(k * (1 + 1e-12), x)).epsilon(1e-14));
  CHECK(kappa_cos(-k * (1 - 1e-12), x) == doctest::Approx(kappa_cos(-k * (1 + 1e-12), x)).epsilon(1e-14));
  CHECK(kappa_sin(k, x) == doctest::Approx(std::sin(std::sqrt(k)) / std::sqrt(k)).epsilon(1e-15));
}

TEST_CASE("SpaceSignature validation") {
  CHECK_THROWS_AS(SpaceSignature(0.3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSignature(NAN, 1.0), std::invalid_argument);
  CHECK(SpaceSignature(0.3, -1.0).site_signs().values() == std::vector<double>{-1, -1, 1});
  CHECK(SpaceSignature(0.3, 2.0).site_signs().values() == std::vector<double>{1, 1, 1});
}

TEST_CASE("cart_to_polar / polar_to_cart round trip on a grid") {
  const std::array<double, 4> levels{0.15, 0.4, 0.65, 0.9};
  for (double z : {0.2, 0.7, -0.4})
    for (double k2 : {1.0, -1.0}) {
      SpaceSignature sig(z, k2);
      int admitted = 0;
      for (double a : levels)
        for (double b : levels)
          for (double c : levels) {
            std::array<double, 3> q{a, b, c};
            std::array<double, 3> y;
            try {
              y = cart_to_polar(q, sig);
            } catch (const ChartError& e) {
              CHECK(k2 < 0);
              CHECK(e.relation() == 1);
              continue;
            }
            ++admitted;
            auto back = polar_to_cart(y, sig);
            for (int i = 0; i < 3; ++i) CHECK(std::abs(back[i] * back[i] - q[i] * q[i]) <= 1e-10 * q[i] * q[i]);
            for (double r : chart_residuals(q, y, sig)) CHECK(r < 1e-10);
          }
      CHECK(admitted > 0);
    }
}

TEST_CASE("polar_to_cart of a chart-interior point satisfies the chart relations") {
  SpaceSignature sig(0.3, 1.0);
  std::array<double, 3> y{0.8, 0.6, 0.7};
  auto q = polar_to_cart(y, sig);
  for (double r : chart_residuals(q, y, sig)) CHECK(r < 1e-10);
  double qq = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
  CHECK(std::exp(2 * 0.3 * qq) == doctest::Approx(std::pow(std::cosh(std::sqrt(0.3) * 0.8), 2)).epsilon(1e-10));
  auto y2 = cart_to_polar(q, sig);
  for (int i = 0; i < 3; ++i) CHECK(y2[i] == doctest::Approx(y[i]).epsilon(1e-12));
}

TEST_CASE("chart origin, flat limit and out-of-chart input") {
  SpaceSignature sig(0.3, 1.0);
  auto y0 = cart_to_polar(std::array<double, 3>{0, 0, 0}, sig);
  CHECK(y0[0] == 0.0);
  auto q0 = polar_to_cart(std::array<double, 3>{0.0, 0.4, 0.3}, sig);
  for (double v : q0) CHECK(v == 0.0);

  // Undeformed limit: rho^2 = 2 q^2 and standard spherical angles.
  SpaceSignature flat(0.0, 1.0);
  std::array<double, 3> q{0.3, 0.4, 1.2};
  auto y = cart_to_polar(q, flat);
  CHECK(y[0] == doctest::Approx(std::sqrt(2 * (0.09 + 0.16 + 1.44))).epsilon(1e-15));
  CHECK(y[1] == doctest::Approx(std::acos(1.2 / std::sqrt(1.69))).epsilon(1e-14));
  CHECK(y[2] == doctest::Approx(std::atan2(0.3, 0.4)).epsilon(1e-14));

  SpaceSignature rel(0.3, -1.0);
  try {
    cart_to_polar(std::array<double, 3>{1.0, 1.0, 0.1}, rel);
    FAIL("expected a chart error");
  } catch (const ChartError& e) {
    CHECK(e.relation() == 1);
  }
  CHECK_THROWS_AS(polar_to_cart(std::array<double, 3>{2.5, 0.4, 0.3}, SpaceSignature(-0.5, 1.0)), ChartError);
}

TEST_CASE("momentum transform: linearity and inverse") {
  SpaceSignature sig(0.3, 1.0);
  auto zero = to_polar(PhasePoint({0.3, 0.5, 0.6}, {0, 0, 0}), sig);
  CHECK(zero.p_rho == 0.0);
  CHECK(zero.p_theta == 0.0);
  CHECK(zero.p_phi == 0.0);

  for (double k2 : {1.0, -1.0})
    for (auto scale : {MomentumScale::canonical, MomentumScale::published}) {
      SpaceSignature s(0.7, k2);
      for (const auto& x : chart_points(s, 3, 10)) {
        auto y = to_polar(x, s, scale);
        auto back = to_cartesian(y, s, scale);
        for (int i = 0; i < 3; ++i) {
          CHECK(back.q[i] == doctest::Approx(x.q[i]).epsilon(1e-10));
          CHECK(back.p[i] == doctest::Approx(x.p[i]).epsilon(1e-9));
        }
      }
    }

  auto y = to_polar(PhasePoint({0.3, 0.5, 0.6}, {0.2, -0.4, 1.0}), sig);
  auto m = to_polar(PhasePoint({-0.3, 0.5, -0.6}, {-0.2, -0.4, -1.0}), sig);
  CHECK(m.rho == y.rho);
  CHECK(m.p_phi == y.p_phi);
  CHECK_THROWS_AS(to_cartesian(PolarPoint{0.8, 0.0, 0.3, 1, 1, 1}, sig), ChartError);

  auto rest = to_polar(PhasePoint({0, 0, 0}, {0, 0, 0}), sig);
  CHECK(rest.rho == 0.0);
  CHECK(rest.p_rho == 0.0);
  CHECK(to_cartesian(rest, sig).q == std::vector<double>{0, 0, 0});
  CHECK_THROWS_AS(to_polar(PhasePoint({0, 0, 0}, {0.1, 0, 0}), sig), ChartError);
}

TEST_CASE("the point transformation is canonical") {
  for (double z : {0.3, 0.7})
    for (double k2 : {1.0, -1.0}) {
      SpaceSignature sig(z, k2);
      auto f = polar_chart_functions(sig);
      for (const auto& x : chart_points(sig, 17, 8)) {
        for (std::size_t a = 0; a < 6; ++a)
          for (std::size_t b = a + 1; b < 6; ++b) {
            double expect = (b == a + 3) ? 1.0 : 0.0;
            auto v = poisson_bracket_scaled(f[a], f[b], x);
            CHECK(scaled_residual(v, expect) < 1e-9);
          }
      }
      // The doubled momentum normalization doubles the symplectic form.
      auto g = polar_chart_functions(sig, MomentumScale::published);
      auto x = chart_points(sig, 17, 1)[0];
      CHECK(poisson_bracket(g[0], g[3], x) == doctest::Approx(2.0).epsilon(1e-10));

      // Other octants: the functions agree with to_polar and stay canonical.
      for (auto m : chart_points(sig, 23, 4)) {
        m.q[0] = -m.q[0];
        m.q[2] = -m.q[2];
        auto y = to_polar(m, sig).to_phase().flat();
        for (std::size_t a = 0; a < 6; ++a) CHECK(f[a](m) == doctest::Approx(y[a]).epsilon(1e-12));
        for (std::size_t a = 0; a < 6; ++a)
          for (std::size_t b = a + 1; b < 6; ++b) {
            double expect = (b == a + 3) ? 1.0 : 0.0;
            CHECK(scaled_residual(poisson_bracket_scaled(f[a], f[b], m), expect) < 1e-9);
          }
      }
    }
}

TEST_CASE("polar and Cartesian constants at matched points") {
  for (double z : {0.3, 0.7, -0.4})
    for (double k2 : {1.0, -1.0}) {
      SpaceSignature sig(z, k2);
      auto S = sig.site_signs();
      auto hi = hamiltonian_integrable(3, z, S);
      auto hs = hamiltonian_superintegrable(3, z, S);
      auto c2 = casimir_m(2, 3, z, S);
      auto c3 = casimir_m(3, 3, z, S);
      auto i2 = integral_I2(3, z, S);
      auto i3 = integral_I3(3, z, S);
      auto pi = hamiltonian_polar_integrable(sig);
      auto ps = hamiltonian_polar_super(sig);
      for (const auto& x : chart_points(sig, 29, 8)) {
        // Canonical momenta: H_polar = H/2, C's and I's up to kappa2.
        auto y = to_polar(x, sig).to_phase();
        auto r = to_radial_r(PolarPoint::from_phase(y), z).to_phase();
        CHECK(rel(pi.H(y), 0.5 * hi(x)) < 1e-9);
        CHECK(rel(pi.C2(y), c2(x)) < 1e-9);
        CHECK(rel(pi.C3(y), k2 * c3(x)) < 1e-9);
        CHECK(rel(ps.H(r), 0.5 * hs(x)) < 1e-9);
        CHECK(rel(ps.I2(r), k2 * i2(x)) < 1e-9);
        CHECK(rel(ps.I3(r), k2 * i3(x)) < 1e-9);

        // Published momenta: factors 2, 4 and 4 kappa2.
        auto Y = to_polar(x, sig, MomentumScale::published).to_phase();
        auto R = to_radial_r(PolarPoint::from_phase(Y), z).to_phase();
        CHECK(rel(pi.H(Y), 2 * hi(x)) < 1e-9);
        CHECK(rel(pi.C2(Y), 4 * c2(x)) < 1e-9);
        CHECK(rel(pi.C3(Y), 4 * k2 * c3(x)) < 1e-9);
        CHECK(rel(ps.H(R), 2 * hs(x)) < 1e-9);
        CHECK(rel(ps.I2(R), 4 * k2 * i2(x)) < 1e-9);
        CHECK(rel(ps.I3(R), 4 * k2 * i3(x)) < 1e-9);
      }
    }
}

TEST_CASE("polar constants are in involution") {
  for (double k2 : {1.0, -1.0}) {
    SpaceSignature sig(0.3, k2);
    auto pi = hamiltonian_polar_integrable(sig);
    auto ps = hamiltonian_polar_super(sig);
    std::vector<PhaseFunction> a{pi.H, pi.C2, pi.C3};
    std::vector<PhaseFunction> b{ps.H, ps.C2, ps.C3};
    std::vector<PhaseFunction> c{ps.H, ps.I2, ps.I3};
    PhaseSampler smp(3, 5, 1.0);
    for (std::size_t k = 0; k < 20; ++k) {
      auto x = smp.point(k);
      x.q = {0.2 + 0.3 * std::abs(x.q[0]), 0.3 + 0.4 * std::abs(x.q[1]), x.q[2]};
      for (const auto* set : {&a, &b, &c})
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = i + 1; j < 3; ++j)
            CHECK(scaled_residual(poisson_bracket_scaled((*set)[i], (*set)[j], x), 0.0) < 1e-9);
      CHECK(std::abs(poisson_bracket(ps.H, ps.I2, x)) < 1e-9);
    }
  }
}

TEST_CASE("flat limit of the polar Hamiltonians") {
  SpaceSignature flat(0.0, 1.0);
  auto pi = hamiltonian_polar_integrable(flat);
  auto ps = hamiltonian_polar_super(flat);
  PhasePoint x({0.7, 0.9, 0.4}, {0.3, -1.1, 0.6});
  double expect = 0.5 * (0.09 + 1.21 / 0.49 + 0.36 / (0.49 * std::pow(std::sin(0.9), 2)));
  CHECK(pi.H(x) == doctest::Approx(expect).epsilon(1e-14));
  CHECK(ps.H(x) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("polar chart singularities") {
  SpaceSignature sig(0.3, 1.0);
  CHECK_THROWS_AS(check_polar_chart(PolarPoint{0.0, 0.5, 0.5, 1, 1, 1}, sig, RadialKind::rho), ChartError);
  CHECK_THROWS_AS(check_polar_chart(PolarPoint{0.5, 0.0, 0.5, 1, 1, 1}, sig, RadialKind::rho), ChartError);
  CHECK_THROWS_AS(check_polar_chart(PolarPoint{3.0, 0.5, 0.5, 1, 1, 1}, sig, RadialKind::r), ChartError);
  CHECK_NOTHROW(check_polar_chart(PolarPoint{3.0, 0.5, 0.5, 1, 1, 1}, sig, RadialKind::rho));
  CHECK_THROWS_AS(check_polar_chart(PolarPoint{2.5, 0.5, 0.5, 1, 1, 1}, SpaceSignature(-0.5, 1), RadialKind::rho),
                  ChartError);
}

TEST_CASE("radial reparametrization") {
  double quad = simpson([](double x) { return 1.0 / std::cosh(x); }, 1.0);
  CHECK(rho_to_r(1.0, 1.0) == doctest::Approx(quad).epsilon(1e-12));
  CHECK(rho_to_r(1.0, 1.0) == doctest::Approx(0.8657694832396586).epsilon(1e-15));
  CHECK(rho_to_r(0.0, 0.4) == 0.0);
  CHECK(rho_to_r(0.8, 0.0) == 0.8);
  CHECK(rho_to_r(0.8, 1e-14) == doctest::Approx(0.8).epsilon(1e-12));

  double quad_neg = simpson([](double x) { return 1.0 / std::cos(std::sqrt(0.5) * x); }, 1.2);
  CHECK(rho_to_r(1.2, -0.5) == doctest::Approx(quad_neg).epsilon(1e-12));

  for (double z : {-0.7, -0.2, 0.3, 1.0, 2.0})
    for (double rho : {0.01, 0.3, 0.9, 1.5}) {
      if (z < 0 && std::sqrt(-z) * rho >= std::numbers::pi / 2) continue;
      double r = rho_to_r(rho, z);
      CHECK(std::abs(r_to_rho(r, z) - rho) <= 1e-12 * rho);
      CHECK(kappa_cos(-z, rho) * kappa_cos(z, r) == doctest::Approx(1.0).epsilon(1e-13));
    }
  CHECK_THROWS_AS(r_to_rho(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(rho_to_r(2.0, -1.0), DomainError);
}

TEST_CASE("polar metric is the pullback of the Cartesian one") {
  for (double z : {0.3, -0.4})
    for (double k2 : {1.0, -1.0}) {
      SpaceSignature sig(z, k2);
      auto gc = coalgebra_metric(MetricKind::integrable, 3, z, sig.site_signs());
      auto gsc = coalgebra_metric(MetricKind::superintegrable, 3, z, sig.site_signs());
      auto gp = polar_metric_integrable(sig);
      auto gr = polar_metric_super(sig);
      for (const auto& x : chart_points(sig, 41, 6)) {
        std::array<double, 3> q{x.q[0], x.q[1], x.q[2]};
        auto y = cart_to_polar(q, sig);
        auto J = position_jacobian(y, sig);
        auto c = gc.normalized_values(x.q);
        auto cs = gsc.normalized_values(x.q);
        std::vector<double> yv(y.begin(), y.end());
        auto p = gp.normalized_values(yv);
        // dr = d rho / C_{-z}(rho)
        double drho_dr = kappa_cos(-z, y[0]);
        std::vector<double> yr{rho_to_r(y[0], z), y[1], y[2]};
        auto ps = gr.normalized_values(yr);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            double pull = 0, pull_s = 0;
            for (int i = 0; i < 3; ++i) {
              pull += c[i] * J[i][a] * J[i][b];
              pull_s += cs[i] * J[i][a] * J[i][b];
            }
            double fa = a == 0 ? drho_dr : 1.0, fb = b == 0 ? drho_dr : 1.0;
            double expect = a == b ? p[a] : 0.0;
            double expect_s = a == b ? ps[a] : 0.0;
            CHECK(std::abs(pull - expect) < 1e-8 * std::max(1.0, std::abs(expect)));
            CHECK(std::abs(pull_s * fa * fb - expect_s) < 1e-8 * std::max(1.0, std::abs(expect_s)));
          }
      }
    }
}

TEST_CASE("curvature in polar charts") {
  for (double z : {0.3, 1.0, -0.5})
    for (double k2 : {1.0, -1.0}) {
      SpaceSignature sig(z, k2);
      auto gp = polar_metric_integrable(sig);
      auto gs = polar_metric_super(sig);
      std::vector<double> y{0.6, 0.5, 0.8};
      auto s = curvature_sample(gp, y);
      // K12 = K13 = -1/2 z sinh^2(l1 rho)/cosh(l1 rho) with sinh^2(l1 rho) = z S^2.
      double S = kappa_sin(-z, y[0]), C = kappa_cos(-z, y[0]);
      double k12 = -0.5 * z * z * S * S / C;
      CHECK(s.sectional[0] == doctest::Approx(k12).epsilon(1e-10));
      CHECK(s.sectional[1] == doctest::Approx(k12).epsilon(1e-10));
      CHECK(s.sectional[2] == doctest::Approx(0.5 * k12).epsilon(1e-10));
      CHECK(s.scalar == doctest::Approx(5 * k12).epsilon(1e-10));
      auto t = curvature_sample(gs, y);
      for (double K : t.sectional) CHECK(K == doctest::Approx(z).epsilon(1e-10));
      CHECK(t.scalar == doctest::Approx(6 * z).epsilon(1e-10));
    }
}
