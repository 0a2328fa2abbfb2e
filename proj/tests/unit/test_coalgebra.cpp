#include <cmath>

#include "closed_forms.hpp"
#include "doctest.h"
#include "qdgeo/coalgebra.hpp"
#include "qdgeo/poisson.hpp"

using namespace qdgeo;

namespace {
double rel(double a, double b, double scale) { return std::abs(a - b) / std::max(std::abs(b), scale); }
}  // namespace

TEST_CASE("realize_generators: one-site values") {
  auto r0 = realize_generators(1, 0.0);
  PhasePoint x({1.0}, {2.0});
  CHECK(r0.j_plus(x) == 4.0);
  CHECK(r0.j_three(x) == 2.0);
  for (double z : {-0.7, 0.0, 0.3, 1.0}) {
    auto r = realize_generators(1, z);
    CHECK(r.j_minus(PhasePoint({2.0}, {0.0})) == 4.0);
  }
  CHECK_THROWS_AS(realize_generators(0, 0.1), std::invalid_argument);
}

TEST_CASE("realize_generators: two-site J+ matches the closed form") {
  auto r = realize_generators(2, 0.3);
  PhasePoint x({0.7, -0.4}, {1.1, 0.5});
  CHECK(r.j_plus(x) == doctest::Approx(1.4899799071444585).epsilon(1e-15));
  CHECK(r.j_three(x) == doctest::Approx(oracle::jthree2(0.3, 0.7, -0.4, 1.1, 0.5)).epsilon(1e-14));
}

TEST_CASE("realize_generators: three-site J+ matches the closed form") {
  PhaseSampler s(3, 7);
  for (double z : {-0.7, 0.3, 1.0}) {
    auto r = realize_generators(3, z);
    for (std::size_t k = 0; k < 50; ++k) {
      auto x = s.point(k);
      std::array<double, 3> q{x.q[0], x.q[1], x.q[2]}, p{x.p[0], x.p[1], x.p[2]};
      CHECK(rel(r.j_plus(x), oracle::jplus3(z, q, p), 1.0) < 1e-13);
    }
  }
}

TEST_CASE("undeformed limit is exact") {
  PhaseSampler s(4, 3);
  auto r = realize_generators(4, 0.0);
  auto hs = hamiltonian_superintegrable(4, 0.0);
  auto hi = hamiltonian_integrable(4, 0.0);
  for (std::size_t k = 0; k < 20; ++k) {
    auto x = s.point(k);
    double qq = 0, pp = 0, qp = 0;
    for (int i = 0; i < 4; ++i) {
      qq += x.q[i] * x.q[i];
      pp += x.p[i] * x.p[i];
      qp += x.q[i] * x.p[i];
    }
    CHECK(r.j_minus(x) == doctest::Approx(qq).epsilon(1e-15));
    CHECK(r.j_plus(x) == doctest::Approx(pp).epsilon(1e-15));
    CHECK(r.j_three(x) == doctest::Approx(qp).epsilon(1e-15));
    CHECK(hs(x) == hi(x));
  }
}

TEST_CASE("casimir_abstract") {
  CHECK(casimir_abstract(0.0, 2.0, 3.0, 1.0) == 5.0);
  CHECK(casimir_abstract(0.8, 0.0, 17.0, 0.0) == 0.0);
  CHECK(casimir_abstract(0.5, 1.0, 1.0, 0.0) == doctest::Approx(1.0421906109874948).epsilon(1e-15));
}

TEST_CASE("casimir_one vanishes") {
  CHECK(std::abs(casimir_one(0.7)(PhasePoint({1.3}, {-0.8}))) < 1e-12);
  CHECK(casimir_one(0.0)(PhasePoint({0.37}, {1.9})) == 0.0);
  CHECK(std::abs(casimir_one(-0.5)(PhasePoint({0.4}, {2.0}))) < 1e-12);
}

TEST_CASE("casimir_m: closed forms for m = 2, 3") {
  CHECK(casimir_m(2, 2, 0.0)(PhasePoint({1.0, 0.0}, {0.0, 1.0})) == 1.0);
  CHECK(casimir_m(2, 2, 0.4)(PhasePoint({0.6, 0.9}, {0.2, -0.3})) ==
        doctest::Approx(0.15843455108572877).epsilon(1e-13));

  PhaseSampler s(3, 11);
  for (double z : {-0.7, 0.4, 1.0}) {
    auto c2 = casimir_m(2, 3, z);
    auto c3 = casimir_m(3, 3, z);
    auto r3 = realize_generators(3, z);
    for (std::size_t k = 0; k < 50; ++k) {
      auto x = s.point(k);
      std::array<double, 3> q{x.q[0], x.q[1], x.q[2]}, p{x.p[0], x.p[1], x.p[2]};
      // Relative to the size of the two terms whose difference forms C.
      double jm = r3.j_minus(x), jp = r3.j_plus(x), j3 = r3.j_three(x);
      double terms3 = std::abs(jm * sinhc(z * jm) * jp) + j3 * j3;
      CHECK(rel(c3(x), oracle::casimir3(z, q, p), terms3) < 1e-12);
      auto r2 = realize_generators(2, z);
      PhasePoint x2({x.q[0], x.q[1]}, {x.p[0], x.p[1]});
      double jm2 = r2.j_minus(x2);
      double terms2 = std::abs(jm2 * sinhc(z * jm2) * r2.j_plus(x2)) + std::pow(r2.j_three(x2), 2);
      CHECK(rel(c2(x), oracle::casimir2(z, x.q[0], x.q[1], x.p[0], x.p[1]), terms2) < 1e-12);
    }
  }
}

TEST_CASE("casimir_m rejects bad indices") {
  CHECK_THROWS_AS(casimir_m(1, 3, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(casimir_m(4, 3, 0.1), std::invalid_argument);
}

TEST_CASE("Hamiltonians") {
  CHECK(hamiltonian_integrable(3, 0.0)(PhasePoint({0.3, -1.0, 2.0}, {1, 2, 3})) == 7.0);
  CHECK(hamiltonian_integrable(1, 1.0)(PhasePoint({1.0}, {1.0})) ==
        doctest::Approx(0.5876005968219006).epsilon(1e-15));
  CHECK(hamiltonian_superintegrable(1, 1.0)(PhasePoint({0.0}, {2.0})) == 2.0);

  PhaseSampler s(3, 5);
  auto hi = hamiltonian_integrable(3, 0.2);
  auto hs = hamiltonian_superintegrable(3, 0.2);
  auto r = realize_generators(3, 0.2);
  for (std::size_t k = 0; k < 20; ++k) {
    auto x = s.point(k);
    double qq = x.q[0] * x.q[0] + x.q[1] * x.q[1] + x.q[2] * x.q[2];
    CHECK(hs(x) == doctest::Approx(hi(x) * std::exp(0.2 * qq)).epsilon(1e-14));
    CHECK(hi(x) == doctest::Approx(0.5 * r.j_plus(x)).epsilon(1e-15));
  }
  PhasePoint x2({0.3, -0.8}, {0.9, 1.4});
  CHECK(hamiltonian_integrable(2, 0.3)(x2) ==
        doctest::Approx(0.5 * oracle::jplus2(0.3, 0.3, -0.8, 0.9, 1.4)).epsilon(1e-14));
}

TEST_CASE("hamiltonian_family") {
  PhaseSampler s(2, 9);
  auto hlin = hamiltonian_family(2, 0.1, Profile::linear());
  auto hone = hamiltonian_family(2, 0.1, Profile::one());
  auto hexp = hamiltonian_family(2, 0.1, Profile::exponential());
  auto hi = hamiltonian_integrable(2, 0.1);
  auto hs = hamiltonian_superintegrable(2, 0.1);
  auto r = realize_generators(2, 0.1);
  for (std::size_t k = 0; k < 10; ++k) {
    auto x = s.point(k);
    CHECK(hone(x) == doctest::Approx(hi(x)).epsilon(1e-15));
    CHECK(hexp(x) == doctest::Approx(hs(x)).epsilon(1e-15));
    CHECK(hlin(x) == doctest::Approx(0.5 * r.j_plus(x) * (1.0 + 0.1 * r.j_minus(x))).epsilon(1e-14));
  }
  Profile bad([](const auto& x) { return 2.0 + x; }, "two");
  CHECK_THROWS_AS(hamiltonian_family(2, 0.1, bad), std::invalid_argument);
}

TEST_CASE("extra integrals") {
  PhasePoint x({0.5, 0.0, 0.0}, {1.0, 0.0, 0.0});
  CHECK(integral_I2(3, 0.3)(x) == doctest::Approx(0.53944747576094374).epsilon(1e-15));
  PhasePoint y({0.4, -1.2, 0.7}, {0.3, 0.9, -0.2});
  CHECK(integral_I2(3, 0.0)(y) == doctest::Approx(0.5 * 0.09));
  CHECK(integral_I3(3, 0.0)(y) == doctest::Approx(0.5 * (0.09 + 0.81)));
  PhasePoint rest({0.4, -1.2, 0.7}, {0.0, 0.0, 0.0});
  CHECK(integral_I2(3, 0.8)(rest) == 0.0);
  CHECK(integral_I3(3, 0.8)(rest) == 0.0);
  CHECK_THROWS_AS(integral_I3(1, 0.3), std::invalid_argument);
}

TEST_CASE("site signs must be +-1 and match the site count") {
  CHECK_THROWS_AS(SiteSigns({1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(realize_generators(3, 0.2, SiteSigns({1.0, -1.0})), std::invalid_argument);
}
