#include "qdgeo/coalgebra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdgeo {

namespace {

void require_finite_z(double z) {
  if (!std::isfinite(z)) throw std::invalid_argument("deformation parameter z must be finite");
}

SiteSigns signs_or_default(std::size_t n, const SiteSigns& signs) {
  if (signs.size() == 0) return SiteSigns::euclidean(n);
  if (signs.size() != n) throw std::invalid_argument("SiteSigns: length does not match site count");
  return signs;
}

// Generator values of the m-site realization on the first m pairs.
template <class T>
struct Generators {
  T jm, jp, j3;
};

template <class T>
Generators<T> generators(std::size_t m, double z, const std::vector<double>& s, std::span<const T> q,
                         std::span<const T> p) {
  // right[i] = sum_{l>i} s_l q_l^2
  std::vector<T> sq(m);
  for (std::size_t i = 0; i < m; ++i) sq[i] = s[i] * (q[i] * q[i]);
  std::vector<T> right(m, T(0.0));
  for (std::size_t i = m - 1; i > 0; --i) right[i - 1] = right[i] + sq[i];

  T jm(0.0), jp(0.0), j3(0.0), left(0.0);
  for (std::size_t i = 0; i < m; ++i) {
    T factor = ad::sinhc(z * sq[i]) * ad::exp(z * (right[i] - left));
    jm += sq[i];
    jp += factor * (p[i] * p[i]) / s[i];
    j3 += factor * (q[i] * p[i]);
    left += sq[i];
  }
  return {jm, jp, j3};
}

std::string suffix(std::size_t n) { return "^(" + std::to_string(n) + ")"; }

}  // namespace

SiteSigns::SiteSigns(std::vector<double> signs) : signs_(std::move(signs)) {
  for (double s : signs_)
    if (s != 1.0 && s != -1.0) throw std::invalid_argument("SiteSigns: entries must be +1 or -1");
}

SiteSigns SiteSigns::prefix(std::size_t m) const {
  return SiteSigns(std::vector<double>(signs_.begin(), signs_.begin() + static_cast<std::ptrdiff_t>(m)));
}

DeformedRealization realize_generators(std::size_t n, double z) {
  return realize_generators(n, z, SiteSigns::euclidean(n));
}

DeformedRealization realize_generators(std::size_t n, double z, const SiteSigns& signs_in) {
  if (n == 0) throw std::invalid_argument("realize_generators: n must be >= 1");
  require_finite_z(z);
  SiteSigns signs = signs_or_default(n, signs_in);
  const auto& s = signs.values();

  DeformedRealization r;
  r.n_sites = n;
  r.z = z;
  r.signs = signs;
  r.j_minus = PhaseFunction(
      n, [n, z, s](auto q, auto p) { return generators(n, z, s, q, p).jm; }, "J-" + suffix(n));
  r.j_plus = PhaseFunction(
      n, [n, z, s](auto q, auto p) { return generators(n, z, s, q, p).jp; }, "J+" + suffix(n));
  r.j_three = PhaseFunction(
      n, [n, z, s](auto q, auto p) { return generators(n, z, s, q, p).j3; }, "J3" + suffix(n));
  return r;
}

PhaseFunction casimir_m(std::size_t m, std::size_t n, double z) {
  return casimir_m(m, n, z, SiteSigns::euclidean(n));
}

PhaseFunction casimir_m(std::size_t m, std::size_t n, double z, const SiteSigns& signs_in) {
  if (m < 2 || m > n)
    throw std::invalid_argument("casimir_m: require 2 <= m <= n (m=" + std::to_string(m) +
                                ", n=" + std::to_string(n) + ")");
  require_finite_z(z);
  auto s = signs_or_default(n, signs_in).values();
  return PhaseFunction(
      n,
      [m, z, s](auto q, auto p) {
        auto g = generators(m, z, s, q, p);
        return casimir_abstract(z, g.jm, g.jp, g.j3);
      },
      "C" + suffix(m));
}

PhaseFunction casimir_one(double z) {
  require_finite_z(z);
  std::vector<double> s{1.0};
  return PhaseFunction(
      1,
      [z, s](auto q, auto p) {
        auto g = generators(1, z, s, q, p);
        return casimir_abstract(z, g.jm, g.jp, g.j3);
      },
      "C^(1)");
}

PhaseFunction hamiltonian_integrable(std::size_t n, double z) {
  return hamiltonian_integrable(n, z, SiteSigns::euclidean(n));
}

PhaseFunction hamiltonian_integrable(std::size_t n, double z, const SiteSigns& signs) {
  if (n == 0) throw std::invalid_argument("hamiltonian_integrable: n must be >= 1");
  auto r = realize_generators(n, z, signs);
  return (0.5 * r.j_plus).with_label("H^I");
}

PhaseFunction hamiltonian_superintegrable(std::size_t n, double z) {
  return hamiltonian_superintegrable(n, z, SiteSigns::euclidean(n));
}

PhaseFunction hamiltonian_superintegrable(std::size_t n, double z, const SiteSigns& signs_in) {
  if (n == 0) throw std::invalid_argument("hamiltonian_superintegrable: n must be >= 1");
  require_finite_z(z);
  auto s = signs_or_default(n, signs_in).values();
  return PhaseFunction(
      n,
      [n, z, s](auto q, auto p) {
        auto g = generators(n, z, s, q, p);
        return 0.5 * g.jp * ad::exp(z * g.jm);
      },
      "H^S");
}

Profile Profile::one() {
  return Profile(
      [](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return T(1.0);
      },
      "one");
}

Profile Profile::exponential() {
  return Profile([](const auto& x) { return ad::exp(x); }, "exp");
}

Profile Profile::linear() {
  return Profile([](const auto& x) { return 1.0 + x; }, "linear");
}

PhaseFunction hamiltonian_family(std::size_t n, double z, const Profile& f) {
  if (n == 0) throw std::invalid_argument("hamiltonian_family: n must be >= 1");
  require_finite_z(z);
  double f0 = f(0.0);
  if (!(std::abs(f0 - 1.0) < 1e-12))
    throw std::invalid_argument("hamiltonian_family: profile '" + f.name() + "' has f(0) = " +
                                std::to_string(f0) + ", expected 1");
  std::vector<double> s(n, 1.0);
  return PhaseFunction(
      n,
      [n, z, s, f](auto q, auto p) {
        auto g = generators(n, z, s, q, p);
        return 0.5 * g.jp * f(z * g.jm);
      },
      "H[" + f.name() + "]");
}

namespace {

// sinhc(z s q^2)/2 e^{z s q^2} p^2 / s, the one-site building block of I2, I3.
template <class T>
T half_site_energy(double z, double s, const T& q, const T& p) {
  T sq = s * (q * q);
  return 0.5 * ad::sinhc(z * sq) * ad::exp(z * sq) * (p * p) / s;
}

}  // namespace

PhaseFunction integral_I2(std::size_t n, double z) { return integral_I2(n, z, SiteSigns::euclidean(n)); }

PhaseFunction integral_I2(std::size_t n, double z, const SiteSigns& signs_in) {
  if (n < 1) throw std::invalid_argument("integral_I2: n must be >= 1");
  require_finite_z(z);
  auto s = signs_or_default(n, signs_in).values();
  return PhaseFunction(
      n, [z, s](auto q, auto p) { return half_site_energy(z, s[0], q[0], p[0]); }, "I^(2)");
}

PhaseFunction integral_I3(std::size_t n, double z) { return integral_I3(n, z, SiteSigns::euclidean(n)); }

PhaseFunction integral_I3(std::size_t n, double z, const SiteSigns& signs_in) {
  if (n < 2) throw std::invalid_argument("integral_I3: n must be >= 2");
  require_finite_z(z);
  auto s = signs_or_default(n, signs_in).values();
  return PhaseFunction(
      n,
      [z, s](auto q, auto p) {
        auto e2 = ad::exp(2.0 * z * s[1] * (q[1] * q[1]));
        return half_site_energy(z, s[0], q[0], p[0]) * e2 + half_site_energy(z, s[1], q[1], p[1]);
      },
      "I^(3)");
}

}  // namespace qdgeo
