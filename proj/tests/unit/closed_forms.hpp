#pragma once

// Direct transcriptions of the reference closed forms, written independently
// of the library's composition path. Test oracles only.

#include <array>
#include <cmath>

namespace oracle {

inline double sinhc(double x) { return x == 0.0 ? 1.0 : std::sinh(x) / x; }

// Two-site generators.
inline double jplus2(double z, double q1, double q2, double p1, double p2) {
  return sinhc(z * q1 * q1) * p1 * p1 * std::exp(z * q2 * q2) +
         sinhc(z * q2 * q2) * p2 * p2 * std::exp(-z * q1 * q1);
}

inline double jthree2(double z, double q1, double q2, double p1, double p2) {
  return sinhc(z * q1 * q1) * q1 * p1 * std::exp(z * q2 * q2) +
         sinhc(z * q2 * q2) * q2 * p2 * std::exp(-z * q1 * q1);
}

// Three-site generators.
inline double jplus3(double z, const std::array<double, 3>& q, const std::array<double, 3>& p) {
  auto e = [&](int i) { return std::exp(z * q[i] * q[i]); };
  auto s = [&](int i) { return sinhc(z * q[i] * q[i]); };
  return s(0) * p[0] * p[0] * e(1) * e(2) + s(1) * p[1] * p[1] / e(0) * e(2) +
         s(2) * p[2] * p[2] / e(0) / e(1);
}

// Two-site Casimir.
inline double casimir2(double z, double q1, double q2, double p1, double p2) {
  double l = q1 * p2 - q2 * p1;
  return sinhc(z * q1 * q1) * sinhc(z * q2 * q2) * l * l * std::exp(-z * q1 * q1) * std::exp(z * q2 * q2);
}

// Three-site Casimir.
inline double casimir3(double z, const std::array<double, 3>& q, const std::array<double, 3>& p) {
  auto s = [&](int i) { return sinhc(z * q[i] * q[i]); };
  auto e = [&](int i, double k) { return std::exp(k * z * q[i] * q[i]); };
  double l12 = q[0] * p[1] - q[1] * p[0];
  double l13 = q[0] * p[2] - q[2] * p[0];
  double l23 = q[1] * p[2] - q[2] * p[1];
  return s(0) * s(1) * l12 * l12 * e(0, -1) * e(1, 1) * e(2, 2) +
         s(0) * s(2) * l13 * l13 * e(0, -1) * e(2, 1) +
         s(1) * s(2) * l23 * l23 * e(0, -2) * e(1, -1) * e(2, 1);
}

// Sectional curvatures of the 3D variable-curvature metric, reference form.
inline std::array<double, 3> sectional_printed(double z, const std::array<double, 3>& q) {
  double qq = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
  double pre = z / 4.0 * std::exp(-z * qq);
  double e2 = std::exp(2 * z * q[1] * q[1]);
  double e3 = std::exp(2 * z * q[2] * q[2]);
  double eq = std::exp(2 * z * qq);
  return {pre * (1 + e3 - 2 * eq), pre * (2 - e3 + e2 * e3 - 2 * eq), pre * (2 - e2 * e3 - 2 * eq)};
}

// Same, with K23's last coefficient 1 instead of 2: the only choice that
// satisfies K = 2(K12 + K13 + K23) = -5 z sinh(z q^2) given K12 and K13.
inline std::array<double, 3> sectional_consistent(double z, const std::array<double, 3>& q) {
  auto k = sectional_printed(z, q);
  double qq = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
  double pre = z / 4.0 * std::exp(-z * qq);
  double e2 = std::exp(2 * z * q[1] * q[1]);
  double e3 = std::exp(2 * z * q[2] * q[2]);
  double eq = std::exp(2 * z * qq);
  k[2] = pre * (2 - e2 * e3 - eq);
  return k;
}

inline double scalar_variable(double z, double qq) { return -5.0 * z * std::sinh(z * qq); }

}  // namespace oracle
