#include <cmath>
#include <stdexcept>

#include "qdgeo/dual.hpp"

namespace qdgeo::ad {

namespace {

// Below this magnitude the value uses the truncated even series; its
// truncation error (x^8/9!) is below 1e-20 relative there.
constexpr double kValueSeriesThreshold = 1e-4;
// Derivatives of sinh(x)/x cancel badly in closed form near 0, so they use
// the full power series inside this radius.
constexpr double kDerivativeSeriesRadius = 2.0;

double derivative_series(int k, double x) {
  // d^k/dx^k sum_n x^(2n)/(2n+1)!  =  sum_{2n>=k} x^(2n-k) / ((2n+1) (2n-k)!)
  double sum = 0.0;
  for (int n = (k + 1) / 2; n < 60; ++n) {
    int m = 2 * n - k;
    double fact = 1.0;
    for (int j = 2; j <= m; ++j) fact *= j;
    double term = std::pow(x, m) / ((2.0 * n + 1.0) * fact);
    sum += term;
    if (m > 4 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

double derivative_closed(int k, double x) {
  // Leibniz on sinh(x) * x^-1.
  double sum = 0.0;
  double binom = 1.0;
  double jfact = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) {
      binom = binom * (k - j + 1) / j;
      jfact *= j;
    }
    double hyper = ((k - j) % 2 == 0) ? std::sinh(x) : std::cosh(x);
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += binom * hyper * sign * jfact / std::pow(x, j + 1);
  }
  return sum;
}

}  // namespace

double sinhc_derivative(int k, double x) {
  if (k < 0) throw std::invalid_argument("sinhc_derivative: negative order");
  if (k == 0) {
    if (std::abs(x) < kValueSeriesThreshold) {
      double x2 = x * x;
      return 1.0 + x2 / 6.0 + x2 * x2 / 120.0 + x2 * x2 * x2 / 5040.0;
    }
    return std::sinh(x) / x;
  }
  if (std::abs(x) < kDerivativeSeriesRadius) return derivative_series(k, x);
  return derivative_closed(k, x);
}

}  // namespace qdgeo::ad
