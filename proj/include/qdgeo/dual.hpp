#pragma once

// Forward-mode dual numbers with one tangent direction. Nesting Dual<Dual<T>>
// gives exact higher derivatives (the outer tangent differentiates the inner).

#include <cmath>
#include <type_traits>

namespace qdgeo::ad {

template <class T>
struct Dual {
  T v{};
  T d{};

  constexpr Dual() = default;
  constexpr Dual(double x) : v(x), d(0.0) {}  // NOLINT: constants promote implicitly
  constexpr Dual(T value, T tangent) : v(value), d(tangent) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T inv = T(1.0) / b.v;
    T val = a.v * inv;
    return {val, (a.d - val * b.d) * inv};
  }

  friend Dual operator+(const Dual& a, double b) { return {a.v + b, a.d}; }
  friend Dual operator+(double a, const Dual& b) { return {a + b.v, b.d}; }
  friend Dual operator-(const Dual& a, double b) { return {a.v - b, a.d}; }
  friend Dual operator-(double a, const Dual& b) { return {a - b.v, -b.d}; }
  friend Dual operator*(const Dual& a, double b) { return {a.v * b, a.d * b}; }
  friend Dual operator*(double a, const Dual& b) { return {a * b.v, a * b.d}; }
  friend Dual operator/(const Dual& a, double b) { return {a.v / b, a.d / b}; }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

/// Underlying double of an arbitrarily nested dual.
inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) { return value_of(x.v); }

// Elementary functions. The double overloads forward to <cmath> so that generic
// code can call ad::f(x) uniformly for every scalar level.

inline double exp(double x) { return std::exp(x); }
inline double expm1(double x) { return std::expm1(x); }
inline double log(double x) { return std::log(x); }
inline double log1p(double x) { return std::log1p(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double tan(double x) { return std::tan(x); }
inline double sinh(double x) { return std::sinh(x); }
inline double cosh(double x) { return std::cosh(x); }
inline double tanh(double x) { return std::tanh(x); }
inline double asin(double x) { return std::asin(x); }
inline double acos(double x) { return std::acos(x); }
inline double atan(double x) { return std::atan(x); }
inline double asinh(double x) { return std::asinh(x); }
inline double acosh(double x) { return std::acosh(x); }
inline double atanh(double x) { return std::atanh(x); }
inline double atan2(double y, double x) { return std::atan2(y, x); }

template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.v);
  return {e, e * x.d};
}
template <class T>
Dual<T> expm1(const Dual<T>& x) {
  return {expm1(x.v), exp(x.v) * x.d};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  return {log(x.v), x.d / x.v};
}
template <class T>
Dual<T> log1p(const Dual<T>& x) {
  return {log1p(x.v), x.d / (1.0 + x.v)};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T s = sqrt(x.v);
  return {s, x.d / (2.0 * s)};
}
template <class T>
Dual<T> sin(const Dual<T>& x) {
  return {sin(x.v), cos(x.v) * x.d};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  return {cos(x.v), -(sin(x.v) * x.d)};
}
template <class T>
Dual<T> tan(const Dual<T>& x) {
  T t = tan(x.v);
  return {t, (1.0 + t * t) * x.d};
}
template <class T>
Dual<T> sinh(const Dual<T>& x) {
  return {sinh(x.v), cosh(x.v) * x.d};
}
template <class T>
Dual<T> cosh(const Dual<T>& x) {
  return {cosh(x.v), sinh(x.v) * x.d};
}
template <class T>
Dual<T> tanh(const Dual<T>& x) {
  T t = tanh(x.v);
  return {t, (1.0 - t * t) * x.d};
}
template <class T>
Dual<T> asin(const Dual<T>& x) {
  return {asin(x.v), x.d / sqrt(1.0 - x.v * x.v)};
}
template <class T>
Dual<T> acos(const Dual<T>& x) {
  return {acos(x.v), -(x.d / sqrt(1.0 - x.v * x.v))};
}
template <class T>
Dual<T> atan(const Dual<T>& x) {
  return {atan(x.v), x.d / (1.0 + x.v * x.v)};
}
template <class T>
Dual<T> asinh(const Dual<T>& x) {
  return {asinh(x.v), x.d / sqrt(x.v * x.v + 1.0)};
}
template <class T>
Dual<T> acosh(const Dual<T>& x) {
  return {acosh(x.v), x.d / sqrt(x.v * x.v - 1.0)};
}
template <class T>
Dual<T> atanh(const Dual<T>& x) {
  return {atanh(x.v), x.d / (1.0 - x.v * x.v)};
}
template <class T>
Dual<T> atan2(const Dual<T>& y, const Dual<T>& x) {
  T r2 = x.v * x.v + y.v * y.v;
  return {atan2(y.v, x.v), (x.v * y.d - y.v * x.d) / r2};
}

template <class T>
T square(const T& x) {
  return x * x;
}

// sinh(x)/x and its derivatives.

/// k-th derivative of sinh(x)/x at a double argument.
double sinhc_derivative(int k, double x);

inline double sinhc(double x) { return sinhc_derivative(0, x); }

namespace detail {
inline double sinhc_d(int k, double x) { return sinhc_derivative(k, x); }
template <class T>
Dual<T> sinhc_d(int k, const Dual<T>& x) {
  return {sinhc_d(k, x.v), sinhc_d(k + 1, x.v) * x.d};
}
}  // namespace detail

template <class T>
Dual<T> sinhc(const Dual<T>& x) {
  return detail::sinhc_d(0, x);
}

}  // namespace qdgeo::ad
