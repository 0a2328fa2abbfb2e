#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qdgeo/dual.hpp"

namespace qdgeo {

using ad::D1;
using ad::D2;
using ad::D3;

/// Raised when a function is evaluated outside its domain or yields a
/// non-finite value.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical phase-space point (q, p), both of dimension N.
struct PhasePoint {
  std::vector<double> q;
  std::vector<double> p;

  PhasePoint() = default;
  PhasePoint(std::vector<double> q_, std::vector<double> p_);

  std::size_t dim() const { return q.size(); }
  /// Flattened (q1..qN, p1..pN).
  std::vector<double> flat() const;
  static PhasePoint from_flat(std::span<const double> x);
};

/// Scalar levels every PhaseFunction can be evaluated at. Each level adds one
/// order of exact differentiation.
template <class T>
inline constexpr bool is_supported_scalar_v =
    std::is_same_v<T, double> || std::is_same_v<T, D1> || std::is_same_v<T, D2> ||
    std::is_same_v<T, D3>;

/// Deepest level a function built on top of gradients can itself be
/// evaluated at (one level is consumed by the inner differentiation).
template <class T>
inline constexpr bool has_tangent_level_v = is_supported_scalar_v<ad::Dual<T>>;

/// Immutable, type-erased scalar function on N-dimensional phase space.
///
/// Built from a generic callable `f(std::span<const T> q, std::span<const T> p)`
/// that is instantiated for double and for nested duals, so every
/// PhaseFunction carries its own exact derivatives up to third order.
class PhaseFunction {
 public:
  PhaseFunction() = default;

  template <class F>
  PhaseFunction(std::size_t arity, F f, std::string label = {})
      : impl_(std::make_shared<Model<F>>(std::move(f))), arity_(arity), label_(std::move(label)) {
    if (arity == 0) throw std::invalid_argument("PhaseFunction: arity must be >= 1");
  }

  std::size_t arity() const { return arity_; }
  const std::string& label() const { return label_; }
  PhaseFunction with_label(std::string label) const;
  bool valid() const { return impl_ != nullptr; }

  template <class T>
  T eval(std::span<const T> q, std::span<const T> p) const {
    static_assert(is_supported_scalar_v<T>, "unsupported scalar level");
    return impl_->call(q, p);
  }

  double operator()(const PhasePoint& x) const;
  double operator()(std::span<const double> q, std::span<const double> p) const;

  friend PhaseFunction operator+(const PhaseFunction& a, const PhaseFunction& b);
  friend PhaseFunction operator-(const PhaseFunction& a, const PhaseFunction& b);
  friend PhaseFunction operator*(const PhaseFunction& a, const PhaseFunction& b);
  friend PhaseFunction operator*(double s, const PhaseFunction& a);

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual double call(std::span<const double> q, std::span<const double> p) const = 0;
    virtual D1 call(std::span<const D1> q, std::span<const D1> p) const = 0;
    virtual D2 call(std::span<const D2> q, std::span<const D2> p) const = 0;
    virtual D3 call(std::span<const D3> q, std::span<const D3> p) const = 0;
  };

  template <class F>
  struct Model final : Concept {
    explicit Model(F f_) : f(std::move(f_)) {}
    double call(std::span<const double> q, std::span<const double> p) const override { return f(q, p); }
    D1 call(std::span<const D1> q, std::span<const D1> p) const override { return f(q, p); }
    D2 call(std::span<const D2> q, std::span<const D2> p) const override { return f(q, p); }
    D3 call(std::span<const D3> q, std::span<const D3> p) const override { return f(q, p); }
    F f;
  };

  std::shared_ptr<const Concept> impl_;
  std::size_t arity_ = 0;
  std::string label_;
};

/// Throws std::invalid_argument unless every function has the given arity.
void require_arity(std::span<const PhaseFunction> funcs, std::size_t n, const char* where);

/// Coordinate functions q_i and p_i (0-based index) on N-dimensional phase space.
PhaseFunction coordinate_q(std::size_t n, std::size_t i);
PhaseFunction coordinate_p(std::size_t n, std::size_t i);
PhaseFunction constant_function(std::size_t n, double c);

}  // namespace qdgeo
