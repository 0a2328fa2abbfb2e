#pragma once

// Exact differentiation of PhaseFunctions, the canonical Poisson bracket and
// the numerical verification primitives built on it.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdgeo/coalgebra.hpp"
#include "qdgeo/phase.hpp"

namespace qdgeo {

struct PhaseGradient {
  std::vector<double> dq;
  std::vector<double> dp;

  std::vector<double> flat() const;
};

/// Gradient at scalar level T, computed with one Dual<T> sweep per phase-space
/// direction.
template <class T>
struct GradientAt {
  std::vector<T> dq, dp;
};

template <class T>
GradientAt<T> gradient_at(const PhaseFunction& f, std::span<const T> q, std::span<const T> p) {
  using DT = ad::Dual<T>;
  static_assert(is_supported_scalar_v<DT>, "differentiation order exceeded");
  const std::size_t n = q.size();
  std::vector<DT> dq(n), dp(n);
  for (std::size_t i = 0; i < n; ++i) {
    dq[i] = DT(q[i], T(0.0));
    dp[i] = DT(p[i], T(0.0));
  }
  GradientAt<T> g{std::vector<T>(n), std::vector<T>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    dq[i].d = T(1.0);
    g.dq[i] = f.eval<DT>(dq, dp).d;
    dq[i].d = T(0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    dp[i].d = T(1.0);
    g.dp[i] = f.eval<DT>(dq, dp).d;
    dp[i].d = T(0.0);
  }
  return g;
}

/// Canonical bracket {f, g} = sum_i df/dq_i dg/dp_i - df/dp_i dg/dq_i at level T.
template <class T>
T bracket_at(const PhaseFunction& f, const PhaseFunction& g, std::span<const T> q, std::span<const T> p) {
  auto gf = gradient_at<T>(f, q, p);
  auto gg = gradient_at<T>(g, q, p);
  T sum(0.0);
  for (std::size_t i = 0; i < q.size(); ++i) sum += gf.dq[i] * gg.dp[i] - gf.dp[i] * gg.dq[i];
  return sum;
}

/// Exact gradient. Throws DomainError on a non-finite entry.
PhaseGradient gradient(const PhaseFunction& f, const PhasePoint& x);

/// Central finite-difference gradient with step cbrt(eps) * max(1, |x_i|).
/// Test oracle only.
PhaseGradient gradient_fd(const PhaseFunction& f, const PhasePoint& x);

/// Exact Hessian over the flattened coordinates (q1..qN, p1..pN), row-major.
std::vector<double> hessian(const PhaseFunction& f, const PhasePoint& x);

/// Bracket value together with its roundoff scale sum_i |f_q g_p| + |f_p g_q|.
struct BracketValue {
  double value = 0.0;
  double scale = 0.0;
};

double poisson_bracket(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& x);
BracketValue poisson_bracket_scaled(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& x);
double poisson_bracket_fd(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& x);

/// {f, g} as a PhaseFunction; supports one fewer differentiation level than
/// its arguments.
PhaseFunction bracket_function(const PhaseFunction& f, const PhaseFunction& g);

/// |value - expected| / max(1, scale, |expected|): the bracket error in units
/// of the magnitude of the products that were summed to form it.
double scaled_residual(const BracketValue& b, double expected);

/// Seed-reproducible sampler of phase points with |q_i|, |p_i| <= half_width.
/// Point k depends only on (seed, k).
class PhaseSampler {
 public:
  PhaseSampler(std::size_t n, std::uint64_t seed, double half_width = 2.0);
  PhasePoint point(std::size_t k) const;
  std::vector<double> uniform(std::size_t k, std::size_t count, double lo, double hi) const;
  std::uint64_t seed() const { return seed_; }

 private:
  std::size_t n_;
  std::uint64_t seed_;
  double half_width_;
};

inline constexpr double kBracketTolerance = 1e-9;
inline constexpr double kRankTolerance = 1e-8;

struct AlgebraReport {
  std::size_t n = 0;
  double z = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Scaled residuals of {J3,J+} - 2 J+ cosh(z J-), {J3,J-} + 2 sinh(z J-)/z,
  /// {J-,J+} - 4 J3, maximised over the sample.
  std::array<double, 3> max_residual{};
  std::array<double, 3> max_abs_residual{};
  /// Worst |exact - fd| / (1 + |exact|) over all brackets, when the FD oracle ran.
  std::optional<double> fd_disagreement;
  std::array<PhasePoint, 3> worst_point;

  bool passed(double tol = kBracketTolerance) const;
  std::string to_text() const;
};

AlgebraReport check_algebra(std::size_t n, double z, std::size_t samples, std::uint64_t seed,
                            bool with_fd_oracle = false);

struct InvolutionReport {
  std::vector<std::string> labels;
  /// residual[i][j]: max over the sample of |{f_i, f_j}|.
  std::vector<std::vector<double>> residual;
  /// Same, in units of the bracket's roundoff scale (see scaled_residual).
  std::vector<std::vector<double>> scaled;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double half_width = 2.0;

  double max_offdiagonal() const;
  double max_scaled_offdiagonal() const;
  bool in_involution(double tol = kBracketTolerance) const;
  std::string to_text() const;
};

InvolutionReport check_involution(std::span<const PhaseFunction> funcs, std::size_t samples,
                                  std::uint64_t seed, double half_width = 2.0);

/// Numerical rank of the matrix of flattened gradients: singular values above
/// tolerance * largest.
int independence_rank(std::span<const PhaseFunction> funcs, const PhasePoint& x,
                      double tolerance = kRankTolerance);

/// Singular values of the same matrix, descending.
std::vector<double> gradient_singular_values(std::span<const PhaseFunction> funcs, const PhasePoint& x);

}  // namespace qdgeo
