#pragma once

// Riemannian / Lorentzian geometry of diagonal metrics read off from
// momentum-quadratic Hamiltonians.
//
// Conventions:
//   Gamma^k_ij = 1/2 g^kk (d_i g_kj + d_j g_ki - d_k g_ij)
//   R^l_kij    = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik
//   K_ij       = R_ijij / (g_ii g_jj),  R_ijij = g_ii R^i_jij
// With these the round sphere d theta^2 + sin^2 theta d phi^2 has K = +1.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdgeo/coalgebra.hpp"
#include "qdgeo/phase.hpp"

namespace qdgeo {

/// Constant factor between the metric dual to H^I / H^S (H = 1/2 g^ii p_i^2)
/// and the published normalization of the same line elements.
inline constexpr double kCoalgebraMetricFactor = 2.0;

/// Degeneracy threshold on |g_ii|.
inline constexpr double kDegenerateMetric = 1e-12;

/// Diagonal metric g = diag(g_11(q), ..., g_NN(q)).
///
/// Components are PhaseFunctions that ignore the momenta, so their first and
/// second position derivatives come from the same exact differentiation as
/// everything else. Curvatures are reported for `normalization * g`.
struct DiagonalMetric {
  std::size_t dim = 0;
  std::vector<PhaseFunction> components;
  std::vector<int> signature;
  double normalization = 1.0;
  std::string label;

  double component(std::size_t i, std::span<const double> q) const;
  std::vector<double> values(std::span<const double> q) const;
  /// normalization * g_ii(q), the line element as printed.
  std::vector<double> normalized_values(std::span<const double> q) const;
};

/// Wraps position functions as a metric; signature is taken from `probe`.
DiagonalMetric make_diagonal_metric(std::vector<PhaseFunction> components, std::span<const double> probe,
                                    double normalization = 1.0, std::string label = {});

/// g_ii = 1 / a_i where H = 1/2 sum a_i(q) p_i^2. H is verified to be
/// quadratic and diagonal in the momenta at every check point (residuals
/// below 1e-10 relative to max(1, |H|)); the signature must agree at all of
/// them.
DiagonalMetric metric_from_hamiltonian(const PhaseFunction& H, std::span<const PhasePoint> check_points,
                                       double normalization = 1.0);

enum class MetricKind { integrable, superintegrable };

/// Metric of H^I or H^S in N dimensions, in the published normalization.
DiagonalMetric coalgebra_metric(MetricKind kind, std::size_t n, double z);
DiagonalMetric coalgebra_metric(MetricKind kind, std::size_t n, double z, const SiteSigns& signs);

/// Dense N x N x N array, index (k, i, j) -> Gamma^k_ij.
struct Christoffel {
  std::size_t n = 0;
  std::vector<double> data;
  double operator()(std::size_t k, std::size_t i, std::size_t j) const { return data[(k * n + i) * n + j]; }
  double& operator()(std::size_t k, std::size_t i, std::size_t j) { return data[(k * n + i) * n + j]; }
};

/// Dense N^4 array, index (l, k, i, j) -> R^l_kij.
struct Riemann {
  std::size_t n = 0;
  std::vector<double> data;
  double operator()(std::size_t l, std::size_t k, std::size_t i, std::size_t j) const {
    return data[((l * n + k) * n + i) * n + j];
  }
  double& operator()(std::size_t l, std::size_t k, std::size_t i, std::size_t j) {
    return data[((l * n + k) * n + i) * n + j];
  }
};

Christoffel christoffel(const DiagonalMetric& g, std::span<const double> q);
Riemann riemann(const DiagonalMetric& g, std::span<const double> q);

/// Sectional curvature of the coordinate plane (i, j), 0-based.
double sectional_curvature(const DiagonalMetric& g, std::span<const double> q, std::size_t i, std::size_t j);
double scalar_curvature(const DiagonalMetric& g, std::span<const double> q);
/// The single sectional curvature of a 2D metric.
double gaussian_curvature_2d(const DiagonalMetric& g, std::span<const double> q);

struct CurvatureSample {
  std::vector<double> q;
  /// K_ij for i < j in lexicographic order (12, 13, ..., 23, ...).
  std::vector<double> sectional;
  double scalar = 0.0;
};

CurvatureSample curvature_sample(const DiagonalMetric& g, std::span<const double> q);

/// Closed-form curvatures of the coalgebra metrics, where known:
///   superintegrable, any N:  K_ij = z, K = N(N-1) z
///   integrable, N = 2:       K = -z sinh(z q^2)
///   integrable, N = 3:       K12 = z/4 e^{-zq^2} (1 + e^{2zq3^2} - 2e^{2zq^2})
///                            K13 = z/4 e^{-zq^2} (2 - e^{2zq3^2} + e^{2zq2^2}e^{2zq3^2} - 2e^{2zq^2})
///                            K23 = z/4 e^{-zq^2} (2 - e^{2zq2^2}e^{2zq3^2} - e^{2zq^2})
///                            K   = -5 z sinh(z q^2)
/// Returns nullopt otherwise.
std::optional<CurvatureSample> coalgebra_curvature_reference(MetricKind kind, double z, std::span<const double> q);

}  // namespace qdgeo
