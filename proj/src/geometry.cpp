#include "qdgeo/geometry.hpp"

#include <cmath>
#include <sstream>

#include "qdgeo/poisson.hpp"

namespace qdgeo {

namespace {

std::string describe(std::span<const double> q) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (std::size_t i = 0; i < q.size(); ++i) os << (i ? "," : "") << q[i];
  os << ")";
  return os.str();
}

void require_dim(const DiagonalMetric& g, std::span<const double> q) {
  if (q.size() != g.dim)
    throw std::invalid_argument("metric '" + g.label + "': position has dimension " + std::to_string(q.size()) +
                                ", expected " + std::to_string(g.dim));
}

// Values, first and second position derivatives of every metric component.
struct MetricJet {
  std::size_t n;
  std::vector<double> g;    // g[i]
  std::vector<double> dg;   // dg[i*n + a]      = d_a g_ii
  std::vector<double> ddg;  // ddg[(i*n + a)*n + b] = d_a d_b g_ii
};

MetricJet metric_jet(const DiagonalMetric& metric, std::span<const double> q) {
  require_dim(metric, q);
  const std::size_t n = metric.dim;
  MetricJet jet{n, std::vector<double>(n), std::vector<double>(n * n), std::vector<double>(n * n * n)};
  std::vector<D2> x(n), p(n, D2(0.0));
  for (std::size_t a = 0; a < n; ++a) x[a] = D2(D1(q[a], 0.0), D1(0.0, 0.0));

  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = metric.components[i];
    for (std::size_t a = 0; a < n; ++a) {
      x[a].d.v = 1.0;
      for (std::size_t b = a; b < n; ++b) {
        x[b].v.d = 1.0;
        D2 r = c.eval<D2>(x, p);
        x[b].v.d = 0.0;
        jet.ddg[(i * n + a) * n + b] = r.d.d;
        jet.ddg[(i * n + b) * n + a] = r.d.d;
        if (b == a) {
          jet.dg[i * n + a] = r.d.v;
          jet.g[i] = r.v.v;
        }
      }
      x[a].d.v = 0.0;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(jet.g[i]) || std::abs(jet.g[i]) < kDegenerateMetric)
      throw DomainError("metric '" + metric.label + "' is degenerate at q=" + describe(q) + " (g_" +
                        std::to_string(i + 1) + std::to_string(i + 1) + " = " + std::to_string(jet.g[i]) + ")");
  }
  for (double v : jet.dg)
    if (!std::isfinite(v)) throw DomainError("metric '" + metric.label + "' derivative not finite at q=" + describe(q));
  for (double v : jet.ddg)
    if (!std::isfinite(v)) throw DomainError("metric '" + metric.label + "' derivative not finite at q=" + describe(q));
  return jet;
}

// d_a g_{ij} for a diagonal metric.
inline double dmet(const MetricJet& J, std::size_t i, std::size_t j, std::size_t a) {
  return i == j ? J.dg[i * J.n + a] : 0.0;
}
inline double ddmet(const MetricJet& J, std::size_t i, std::size_t j, std::size_t a, std::size_t b) {
  return i == j ? J.ddg[(i * J.n + a) * J.n + b] : 0.0;
}

Christoffel christoffel_from_jet(const MetricJet& J) {
  const std::size_t n = J.n;
  Christoffel G{n, std::vector<double>(n * n * n)};
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        G(k, i, j) = 0.5 / J.g[k] * (dmet(J, k, j, i) + dmet(J, k, i, j) - dmet(J, i, j, k));
  return G;
}

// d_m Gamma^k_ij
double christoffel_derivative(const MetricJet& J, std::size_t k, std::size_t i, std::size_t j, std::size_t m) {
  double bracket = dmet(J, k, j, i) + dmet(J, k, i, j) - dmet(J, i, j, k);
  double dbracket = ddmet(J, k, j, i, m) + ddmet(J, k, i, j, m) - ddmet(J, i, j, k, m);
  double ginv = 1.0 / J.g[k];
  double dginv = -J.dg[k * J.n + m] * ginv * ginv;
  return 0.5 * (dginv * bracket + ginv * dbracket);
}

Riemann riemann_from_jet(const MetricJet& J) {
  const std::size_t n = J.n;
  auto G = christoffel_from_jet(J);
  Riemann R{n, std::vector<double>(n * n * n * n)};
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          double v = christoffel_derivative(J, l, j, k, i) - christoffel_derivative(J, l, i, k, j);
          for (std::size_t m = 0; m < n; ++m) v += G(l, i, m) * G(m, j, k) - G(l, j, m) * G(m, i, k);
          R(l, k, i, j) = v;
        }
  return R;
}

double sectional_from(const MetricJet& J, const Riemann& R, std::size_t i, std::size_t j, double normalization) {
  // R_ijij / (g_ii g_jj) with R_ijij = g_ii R^i_jij
  return R(i, j, i, j) / J.g[j] / normalization;
}

}  // namespace

double DiagonalMetric::component(std::size_t i, std::span<const double> q) const {
  std::vector<double> p(dim, 0.0);
  return components.at(i)(q, p);
}

std::vector<double> DiagonalMetric::values(std::span<const double> q) const {
  std::vector<double> v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = component(i, q);
  return v;
}

std::vector<double> DiagonalMetric::normalized_values(std::span<const double> q) const {
  auto v = values(q);
  for (auto& x : v) x *= normalization;
  return v;
}

DiagonalMetric make_diagonal_metric(std::vector<PhaseFunction> components, std::span<const double> probe,
                                    double normalization, std::string label) {
  if (components.empty()) throw std::invalid_argument("make_diagonal_metric: no components");
  if (!(normalization > 0.0)) throw std::invalid_argument("make_diagonal_metric: normalization must be positive");
  DiagonalMetric g;
  g.dim = components.size();
  require_arity(components, g.dim, "make_diagonal_metric");
  g.components = std::move(components);
  g.normalization = normalization;
  g.label = std::move(label);
  require_dim(g, probe);
  for (std::size_t i = 0; i < g.dim; ++i) {
    double v = g.component(i, probe);
    if (!std::isfinite(v) || std::abs(v) < kDegenerateMetric)
      throw DomainError("make_diagonal_metric: degenerate component at probe point " + describe(probe));
    g.signature.push_back(v > 0 ? 1 : -1);
  }
  return g;
}

DiagonalMetric metric_from_hamiltonian(const PhaseFunction& H, std::span<const PhasePoint> check_points,
                                       double normalization) {
  if (check_points.empty()) throw std::invalid_argument("metric_from_hamiltonian: no check points");
  const std::size_t n = H.arity();
  const std::size_t m = 2 * n;

  std::vector<PhaseFunction> comps;
  for (std::size_t i = 0; i < n; ++i) {
    // For H exactly quadratic and diagonal in p, d^2H/dp_i^2 = 2 H(q, e_i).
    comps.emplace_back(
        n,
        [H, i, n](auto q, auto) {
          using T = typename decltype(q)::value_type;
          std::vector<T> e(n, T(0.0));
          e[i] = T(1.0);
          return 1.0 / (2.0 * H.eval<T>(q, e));
        },
        "g" + std::to_string(i + 1) + std::to_string(i + 1));
  }

  std::vector<int> signature;
  for (const auto& x : check_points) {
    if (x.dim() != n) throw std::invalid_argument("metric_from_hamiltonian: check point dimension mismatch");
    auto h = hessian(H, x);
    double hval = H(x);
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double hij = h[(n + i) * m + (n + j)];
        if (i == j) {
          quad += 0.5 * hij * x.p[i] * x.p[i];
        } else if (std::abs(hij) >= 1e-10 * std::max(1.0, std::abs(hval))) {
          throw std::invalid_argument("metric_from_hamiltonian: '" + H.label() + "' is not diagonal in momenta (d2H/dp" +
                                      std::to_string(i + 1) + "dp" + std::to_string(j + 1) + " = " +
                                      std::to_string(hij) + ")");
        }
      }
    }
    double resid = std::abs(hval - quad);
    if (resid >= 1e-10 * std::max(1.0, std::abs(hval)))
      throw std::invalid_argument("metric_from_hamiltonian: '" + H.label() +
                                  "' is not quadratic in momenta (residual " + std::to_string(resid) + ")");

    std::vector<int> sig;
    for (std::size_t i = 0; i < n; ++i) {
      double a = h[(n + i) * m + (n + i)];
      if (!std::isfinite(a) || a == 0.0 || std::abs(1.0 / a) < kDegenerateMetric)
        throw DomainError("metric_from_hamiltonian: degenerate metric component " + std::to_string(i + 1));
      sig.push_back(a > 0 ? 1 : -1);
    }
    if (signature.empty()) {
      signature = sig;
    } else if (sig != signature) {
      throw DomainError("metric_from_hamiltonian: signature changes across check points");
    }
  }

  DiagonalMetric g;
  g.dim = n;
  g.components = std::move(comps);
  g.signature = std::move(signature);
  g.normalization = normalization;
  g.label = "metric[" + H.label() + "]";
  return g;
}

DiagonalMetric coalgebra_metric(MetricKind kind, std::size_t n, double z) {
  return coalgebra_metric(kind, n, z, SiteSigns::euclidean(n));
}

DiagonalMetric coalgebra_metric(MetricKind kind, std::size_t n, double z, const SiteSigns& signs) {
  auto H = kind == MetricKind::integrable ? hamiltonian_integrable(n, z, signs)
                                          : hamiltonian_superintegrable(n, z, signs);
  PhaseSampler sampler(n, 0x5eed, 1.0);
  std::vector<PhasePoint> checks;
  for (std::size_t k = 0; k < 4; ++k) checks.push_back(sampler.point(k));
  return metric_from_hamiltonian(H, checks, kCoalgebraMetricFactor);
}

Christoffel christoffel(const DiagonalMetric& g, std::span<const double> q) {
  return christoffel_from_jet(metric_jet(g, q));
}

Riemann riemann(const DiagonalMetric& g, std::span<const double> q) { return riemann_from_jet(metric_jet(g, q)); }

double sectional_curvature(const DiagonalMetric& g, std::span<const double> q, std::size_t i, std::size_t j) {
  if (i >= g.dim || j >= g.dim || i == j) throw std::invalid_argument("sectional_curvature: bad plane indices");
  auto J = metric_jet(g, q);
  return sectional_from(J, riemann_from_jet(J), i, j, g.normalization);
}

double scalar_curvature(const DiagonalMetric& g, std::span<const double> q) {
  auto J = metric_jet(g, q);
  auto R = riemann_from_jet(J);
  double s = 0.0;
  for (std::size_t k = 0; k < g.dim; ++k) {
    double ric = 0.0;  // R_kk = R^i_kik
    for (std::size_t i = 0; i < g.dim; ++i) ric += R(i, k, i, k);
    s += ric / J.g[k];
  }
  return s / g.normalization;
}

double gaussian_curvature_2d(const DiagonalMetric& g, std::span<const double> q) {
  if (g.dim != 2) throw std::invalid_argument("gaussian_curvature_2d: metric dimension is not 2");
  return sectional_curvature(g, q, 0, 1);
}

CurvatureSample curvature_sample(const DiagonalMetric& g, std::span<const double> q) {
  auto J = metric_jet(g, q);
  auto R = riemann_from_jet(J);
  CurvatureSample s;
  s.q.assign(q.begin(), q.end());
  for (std::size_t i = 0; i < g.dim; ++i)
    for (std::size_t j = i + 1; j < g.dim; ++j) s.sectional.push_back(sectional_from(J, R, i, j, g.normalization));
  for (std::size_t k = 0; k < g.dim; ++k) {
    double ric = 0.0;
    for (std::size_t i = 0; i < g.dim; ++i) ric += R(i, k, i, k);
    s.scalar += ric / J.g[k];
  }
  s.scalar /= g.normalization;
  return s;
}

std::optional<CurvatureSample> coalgebra_curvature_reference(MetricKind kind, double z, std::span<const double> q) {
  const std::size_t n = q.size();
  if (n < 2) return std::nullopt;
  CurvatureSample out;
  out.q.assign(q.begin(), q.end());
  if (kind == MetricKind::superintegrable) {
    out.sectional.assign(n * (n - 1) / 2, z);
    out.scalar = static_cast<double>(n * (n - 1)) * z;
    return out;
  }
  double qq = 0;
  for (double v : q) qq += v * v;
  if (n == 2) {
    double k = -z * std::sinh(z * qq);
    out.sectional = {k};
    out.scalar = 2 * k;
    return out;
  }
  if (n == 3) {
    double pre = z / 4.0 * std::exp(-z * qq);
    double e2 = std::exp(2 * z * q[1] * q[1]), e3 = std::exp(2 * z * q[2] * q[2]), eq = std::exp(2 * z * qq);
    out.sectional = {pre * (1 + e3 - 2 * eq), pre * (2 - e3 + e2 * e3 - 2 * eq), pre * (2 - e2 * e3 - eq)};
    out.scalar = -5 * z * std::sinh(z * qq);
    return out;
  }
  return std::nullopt;
}

}  // namespace qdgeo
