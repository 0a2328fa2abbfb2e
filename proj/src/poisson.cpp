#include "qdgeo/poisson.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

namespace qdgeo {

std::vector<double> PhaseGradient::flat() const {
  std::vector<double> x(dq);
  x.insert(x.end(), dp.begin(), dp.end());
  return x;
}

namespace {

void require_point(const PhaseFunction& f, const PhasePoint& x, const char* where) {
  if (x.dim() != f.arity())
    throw std::invalid_argument(std::string(where) + ": point dimension " + std::to_string(x.dim()) +
                                " != arity " + std::to_string(f.arity()) + " of '" + f.label() + "'");
}

std::string format_point(const PhasePoint& x) {
  std::ostringstream os;
  os << std::setprecision(17) << "q=(";
  for (std::size_t i = 0; i < x.q.size(); ++i) os << (i ? "," : "") << x.q[i];
  os << ") p=(";
  for (std::size_t i = 0; i < x.p.size(); ++i) os << (i ? "," : "") << x.p[i];
  os << ")";
  return os.str();
}

}  // namespace

PhaseGradient gradient(const PhaseFunction& f, const PhasePoint& x) {
  require_point(f, x, "gradient");
  auto g = gradient_at<double>(f, x.q, x.p);
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (!std::isfinite(g.dq[i]) || !std::isfinite(g.dp[i]))
      throw DomainError("gradient of '" + f.label() + "' is not finite at " + format_point(x));
  return {std::move(g.dq), std::move(g.dp)};
}

PhaseGradient gradient_fd(const PhaseFunction& f, const PhasePoint& x) {
  require_point(f, x, "gradient_fd");
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  auto flat = x.flat();
  std::vector<double> d(flat.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    double h = base * std::max(1.0, std::abs(flat[i]));
    auto xp = flat, xm = flat;
    xp[i] += h;
    xm[i] -= h;
    // Use the actually representable step.
    double step = xp[i] - xm[i];
    d[i] = (f(PhasePoint::from_flat(xp)) - f(PhasePoint::from_flat(xm))) / step;
  }
  auto n = x.dim();
  return {{d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n)},
          {d.begin() + static_cast<std::ptrdiff_t>(n), d.end()}};
}

std::vector<double> hessian(const PhaseFunction& f, const PhasePoint& x) {
  require_point(f, x, "hessian");
  const std::size_t n = x.dim();
  const std::size_t m = 2 * n;
  auto flat = x.flat();
  std::vector<D2> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = D2(D1(flat[i], 0.0), D1(0.0, 0.0));
  std::vector<double> h(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    v[a].d.v = 1.0;
    for (std::size_t b = a; b < m; ++b) {
      v[b].v.d = 1.0;
      std::span<const D2> all(v);
      double hab = f.eval<D2>(all.first(n), all.subspan(n)).d.d;
      v[b].v.d = 0.0;
      h[a * m + b] = hab;
      h[b * m + a] = hab;
    }
    v[a].d.v = 0.0;
  }
  return h;
}

BracketValue poisson_bracket_scaled(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& x) {
  if (f.arity() != g.arity())
    throw std::invalid_argument("poisson_bracket: arity mismatch between '" + f.label() + "' and '" +
                                g.label() + "'");
  auto gf = gradient(f, x);
  auto gg = gradient(g, x);
  BracketValue b;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    double a1 = gf.dq[i] * gg.dp[i];
    double a2 = gf.dp[i] * gg.dq[i];
    b.value += a1 - a2;
    b.scale += std::abs(a1) + std::abs(a2);
  }
  return b;
}

double poisson_bracket(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& x) {
  return poisson_bracket_scaled(f, g, x).value;
}

double poisson_bracket_fd(const PhaseFunction& f, const PhaseFunction& g, const PhasePoint& x) {
  if (f.arity() != g.arity()) throw std::invalid_argument("poisson_bracket_fd: arity mismatch");
  auto gf = gradient_fd(f, x);
  auto gg = gradient_fd(g, x);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) sum += gf.dq[i] * gg.dp[i] - gf.dp[i] * gg.dq[i];
  return sum;
}

PhaseFunction bracket_function(const PhaseFunction& f, const PhaseFunction& g) {
  if (f.arity() != g.arity()) throw std::invalid_argument("bracket_function: arity mismatch");
  return PhaseFunction(
      f.arity(),
      [f, g](auto q, auto p) {
        using T = typename decltype(q)::value_type;
        if constexpr (has_tangent_level_v<T>) {
          return bracket_at<T>(f, g, q, p);
        } else {
          throw std::logic_error("bracket_function: differentiation order exceeded");
          return T(0.0);
        }
      },
      "{" + f.label() + "," + g.label() + "}");
}

double scaled_residual(const BracketValue& b, double expected) {
  double denom = std::max({1.0, b.scale, std::abs(expected)});
  return std::abs(b.value - expected) / denom;
}

PhaseSampler::PhaseSampler(std::size_t n, std::uint64_t seed, double half_width)
    : n_(n), seed_(seed), half_width_(half_width) {
  if (n == 0) throw std::invalid_argument("PhaseSampler: n must be >= 1");
  if (!(half_width > 0.0)) throw std::invalid_argument("PhaseSampler: half_width must be positive");
}

std::vector<double> PhaseSampler::uniform(std::size_t k, std::size_t count, double lo, double hi) const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<double> out(count);
  for (auto& v : out) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v = lo + (hi - lo) * u;
  }
  return out;
}

PhasePoint PhaseSampler::point(std::size_t k) const {
  auto v = uniform(k, 2 * n_, -half_width_, half_width_);
  return PhasePoint::from_flat(v);
}

bool AlgebraReport::passed(double tol) const {
  return std::all_of(max_residual.begin(), max_residual.end(), [tol](double r) { return r < tol; });
}

std::string AlgebraReport::to_text() const {
  static const char* names[3] = {"{J3,J+}-2J+cosh(zJ-)", "{J3,J-}+2sinh(zJ-)/z", "{J-,J+}-4J3"};
  std::ostringstream os;
  os << std::setprecision(17);
  os << "report = algebra\n";
  os << "n = " << n << "\nz = " << z << "\nsamples = " << samples << "\nseed = " << seed << "\n";
  for (int i = 0; i < 3; ++i) {
    os << "residual[" << names[i] << "] = " << max_residual[i] << "\n";
    os << "abs_residual[" << names[i] << "] = " << max_abs_residual[i] << "\n";
    os << "worst_point[" << names[i] << "] = " << format_point(worst_point[i]) << "\n";
  }
  if (fd_disagreement) os << "fd_disagreement = " << *fd_disagreement << "\n";
  os << "passed = " << (passed() ? "true" : "false") << "\n";
  return os.str();
}

AlgebraReport check_algebra(std::size_t n, double z, std::size_t samples, std::uint64_t seed,
                            bool with_fd_oracle) {
  if (samples == 0) throw std::invalid_argument("check_algebra: samples must be >= 1");
  auto r = realize_generators(n, z);
  PhaseSampler sampler(n, seed);
  AlgebraReport rep;
  rep.n = n;
  rep.z = z;
  rep.samples = samples;
  rep.seed = seed;
  double fd_worst = 0.0;

  for (std::size_t k = 0; k < samples; ++k) {
    auto x = sampler.point(k);
    double jm = r.j_minus(x), jp = r.j_plus(x), j3 = r.j_three(x);
    if (!std::isfinite(jm) || !std::isfinite(jp) || !std::isfinite(j3))
      throw DomainError("check_algebra: non-finite generator at " + format_point(x));

    const std::array<std::pair<const PhaseFunction*, const PhaseFunction*>, 3> pairs{
        {{&r.j_three, &r.j_plus}, {&r.j_three, &r.j_minus}, {&r.j_minus, &r.j_plus}}};
    const std::array<double, 3> expected{2.0 * jp * std::cosh(z * jm), -2.0 * jm * sinhc(z * jm), 4.0 * j3};

    for (int i = 0; i < 3; ++i) {
      auto b = poisson_bracket_scaled(*pairs[i].first, *pairs[i].second, x);
      double res = scaled_residual(b, expected[i]);
      if (k == 0 || res > rep.max_residual[i]) {
        rep.max_residual[i] = res;
        rep.worst_point[i] = x;
      }
      rep.max_abs_residual[i] = std::max(rep.max_abs_residual[i], std::abs(b.value - expected[i]));
      if (with_fd_oracle) {
        double fd = poisson_bracket_fd(*pairs[i].first, *pairs[i].second, x);
        fd_worst = std::max(fd_worst, std::abs(b.value - fd) / (1.0 + std::abs(b.value)));
      }
    }
  }
  if (with_fd_oracle) rep.fd_disagreement = fd_worst;
  return rep;
}

double InvolutionReport::max_offdiagonal() const {
  double m = 0.0;
  for (std::size_t i = 0; i < residual.size(); ++i)
    for (std::size_t j = 0; j < residual.size(); ++j)
      if (i != j) m = std::max(m, residual[i][j]);
  return m;
}

double InvolutionReport::max_scaled_offdiagonal() const {
  double m = 0.0;
  for (std::size_t i = 0; i < scaled.size(); ++i)
    for (std::size_t j = 0; j < scaled.size(); ++j)
      if (i != j) m = std::max(m, scaled[i][j]);
  return m;
}

bool InvolutionReport::in_involution(double tol) const { return max_scaled_offdiagonal() < tol; }

std::string InvolutionReport::to_text() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "report = involution\nsamples = " << samples << "\nseed = " << seed << "\nhalf_width = " << half_width
     << "\nlabels =";
  for (const auto& l : labels) os << " " << l;
  os << "\nmatrix residual\n";
  for (const auto& row : residual) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << "\n";
  }
  os << "matrix scaled\n";
  for (const auto& row : scaled) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << "\n";
  }
  os << "in_involution = " << (in_involution() ? "true" : "false") << "\n";
  return os.str();
}

InvolutionReport check_involution(std::span<const PhaseFunction> funcs, std::size_t samples,
                                  std::uint64_t seed, double half_width) {
  if (funcs.empty()) throw std::invalid_argument("check_involution: no functions");
  if (samples == 0) throw std::invalid_argument("check_involution: samples must be >= 1");
  const std::size_t n = funcs.front().arity();
  require_arity(funcs, n, "check_involution");
  const std::size_t k = funcs.size();

  InvolutionReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.half_width = half_width;
  for (const auto& f : funcs) rep.labels.push_back(f.label());
  rep.residual.assign(k, std::vector<double>(k, 0.0));
  rep.scaled.assign(k, std::vector<double>(k, 0.0));

  PhaseSampler sampler(n, seed, half_width);
  for (std::size_t s = 0; s < samples; ++s) {
    auto x = sampler.point(s);
    std::vector<PhaseGradient> grads;
    grads.reserve(k);
    for (const auto& f : funcs) grads.push_back(gradient(f, x));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        BracketValue b;
        for (std::size_t c = 0; c < n; ++c) {
          double a1 = grads[i].dq[c] * grads[j].dp[c];
          double a2 = grads[i].dp[c] * grads[j].dq[c];
          b.value += a1 - a2;
          b.scale += std::abs(a1) + std::abs(a2);
        }
        double abs_r = std::abs(b.value);
        double sc = scaled_residual(b, 0.0);
        rep.residual[i][j] = rep.residual[j][i] = std::max(rep.residual[i][j], abs_r);
        rep.scaled[i][j] = rep.scaled[j][i] = std::max(rep.scaled[i][j], sc);
      }
    }
  }
  return rep;
}

std::vector<double> gradient_singular_values(std::span<const PhaseFunction> funcs, const PhasePoint& x) {
  if (funcs.empty()) return {};
  const std::size_t n = x.dim();
  require_arity(funcs, n, "independence_rank");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(funcs.size()), static_cast<Eigen::Index>(2 * n));
  for (std::size_t i = 0; i < funcs.size(); ++i) {
    auto g = gradient(funcs[i], x).flat();
    for (std::size_t j = 0; j < g.size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g[j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

int independence_rank(std::span<const PhaseFunction> funcs, const PhasePoint& x, double tolerance) {
  auto sv = gradient_singular_values(funcs, x);
  if (sv.empty() || sv.front() == 0.0) return 0;
  return static_cast<int>(
      std::count_if(sv.begin(), sv.end(), [&](double s) { return s > tolerance * sv.front(); }));
}

}  // namespace qdgeo
