#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "output.hpp"
#include "qdgeo/coalgebra.hpp"
#include "qdgeo/coordinates.hpp"
#include "qdgeo/geometry.hpp"
#include "qdgeo/integrator.hpp"
#include "qdgeo/poisson.hpp"

namespace qdgeo::cli {

namespace {

constexpr double kFdTolerance = 1e-6;
constexpr double kCasimirOneTolerance = 1e-12;
constexpr std::size_t kRankPoints = 10;

std::size_t dim(const RunConfig& cfg) { return static_cast<std::size_t>(cfg.n); }

std::string point_text(const PhasePoint& x) {
  std::string s = "q=[";
  for (std::size_t i = 0; i < x.q.size(); ++i) s += (i ? " " : "") + format_number(x.q[i]);
  s += "] p=[";
  for (std::size_t i = 0; i < x.p.size(); ++i) s += (i ? " " : "") + format_number(x.p[i]);
  return s + "]";
}

std::string column_name(std::string label) {
  std::replace(label.begin(), label.end(), ' ', '_');
  return label;
}

Profile family_profile(const std::string& selector) {
  const std::string id = selector.substr(selector.find(':') + 1);
  if (id == "one") return Profile::one();
  if (id == "exp") return Profile::exponential();
  return Profile::linear();
}

bool is_family(const RunConfig& cfg) { return cfg.hamiltonian.rfind("family:", 0) == 0; }
bool is_super(const RunConfig& cfg) { return cfg.hamiltonian == "superintegrable"; }

SiteSigns cartesian_signs(const RunConfig& cfg) {
  if (cfg.kappa2 > 0) return SiteSigns::euclidean(dim(cfg));
  return SpaceSignature(cfg.z, cfg.kappa2).site_signs();
}

PhaseFunction cartesian_hamiltonian(const RunConfig& cfg, const SiteSigns& signs) {
  if (is_family(cfg)) return hamiltonian_family(dim(cfg), cfg.z, family_profile(cfg.hamiltonian));
  if (is_super(cfg)) return hamiltonian_superintegrable(dim(cfg), cfg.z, signs);
  return hamiltonian_integrable(dim(cfg), cfg.z, signs);
}

// ---------------------------------------------------------------------------
// verify

struct Worst {
  double scaled = 0.0;
  double abs = 0.0;
  PhasePoint point;
};

Worst bracket_worst(const PhaseFunction& f, const PhaseFunction& g, const PhaseSampler& s, std::size_t samples) {
  Worst w;
  for (std::size_t k = 0; k < samples; ++k) {
    auto x = s.point(k);
    auto b = poisson_bracket_scaled(f, g, x);
    double r = scaled_residual(b, 0.0);
    if (k == 0 || r > w.scaled) {
      w.scaled = r;
      w.point = x;
    }
    w.abs = std::max(w.abs, std::abs(b.value));
  }
  return w;
}

struct VerifyLog {
  Outcome& o;
  Json failures = Json::array();

  void add(const std::string& identity, double residual, double abs_residual, double threshold, bool passed,
           const std::string& where) {
    o.table.rows.push_back({identity, residual, abs_residual, threshold, std::string(passed ? "true" : "false"),
                            where});
    if (identity.rfind("oracle:", 0) != 0) o.residuals[identity] = residual;
    if (!passed) {
      failures.push_back(identity);
      if (o.message.empty())
        o.message = "verification failed: " + identity + " residual " + format_number(residual) + " (threshold " +
                    format_number(threshold) + ") at " + where;
    }
  }
  void bracket(const std::string& identity, const Worst& w) {
    add(identity, w.scaled, w.abs, kBracketTolerance, w.scaled < kBracketTolerance, point_text(w.point));
  }
};

}  // namespace

Outcome cmd_verify(const RunConfig& cfg) {
  const std::size_t n = dim(cfg);
  const double z = cfg.z;
  const auto samples = static_cast<std::size_t>(cfg.samples);
  Outcome o;
  o.table.columns = {"identity", "residual", "abs_residual", "threshold", "passed", "worst_point"};
  VerifyLog log{o};

  // Deformed sl(2) brackets, exact path and finite-difference oracle.
  static const char* names[3] = {"{J3,J+}-2J+cosh(zJ-)", "{J3,J-}+2sinh(zJ-)/z", "{J-,J+}-4J3"};
  auto alg = check_algebra(n, z, samples, cfg.seed, true);
  for (int i = 0; i < 3; ++i)
    log.add(names[i], alg.max_residual[i], alg.max_abs_residual[i], kBracketTolerance,
            alg.max_residual[i] < kBracketTolerance, point_text(alg.worst_point[i]));
  const double fd = alg.fd_disagreement.value_or(0.0);
  o.results["fd_disagreement"] = fd;
  log.add("oracle:exact-vs-fd", fd, fd, kFdTolerance, fd < kFdTolerance, "all samples");

  // C^(1) vanishes identically; residual relative to the cancelling terms.
  {
    auto c1 = casimir_one(z);
    auto r1 = realize_generators(1, z);
    PhaseSampler s(1, cfg.seed);
    double worst = 0.0, worst_abs = 0.0;
    PhasePoint at = s.point(0);
    for (std::size_t k = 0; k < samples; ++k) {
      auto x = s.point(k);
      double j3 = r1.j_three(x);
      double v = std::abs(c1(x));
      double rel = v / std::max(1.0, j3 * j3);
      if (rel > worst) {
        worst = rel;
        at = x;
      }
      worst_abs = std::max(worst_abs, v);
    }
    log.add("C^(1)", worst, worst_abs, kCasimirOneTolerance, worst < kCasimirOneTolerance, point_text(at));
  }

  // Centrality of the Casimir tower.
  PhaseSampler sampler(n, cfg.seed);
  auto gens = realize_generators(n, z);
  std::vector<PhaseFunction> casimirs;
  for (std::size_t m = 2; m <= n; ++m) casimirs.push_back(casimir_m(m, n, z));
  for (std::size_t a = 0; a < casimirs.size(); ++a) {
    const std::string cm = "C^(" + std::to_string(a + 2) + ")";
    log.bracket("{" + cm + ",J-}", bracket_worst(casimirs[a], gens.j_minus, sampler, samples));
    log.bracket("{" + cm + ",J+}", bracket_worst(casimirs[a], gens.j_plus, sampler, samples));
    log.bracket("{" + cm + ",J3}", bracket_worst(casimirs[a], gens.j_three, sampler, samples));
  }
  for (std::size_t a = 0; a < casimirs.size(); ++a)
    for (std::size_t b = a + 1; b < casimirs.size(); ++b)
      log.bracket("{C^(" + std::to_string(a + 2) + "),C^(" + std::to_string(b + 2) + ")}",
                  bracket_worst(casimirs[a], casimirs[b], sampler, samples));

  // Involution with H, within the Casimir tower (above) and within the I
  // family; C^(m) and I^(k) do not commute with each other. Then functional
  // independence of each set.
  std::vector<std::vector<PhaseFunction>> sets;
  std::vector<PhaseFunction> integrable{is_family(cfg) ? hamiltonian_family(n, z, family_profile(cfg.hamiltonian))
                                                       : hamiltonian_integrable(n, z)};
  integrable.insert(integrable.end(), casimirs.begin(), casimirs.end());
  sets.push_back(integrable);
  if (n == 2 || n == 3) {
    std::vector<PhaseFunction> super{hamiltonian_superintegrable(n, z)};
    super.insert(super.end(), casimirs.begin(), casimirs.end());
    super.push_back(integral_I2(n, z));
    if (n == 3) super.push_back(integral_I3(n, z));
    sets.push_back(super);
  }
  PhaseSampler generic(n, cfg.seed + 1, 1.0);
  Json ranks = Json::object();
  for (const auto& set : sets) {
    for (std::size_t a = 1; a < set.size(); ++a)
      log.bracket("{" + set[0].label() + "," + set[a].label() + "}", bracket_worst(set[0], set[a], sampler, samples));
    for (std::size_t a = 1; a < set.size(); ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b)
        if (set[a].label().rfind("I^", 0) == 0 && set[b].label().rfind("I^", 0) == 0)
          log.bracket("{" + set[a].label() + "," + set[b].label() + "}",
                      bracket_worst(set[a], set[b], sampler, samples));

    std::string name = "rank{";
    for (std::size_t a = 0; a < set.size(); ++a) name += (a ? "," : "") + set[a].label();
    name += "}";
    const int expected = static_cast<int>(set.size());
    int lowest = expected;
    double weakest = 1.0;
    PhasePoint at = generic.point(0);
    for (std::size_t k = 0; k < kRankPoints; ++k) {
      auto x = generic.point(k);
      auto sv = gradient_singular_values(set, x);
      int r = independence_rank(set, x);
      double ratio = sv.front() > 0 ? sv.back() / sv.front() : 0.0;
      if (r < lowest || ratio < weakest) at = x;
      lowest = std::min(lowest, r);
      weakest = std::min(weakest, ratio);
    }
    ranks[name] = lowest;
    log.add(name, static_cast<double>(expected - lowest), weakest, 0.0, lowest == expected, point_text(at));
  }

  o.results["passed"] = log.failures.empty();
  o.results["checks"] = o.table.rows.size();
  o.results["failures"] = log.failures;
  o.results["ranks"] = ranks;
  o.results["samples"] = cfg.samples;
  o.results["rank_points"] = kRankPoints;
  o.code = log.failures.empty() ? kSuccess : kNumericalFailure;
  return o;
}

// ---------------------------------------------------------------------------
// simulate

Outcome cmd_simulate(const RunConfig& cfg) {
  Outcome o;
  const std::size_t n = dim(cfg);
  PhasePoint x0(cfg.q, cfg.p);
  PhaseFunction H;
  std::vector<PhaseFunction> constants;
  std::vector<std::string> qn, pn;

  if (cfg.chart == "polar") {
    SpaceSignature sig(cfg.z, cfg.kappa2);
    RadialKind kind = RadialKind::rho;
    if (is_super(cfg)) {
      auto s = hamiltonian_polar_super(sig);
      constants = {s.H, s.C2, s.C3, s.I2, s.I3};
      kind = RadialKind::r;
    } else {
      auto s = hamiltonian_polar_integrable(sig);
      constants = {s.H, s.C2, s.C3};
    }
    H = constants.front();
    const std::string radial = kind == RadialKind::r ? "r" : "rho";
    qn = {radial, "theta", "phi"};
    pn = {"p_" + radial, "p_theta", "p_phi"};
    try {
      check_polar_chart(PolarPoint::from_phase(x0), sig, kind);
    } catch (const ChartError& e) {
      o.code = kNumericalFailure;
      o.message = std::string("initial state: ") + e.what();
      o.results["error"] = o.message;
      return o;
    }
  } else {
    SiteSigns signs = cartesian_signs(cfg);
    H = cartesian_hamiltonian(cfg, signs);
    constants.push_back(H);
    for (std::size_t m = 2; m <= n; ++m) constants.push_back(casimir_m(m, n, cfg.z, signs));
    if (is_super(cfg) && n >= 2) constants.push_back(integral_I2(n, cfg.z, signs));
    if (is_super(cfg) && n >= 3) constants.push_back(integral_I3(n, cfg.z, signs));
    for (std::size_t i = 0; i < n; ++i) {
      qn.push_back("q" + std::to_string(i + 1));
      pn.push_back("p" + std::to_string(i + 1));
    }
  }

  IntegrateOptions opt;
  opt.t_end = cfg.t_end;
  opt.dt = cfg.dt;
  opt.method = parse_method(cfg.method);
  opt.keep_every = static_cast<std::size_t>(cfg.keep_every);

  Trajectory tr;
  try {
    tr = integrate(H, x0, opt);
  } catch (const IntegrationError& e) {
    tr = e.partial();
    o.code = kNumericalFailure;
    o.message = e.what();
  }

  o.table.columns.push_back("t");
  o.table.columns.insert(o.table.columns.end(), qn.begin(), qn.end());
  o.table.columns.insert(o.table.columns.end(), pn.begin(), pn.end());
  for (const auto& c : constants) o.table.columns.push_back(column_name(c.label()));
  for (std::size_t k = 0; k < tr.size(); ++k) {
    std::vector<Cell> row{tr.times[k]};
    for (double v : tr.states[k].q) row.emplace_back(v);
    for (double v : tr.states[k].p) row.emplace_back(v);
    for (const auto& c : constants) row.emplace_back(c(tr.states[k]));
    o.table.rows.push_back(std::move(row));
  }

  auto rep = conservation_report(tr, constants);
  o.results["hamiltonian"] = H.label();
  o.results["method"] = tr.method;
  o.results["step"] = tr.step;
  o.results["stored_states"] = tr.size();
  o.results["final_time"] = tr.times.back();
  o.results["truncated"] = tr.truncated;
  o.results["stop_reason"] = tr.stop_reason;
  Json initial = Json::object(), drift = Json::object();
  for (std::size_t i = 0; i < rep.labels.size(); ++i) {
    initial[rep.labels[i]] = rep.initial[i];
    drift[rep.labels[i]] = rep.drift[i];
  }
  o.results["initial"] = initial;
  o.residuals["drift"] = drift;
  o.residuals["max_drift"] = rep.max_drift();
  return o;
}

// ---------------------------------------------------------------------------
// curvature

namespace {

std::vector<double> cartesian_axis(int count, double extent) {
  if (count == 1) return {0.0};
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) v[static_cast<std::size_t>(k)] = -extent + 2.0 * extent * k / (count - 1);
  return v;
}

// Interior points (0, top]: k / count for the radius, k / (count + 1) for angles.
std::vector<double> open_axis(int count, double top, bool include_top) {
  std::vector<double> v(static_cast<std::size_t>(count));
  const double div = include_top ? count : count + 1;
  for (int k = 0; k < count; ++k) v[static_cast<std::size_t>(k)] = top * (k + 1) / div;
  return v;
}

double relative(double value, double ref) { return std::abs(value - ref) / std::max(1.0, std::abs(ref)); }

}  // namespace

Outcome cmd_curvature(const RunConfig& cfg) {
  Outcome o;
  const std::size_t n = dim(cfg);
  const MetricKind kind = is_super(cfg) ? MetricKind::superintegrable : MetricKind::integrable;
  const bool polar = cfg.chart == "polar";
  DiagonalMetric g;
  std::vector<std::vector<double>> axes;
  std::vector<std::string> coord_names;
  bool with_reference = false;

  if (polar) {
    SpaceSignature sig(cfg.z, cfg.kappa2);
    g = kind == MetricKind::superintegrable ? polar_metric_super(sig) : polar_metric_integrable(sig);
    const double angle = cfg.kappa2 > 0 ? std::numbers::pi / 2 : 1.0;
    axes = {open_axis(cfg.grid, cfg.extent, true), open_axis(cfg.grid, angle, false),
            open_axis(cfg.grid, std::numbers::pi / 2, false)};
    coord_names = {kind == MetricKind::superintegrable ? "r" : "rho", "theta", "phi"};
    with_reference = true;
  } else {
    SiteSigns signs = cartesian_signs(cfg);
    if (is_family(cfg)) {
      auto H = hamiltonian_family(n, cfg.z, family_profile(cfg.hamiltonian));
      PhaseSampler s(n, 7, 0.5);
      std::vector<PhasePoint> pts;
      for (std::size_t k = 0; k < 5; ++k) pts.push_back(s.point(k));
      g = metric_from_hamiltonian(H, pts, kCoalgebraMetricFactor);
    } else {
      g = coalgebra_metric(kind, n, cfg.z, signs);
      with_reference = cfg.kappa2 > 0 && (kind == MetricKind::superintegrable || n <= 3);
    }
    axes.assign(n, cartesian_axis(cfg.grid, cfg.extent));
    for (std::size_t i = 0; i < n; ++i) coord_names.push_back("q" + std::to_string(i + 1));
  }

  std::vector<std::string> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back("K" + std::to_string(i + 1) + std::to_string(j + 1));
  o.table.columns = coord_names;
  o.table.columns.insert(o.table.columns.end(), pairs.begin(), pairs.end());
  o.table.columns.push_back("K");
  if (with_reference) {
    for (const auto& p : pairs) o.table.columns.push_back(p + "_ref");
    o.table.columns.push_back("K_ref");
    for (const auto& p : pairs) o.table.columns.push_back(p + "_res");
    o.table.columns.push_back("K_res");
  }
  if (n == 3) o.table.columns.push_back("identity_res");

  double max_sectional_res = 0, max_scalar_res = 0, max_identity_res = 0;
  std::vector<std::size_t> idx(n, 0);
  std::size_t points = 0;
  while (true) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = axes[i][idx[i]];
    try {
      if (polar)
        check_polar_chart(PolarPoint{y[0], y[1], y[2], 0, 0, 0}, SpaceSignature(cfg.z, cfg.kappa2),
                          kind == MetricKind::superintegrable ? RadialKind::r : RadialKind::rho);
      auto values = g.values(y);
      for (std::size_t i = 0; i < n; ++i)
        if ((values[i] > 0 ? 1 : -1) != g.signature[i])
          throw DomainError("metric component g_" + std::to_string(i + 1) + std::to_string(i + 1) +
                            " changes sign between grid points");
      auto s = curvature_sample(g, y);
      std::vector<Cell> row(y.begin(), y.end());
      row.insert(row.end(), s.sectional.begin(), s.sectional.end());
      row.emplace_back(s.scalar);
      if (with_reference) {
        CurvatureSample ref = polar ? polar_curvature_reference(kind, SpaceSignature(cfg.z, cfg.kappa2), y)
                                    : *coalgebra_curvature_reference(kind, cfg.z, y);
        row.insert(row.end(), ref.sectional.begin(), ref.sectional.end());
        row.emplace_back(ref.scalar);
        for (std::size_t k = 0; k < ref.sectional.size(); ++k) {
          double r = relative(s.sectional[k], ref.sectional[k]);
          max_sectional_res = std::max(max_sectional_res, r);
          row.emplace_back(r);
        }
        double r = relative(s.scalar, ref.scalar);
        max_scalar_res = std::max(max_scalar_res, r);
        row.emplace_back(r);
      }
      if (n == 3) {
        double sum = s.sectional[0] + s.sectional[1] + s.sectional[2];
        double r = relative(s.scalar, 2 * sum);
        max_identity_res = std::max(max_identity_res, r);
        row.emplace_back(r);
      }
      o.table.rows.push_back(std::move(row));
      ++points;
    } catch (const DomainError& e) {
      o.code = kNumericalFailure;
      o.message = std::string("grid leaves the metric domain: ") + e.what();
      o.results["error"] = o.message;
      break;
    }
    std::size_t d = n;
    while (d > 0 && ++idx[d - 1] == axes[d - 1].size()) idx[--d] = 0;
    if (d == 0) break;
  }

  o.results["metric"] = g.label;
  o.results["normalization"] = g.normalization;
  o.results["points"] = points;
  o.results["reference"] = with_reference;
  if (with_reference) {
    o.residuals["max_sectional_res"] = max_sectional_res;
    o.residuals["max_scalar_res"] = max_scalar_res;
  }
  if (n == 3) o.residuals["max_identity_res"] = max_identity_res;
  return o;
}

// ---------------------------------------------------------------------------
// transform

namespace {

Json canonicity(const PhasePoint& x, const SpaceSignature& sig, MomentumScale scale, double& worst) {
  static const char* names[6] = {"rho", "theta", "phi", "p_rho", "p_theta", "p_phi"};
  auto f = polar_chart_functions(sig, scale);
  Json out = Json::object();
  worst = 0.0;
  for (int a = 0; a < 6; ++a)
    for (int b = a + 1; b < 6; ++b) {
      double expected = (a < 3 && b == a + 3) ? 1.0 : 0.0;
      double r = std::abs(poisson_bracket(f[a], f[b], x) - expected);
      out[std::string("{") + names[a] + "," + names[b] + "}"] = r;
      worst = std::max(worst, r);
    }
  return out;
}

double max_relative_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, relative(a[i], b[i]));
  return m;
}

std::string chart_message(const ChartError& e) {
  if (e.relation() == 0) return std::string("chart singularity: ") + e.what();
  return "point outside the chart (relation " + std::to_string(e.relation()) + " violated): " + e.what();
}

void put_polar(Json& j, const PolarPoint& y) {
  j["rho"] = y.rho;
  j["theta"] = y.theta;
  j["phi"] = y.phi;
  j["p_rho"] = y.p_rho;
  j["p_theta"] = y.p_theta;
  j["p_phi"] = y.p_phi;
}

}  // namespace

Outcome cmd_transform(const RunConfig& cfg) {
  Outcome o;
  SpaceSignature sig(cfg.z, cfg.kappa2);
  const MomentumScale scale = cfg.momentum == "published" ? MomentumScale::published : MomentumScale::canonical;
  const PhasePoint input(cfg.q, cfg.p);

  try {
    PhasePoint cart;
    PolarPoint polar;
    if (cfg.direction == "to-polar") {
      cart = input;
      polar = to_polar(input, sig, scale);
      put_polar(o.results, polar);
      bool reflected = false;
      for (double v : input.q) reflected = reflected || v < 0;
      o.results["octant_reflected"] = reflected;
      if (cfg.round_trip) {
        PhasePoint expect = input;
        for (int i = 0; i < 3; ++i)
          if (expect.q[i] < 0) {
            expect.q[i] = -expect.q[i];
            expect.p[i] = -expect.p[i];
          }
        PhasePoint back = to_cartesian(polar, sig, scale);
        o.results["round_trip_q"] = back.q;
        o.results["round_trip_p"] = back.p;
        o.residuals["round_trip"] = max_relative_gap(back.flat(), expect.flat());
      }
    } else {
      polar = PolarPoint::from_phase(input);
      cart = to_cartesian(polar, sig, scale);
      o.results["q"] = cart.q;
      o.results["p"] = cart.p;
      if (cfg.round_trip) {
        PolarPoint back = to_polar(cart, sig, scale);
        Json b;
        put_polar(b, back);
        o.results["round_trip"] = b;
        o.residuals["round_trip"] = max_relative_gap(back.to_phase().flat(), polar.to_phase().flat());
      }
    }
    if (cfg.radial) {
      PolarPoint r = to_radial_r(polar, cfg.z);
      o.results["r"] = r.rho;
      o.results["p_r"] = r.p_rho;
    }

    std::array<double, 3> q{std::abs(cart.q[0]), std::abs(cart.q[1]), std::abs(cart.q[2])};
    auto rel = chart_residuals(q, {polar.rho, polar.theta, polar.phi}, sig);
    o.residuals["chart_relations"] = rel;
    o.residuals["max_chart_relation"] = *std::max_element(rel.begin(), rel.end());

    try {
      double worst = 0;
      o.residuals["canonicity"] = canonicity(cart, sig, scale, worst);
      o.residuals["max_canonicity"] = worst;
    } catch (const DomainError& e) {
      o.residuals["canonicity"] = nullptr;
      o.residuals["canonicity_note"] = std::string("not evaluated at a chart singularity: ") + e.what();
    }
  } catch (const ChartError& e) {
    o.code = kNumericalFailure;
    o.message = chart_message(e);
    o.results["error"] = o.message;
    o.results["relation"] = e.relation();
  } catch (const DomainError& e) {
    o.code = kNumericalFailure;
    o.message = e.what();
    o.results["error"] = o.message;
  }

  if (cfg.format == "csv") {
    o.table.columns = {"key", "value"};
    o.csv_trailer = false;
    auto emit = [&](const Json& obj, const std::string& prefix) {
      for (const auto& [k, v] : obj.items()) {
        if (v.is_number()) o.table.rows.push_back({prefix + k, v.get<double>()});
        else if (v.is_string()) o.table.rows.push_back({prefix + k, v.get<std::string>()});
        else if (v.is_boolean()) o.table.rows.push_back({prefix + k, std::string(v.get<bool>() ? "true" : "false")});
        else if (v.is_array())
          for (std::size_t i = 0; i < v.size(); ++i)
            o.table.rows.push_back({prefix + k + "[" + std::to_string(i) + "]", v[i].get<double>()});
      }
    };
    emit(o.results, "");
    for (const auto& [k, v] : o.residuals.items()) {
      if (v.is_object()) {
        for (const auto& [kk, vv] : v.items()) o.table.rows.push_back({"residual." + k + "." + kk, vv.get<double>()});
      } else if (v.is_number()) {
        o.table.rows.push_back({"residual." + k, v.get<double>()});
      } else if (v.is_string()) {
        o.table.rows.push_back({"residual." + k, v.get<std::string>()});
      } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i)
          o.table.rows.push_back({"residual." + k + "[" + std::to_string(i) + "]", v[i].get<double>()});
      }
    }
  }
  return o;
}

}  // namespace qdgeo::cli
