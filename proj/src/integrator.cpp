#include "qdgeo/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdgeo/poisson.hpp"

namespace qdgeo {

std::string method_name(Method m) {
  switch (m) {
    case Method::implicit_midpoint: return "implicit-midpoint";
    case Method::gauss4: return "gauss4";
    case Method::rk4_check: return "rk4-check";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::implicit_midpoint, Method::gauss4, Method::rk4_check})
    if (method_name(m) == name) return m;
  throw std::invalid_argument("unknown method '" + name + "' (expected implicit-midpoint, gauss4 or rk4-check)");
}

PhasePoint hamilton_rhs(const PhaseFunction& H, const PhasePoint& x) {
  auto g = gradient(H, x);
  PhasePoint v;
  v.q = g.dp;
  v.p = g.dq;
  for (double& w : v.p) w = -w;
  return v;
}

namespace {

using Vec = std::vector<double>;

Vec rhs(const PhaseFunction& H, const Vec& x) { return hamilton_rhs(H, PhasePoint::from_flat(x)).flat(); }

// a + s * b
Vec axpy(const Vec& a, double s, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
  return r;
}

double norm_inf(const Vec& x) {
  double m = 0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double diff_inf(const Vec& a, const Vec& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct StepFailure {
  std::string what;
};

Vec step_midpoint(const PhaseFunction& H, const Vec& x, double h, const IntegrateOptions& opt) {
  Vec next = axpy(x, h, rhs(H, x));
  for (int it = 0; it < opt.max_iterations; ++it) {
    Vec mid(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) mid[i] = 0.5 * (x[i] + next[i]);
    Vec upd = axpy(x, h, rhs(H, mid));
    double delta = diff_inf(upd, next);
    next = std::move(upd);
    if (delta <= opt.tolerance * std::max(1.0, norm_inf(next))) return next;
  }
  throw StepFailure{"implicit-midpoint fixed point did not converge in " + std::to_string(opt.max_iterations) +
                        " iterations (step too large)"};
}

Vec step_gauss4(const PhaseFunction& H, const Vec& x, double h, const IntegrateOptions& opt) {
  const double r = std::sqrt(3.0) / 6.0;
  const double a[2][2] = {{0.25, 0.25 - r}, {0.25 + r, 0.25}};
  Vec f0 = rhs(H, x);
  Vec k1 = f0, k2 = f0;
  for (int it = 0; it < opt.max_iterations; ++it) {
    Vec n1 = rhs(H, axpy(axpy(x, h * a[0][0], k1), h * a[0][1], k2));
    Vec n2 = rhs(H, axpy(axpy(x, h * a[1][0], k1), h * a[1][1], k2));
    double delta = h * std::max(diff_inf(n1, k1), diff_inf(n2, k2));
    k1 = std::move(n1);
    k2 = std::move(n2);
    if (delta <= opt.tolerance * std::max(1.0, norm_inf(x))) return axpy(axpy(x, 0.5 * h, k1), 0.5 * h, k2);
  }
  throw StepFailure{"gauss4 stage equations did not converge in " + std::to_string(opt.max_iterations) +
                        " iterations (step too large)"};
}

Vec step_rk4(const PhaseFunction& H, const Vec& x, double h) {
  Vec k1 = rhs(H, x);
  Vec k2 = rhs(H, axpy(x, 0.5 * h, k1));
  Vec k3 = rhs(H, axpy(x, 0.5 * h, k2));
  Vec k4 = rhs(H, axpy(x, h, k3));
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return r;
}

std::string at_time(double t) {
  std::ostringstream os;
  os.precision(17);
  os << " at t=" << t;
  return os.str();
}

}  // namespace

Trajectory integrate(const PhaseFunction& H, const PhasePoint& x0, const IntegrateOptions& opt) {
  if (!(opt.dt > 0) || !std::isfinite(opt.dt)) throw std::invalid_argument("integrate: dt must be positive");
  if (!(opt.t_end > 0) || !std::isfinite(opt.t_end)) throw std::invalid_argument("integrate: t_end must be positive");
  if (opt.keep_every == 0) throw std::invalid_argument("integrate: keep_every must be >= 1");
  if (x0.dim() != H.arity())
    throw std::invalid_argument("integrate: initial state has dimension " + std::to_string(x0.dim()) +
                                ", Hamiltonian has arity " + std::to_string(H.arity()));

  const auto steps = static_cast<std::size_t>(std::ceil(opt.t_end / opt.dt - 1e-9));
  const double h = opt.t_end / static_cast<double>(steps);

  Trajectory tr;
  tr.hamiltonian = H.label();
  tr.method = method_name(opt.method);
  tr.step = h;
  tr.times.push_back(0.0);
  tr.states.push_back(x0);

  Vec x = x0.flat();
  auto keep_last_accepted = [&](double t) {
    if (tr.times.back() != t) {
      tr.times.push_back(t);
      tr.states.push_back(PhasePoint::from_flat(x));
    }
    tr.truncated = true;
  };
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = h * static_cast<double>(k - 1);
    Vec next;
    try {
      switch (opt.method) {
        case Method::implicit_midpoint: next = step_midpoint(H, x, h, opt); break;
        case Method::gauss4: next = step_gauss4(H, x, h, opt); break;
        case Method::rk4_check: next = step_rk4(H, x, h); break;
      }
      for (double v : next)
        if (!std::isfinite(v)) throw DomainError("state left the domain of " + H.label() + " (non-finite value)");
    } catch (const StepFailure& f) {
      keep_last_accepted(t_prev);
      tr.stop_reason = f.what + at_time(t_prev);
      throw ConvergenceError(tr.stop_reason, t_prev, tr);
    } catch (const DomainError& e) {
      keep_last_accepted(t_prev);
      tr.stop_reason = std::string(e.what()) + at_time(t_prev);
      throw IntegrationError(tr.stop_reason, t_prev, tr);
    }
    x = std::move(next);
    if (k % opt.keep_every == 0 || k == steps) {
      tr.times.push_back(k == steps ? opt.t_end : h * static_cast<double>(k));
      tr.states.push_back(PhasePoint::from_flat(x));
    }
  }
  return tr;
}

double ConservationReport::max_drift() const {
  double m = 0;
  for (double d : drift) m = std::max(m, d);
  return m;
}

ConservationReport conservation_report(const Trajectory& traj, std::span<const PhaseFunction> funcs) {
  ConservationReport rep;
  if (traj.states.empty()) throw std::invalid_argument("conservation_report: empty trajectory");
  require_arity(funcs, traj.states.front().dim(), "conservation_report");
  for (const auto& f : funcs) {
    double f0 = f(traj.states.front());
    double d = 0;
    for (const auto& x : traj.states) d = std::max(d, std::abs(f(x) - f0) / std::max(1.0, std::abs(f0)));
    rep.labels.push_back(f.label());
    rep.initial.push_back(f0);
    rep.drift.push_back(d);
  }
  return rep;
}

}  // namespace qdgeo
