#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qdgeo/phase.hpp"

namespace qdgeo {

enum class Method { implicit_midpoint, gauss4, rk4_check };

/// "implicit-midpoint", "gauss4", "rk4-check".
std::string method_name(Method m);
/// Inverse of method_name; throws std::invalid_argument.
Method parse_method(const std::string& name);

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  std::string hamiltonian;
  std::string method;
  double step = 0.0;
  /// Set when integration stopped early; `stop_reason` says why.
  bool truncated = false;
  std::string stop_reason;

  std::size_t size() const { return states.size(); }
};

/// Integration failure at time `time()`. Carries the states computed so far.
class IntegrationError : public DomainError {
 public:
  IntegrationError(const std::string& what, double time, Trajectory partial)
      : DomainError(what), time_(time), partial_(std::move(partial)) {}
  double time() const { return time_; }
  const Trajectory& partial() const { return partial_; }

 private:
  double time_;
  Trajectory partial_;
};

/// The implicit stage equations did not converge (step too large).
class ConvergenceError : public IntegrationError {
 public:
  using IntegrationError::IntegrationError;
};

/// (dq/dt, dp/dt) = (dH/dp, -dH/dq), packed as a PhasePoint.
PhasePoint hamilton_rhs(const PhaseFunction& H, const PhasePoint& x);

struct IntegrateOptions {
  double t_end = 1.0;
  double dt = 1e-3;
  Method method = Method::implicit_midpoint;
  /// Store every k-th state; the first and last are always kept.
  std::size_t keep_every = 1;
  /// Fixed-point stopping rule: update below tolerance * max(1, |x|_inf).
  double tolerance = 1e-13;
  int max_iterations = 50;
};

/// Uniform steps of size t_end / ceil(t_end / dt) covering [0, t_end].
/// Throws IntegrationError (or ConvergenceError) with the partial trajectory.
Trajectory integrate(const PhaseFunction& H, const PhasePoint& x0, const IntegrateOptions& opt);

struct ConservationReport {
  std::vector<std::string> labels;
  std::vector<double> initial;
  /// max_t |f(x(t)) - f(x(0))| / max(1, |f(x(0))|)
  std::vector<double> drift;

  double max_drift() const;
};

ConservationReport conservation_report(const Trajectory& traj, std::span<const PhaseFunction> funcs);

}  // namespace qdgeo
