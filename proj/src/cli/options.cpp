#include <cmath>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "output.hpp"
#include "qdgeo/coordinates.hpp"
#include "qdgeo/integrator.hpp"

namespace qdgeo::cli {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

void require_finite(double v, const char* name) { require(std::isfinite(v), std::string(name) + " must be finite"); }

bool is_family(const std::string& h) { return h.rfind("family:", 0) == 0; }

std::string default_format(const std::string& command) {
  return command == "simulate" || command == "curvature" ? "csv" : "json";
}

}  // namespace

void resolve(RunConfig& cfg) {
  require(cfg.command == "verify" || cfg.command == "simulate" || cfg.command == "curvature" ||
              cfg.command == "transform",
          "unknown command '" + cfg.command + "'");
  require(cfg.n >= 1, "dimension must be >= 1");
  require_finite(cfg.z, "z");
  require_finite(cfg.kappa2, "kappa2");
  require(cfg.kappa2 != 0.0, "kappa2 must be nonzero");
  require_finite(cfg.t_end, "t_end");
  require_finite(cfg.dt, "dt");
  require_finite(cfg.extent, "extent");
  for (double v : cfg.q) require_finite(v, "q");
  for (double v : cfg.p) require_finite(v, "p");

  require(cfg.hamiltonian == "integrable" || cfg.hamiltonian == "superintegrable" ||
              cfg.hamiltonian == "family:one" || cfg.hamiltonian == "family:exp" ||
              cfg.hamiltonian == "family:linear",
          "hamiltonian must be integrable, superintegrable or family:<one|exp|linear>, got '" + cfg.hamiltonian +
              "'");
  require(cfg.chart == "cartesian" || cfg.chart == "polar", "chart must be cartesian or polar");
  require(cfg.direction == "to-polar" || cfg.direction == "to-cartesian",
          "direction must be to-polar or to-cartesian");
  require(cfg.momentum == "canonical" || cfg.momentum == "published", "momentum must be canonical or published");
  try {
    parse_method(cfg.method);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.format.empty()) cfg.format = default_format(cfg.command);
  require(cfg.format == "csv" || cfg.format == "json", "format must be csv or json");

  const bool polar = cfg.chart == "polar" || cfg.command == "transform";
  if (polar) require(cfg.n == 3, "the polar chart needs n = 3");
  if (polar && is_family(cfg.hamiltonian))
    throw ConfigError("family Hamiltonians have no polar form; use the cartesian chart");
  if (cfg.kappa2 < 0 && !polar) {
    require(cfg.n == 3, "kappa2 < 0 selects the signed three-site realization and needs n = 3");
    require(!is_family(cfg.hamiltonian), "family Hamiltonians are only available with kappa2 > 0");
  }

  if (cfg.command == "verify") {
    require(cfg.samples >= 1, "samples must be >= 1");
  } else if (cfg.command == "simulate") {
    require(cfg.dt > 0, "dt must be > 0");
    require(cfg.t_end > 0, "t_end must be > 0");
    require(cfg.keep_every >= 1, "keep_every must be >= 1");
    require(cfg.q.size() == static_cast<std::size_t>(cfg.n) && cfg.p.size() == static_cast<std::size_t>(cfg.n),
            "initial state needs q and p with n = " + std::to_string(cfg.n) + " components each");
  } else if (cfg.command == "curvature") {
    require(cfg.n >= 2, "curvature needs n >= 2");
    require(cfg.grid >= 1, "grid must be >= 1");
    require(cfg.extent > 0, "extent must be > 0");
  } else {
    if (cfg.q.empty()) cfg.q.assign(3, 0.0);
    if (cfg.p.empty()) cfg.p.assign(3, 0.0);
    require(cfg.q.size() == 3 && cfg.p.size() == 3, "transform needs q and p with 3 components each");
  }
}

int execute(RunConfig cfg, std::ostream& out, std::ostream& err) {
  try {
    resolve(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  Outcome o;
  try {
    if (cfg.command == "verify") o = cmd_verify(cfg);
    else if (cfg.command == "simulate") o = cmd_simulate(cfg);
    else if (cfg.command == "curvature") o = cmd_curvature(cfg);
    else o = cmd_transform(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }

  if (o.code != kSuccess && !o.message.empty()) err << "error: " << o.message << "\n";
  std::string text = cfg.format == "json" ? render_json(cfg, o) : render_csv(cfg, o);
  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
      err << "error: cannot open output file '" << cfg.output << "'\n";
      return kConfigError;
    }
    f << text;
    if (!f) {
      err << "error: failed writing '" << cfg.output << "'\n";
      return kConfigError;
    }
  }
  return o.code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic flows from the deformed sl(2) Poisson coalgebra", "qdgeo"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "", "TOML/INI file; [verify], [simulate], ... sections hold per-command keys");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "dimension (number of sites)")->capture_default_str();
    sub->add_option("--z", cfg.z, "deformation parameter")->capture_default_str();
    sub->add_option("--output,-o", cfg.output, "output file (default: standard output)");
    sub->add_option("--format", cfg.format, "csv or json");
  };
  auto hamiltonian = [&](CLI::App* sub) {
    sub->add_option("--hamiltonian", cfg.hamiltonian, "integrable, superintegrable or family:<one|exp|linear>")
        ->capture_default_str();
  };
  auto signature = [&](CLI::App* sub) {
    sub->add_option("--kappa2", cfg.kappa2, "second curvature label (nonzero)")->capture_default_str();
  };
  auto state = [&](CLI::App* sub) {
    sub->add_option("--q", cfg.q, "positions, comma separated")->delimiter(',');
    sub->add_option("--p", cfg.p, "momenta, comma separated")->delimiter(',');
  };

  auto* verify = app.add_subcommand("verify", "check the algebra, Casimirs, involution and rank");
  common(verify);
  hamiltonian(verify);
  verify->add_option("--samples", cfg.samples, "random phase points")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "sampler seed")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "integrate a geodesic flow and monitor its constants");
  common(simulate);
  hamiltonian(simulate);
  signature(simulate);
  state(simulate);
  simulate->add_option("--chart", cfg.chart, "cartesian or polar")->capture_default_str();
  simulate->add_option("--t-end", cfg.t_end, "final time")->capture_default_str();
  simulate->add_option("--dt", cfg.dt, "largest step")->capture_default_str();
  simulate->add_option("--method", cfg.method, "implicit-midpoint, gauss4 or rk4-check")->capture_default_str();
  simulate->add_option("--keep-every", cfg.keep_every, "store every k-th step")->capture_default_str();

  auto* curvature = app.add_subcommand("curvature", "sectional and scalar curvature on a grid");
  common(curvature);
  hamiltonian(curvature);
  signature(curvature);
  curvature->add_option("--chart", cfg.chart, "cartesian or polar")->capture_default_str();
  curvature->add_option("--grid", cfg.grid, "points per axis")->capture_default_str();
  curvature->add_option("--extent", cfg.extent, "grid half-width (polar: largest radius)")->capture_default_str();

  auto* transform = app.add_subcommand("transform", "map a phase point between Cartesian and polar charts");
  common(transform);
  signature(transform);
  state(transform);
  transform->add_option("--direction", cfg.direction, "to-polar or to-cartesian")->capture_default_str();
  transform->add_option("--momentum", cfg.momentum, "canonical or published")->capture_default_str();
  transform->add_flag("--round-trip", cfg.round_trip, "map back and report the discrepancy");
  transform->add_flag("--radial", cfg.radial, "also report r and p_r");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kConfigError;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }

  for (auto* sub : {verify, simulate, curvature, transform})
    if (sub->parsed()) cfg.command = sub->get_name();
  return execute(std::move(cfg), out, err);
}

}  // namespace qdgeo::cli
