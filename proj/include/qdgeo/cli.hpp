#pragma once

// Command-line front end: verify, simulate, curvature, transform.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical or verification
// failure. Every output embeds the resolved configuration.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdgeo::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { kSuccess = 0, kConfigError = 1, kNumericalFailure = 2 };

/// Invalid or inconsistent configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int n = 3;
  double z = 0.3;
  double kappa2 = 1.0;
  /// integrable, superintegrable, or family:<one|exp|linear>
  std::string hamiltonian = "integrable";
  /// cartesian or polar
  std::string chart = "cartesian";
  std::vector<double> q;
  std::vector<double> p;
  double t_end = 1.0;
  double dt = 1e-3;
  std::string method = "implicit-midpoint";
  int keep_every = 1;
  int samples = 200;
  std::uint64_t seed = 42;
  /// Points per axis of the curvature grid.
  int grid = 5;
  /// Half-width of the Cartesian grid, or the largest radius of the polar one.
  double extent = 1.0;
  /// to-polar or to-cartesian
  std::string direction = "to-polar";
  /// canonical or published
  std::string momentum = "canonical";
  bool round_trip = false;
  bool radial = false;
  /// Empty writes to the output stream.
  std::string output;
  /// csv or json; empty selects the command's default.
  std::string format;
};

/// Checks invariants and fills command-dependent defaults. Throws ConfigError.
void resolve(RunConfig& cfg);

/// Parses argv, runs one subcommand and writes its artifact to `output` (or
/// to `out`). Diagnostics go to `err`. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int execute(RunConfig cfg, std::ostream& out, std::ostream& err);

}  // namespace qdgeo::cli
