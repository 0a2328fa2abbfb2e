#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qdgeo/cli.hpp"

namespace qdgeo::cli {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool empty() const { return columns.empty(); }
};

/// What a command produced. `results` and `residuals` become the JSON fields
/// of the same name; `table` is the CSV body (and results.table in JSON).
struct Outcome {
  int code = kSuccess;
  std::string message;
  Json results = Json::object();
  Json residuals = Json::object();
  Table table;
  /// Repeat results and residuals as trailing CSV comments.
  bool csv_trailer = true;
};

/// %.17g, with nan/inf spelled out.
std::string format_number(double v);

Json config_json(const RunConfig& cfg);
std::string render_json(const RunConfig& cfg, const Outcome& o);
/// Comment preamble with the resolved config, header row, data rows, then the
/// scalar results and residuals as trailing comments.
std::string render_csv(const RunConfig& cfg, const Outcome& o);

Outcome cmd_verify(const RunConfig& cfg);
Outcome cmd_simulate(const RunConfig& cfg);
Outcome cmd_curvature(const RunConfig& cfg);
Outcome cmd_transform(const RunConfig& cfg);

}  // namespace qdgeo::cli
