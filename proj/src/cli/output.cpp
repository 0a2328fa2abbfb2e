#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qdgeo::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json config_json(const RunConfig& cfg) {
  Json c;
  c["command"] = cfg.command;
  c["n"] = cfg.n;
  c["z"] = cfg.z;
  c["kappa2"] = cfg.kappa2;
  c["hamiltonian"] = cfg.hamiltonian;
  c["chart"] = cfg.chart;
  c["q"] = cfg.q;
  c["p"] = cfg.p;
  c["t_end"] = cfg.t_end;
  c["dt"] = cfg.dt;
  c["method"] = cfg.method;
  c["keep_every"] = cfg.keep_every;
  c["samples"] = cfg.samples;
  c["seed"] = cfg.seed;
  c["grid"] = cfg.grid;
  c["extent"] = cfg.extent;
  c["direction"] = cfg.direction;
  c["momentum"] = cfg.momentum;
  c["round_trip"] = cfg.round_trip;
  c["radial"] = cfg.radial;
  c["output"] = cfg.output;
  c["format"] = cfg.format;
  return c;
}

namespace {

Json cell_json(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_number(*d);
    return *d;
  }
  return std::get<std::string>(c);
}

std::string cell_csv(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_number(*d);
  return std::get<std::string>(c);
}

// Same number format as the table, so trailing comments round-trip too.
std::string scalar_text(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + scalar_text(v[i]);
    return s + "]";
  }
  return v.dump();
}

void flatten(const std::string& prefix, const Json& v, std::ostringstream& os) {
  if (v.is_object()) {
    for (const auto& [k, item] : v.items()) flatten(prefix.empty() ? k : prefix + "." + k, item, os);
    return;
  }
  os << "# " << prefix << " = " << scalar_text(v) << "\n";
}

}  // namespace

std::string render_json(const RunConfig& cfg, const Outcome& o) {
  Json doc;
  doc["config"] = config_json(cfg);
  Json results = o.results;
  if (!o.table.empty()) {
    Json t;
    t["columns"] = o.table.columns;
    Json rows = Json::array();
    for (const auto& row : o.table.rows) {
      Json r = Json::array();
      for (const auto& c : row) r.push_back(cell_json(c));
      rows.push_back(std::move(r));
    }
    t["rows"] = std::move(rows);
    results["table"] = std::move(t);
  }
  doc["results"] = std::move(results);
  doc["residuals"] = o.residuals;
  doc["version"] = kVersion;
  return doc.dump(2) + "\n";
}

std::string render_csv(const RunConfig& cfg, const Outcome& o) {
  std::ostringstream os;
  os << "# qdgeo " << kVersion << "\n";
  flatten("config", config_json(cfg), os);
  for (std::size_t i = 0; i < o.table.columns.size(); ++i) os << (i ? "," : "") << o.table.columns[i];
  if (!o.table.columns.empty()) os << "\n";
  for (const auto& row : o.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_csv(row[i]);
    os << "\n";
  }
  if (o.csv_trailer) {
    flatten("results", o.results, os);
    flatten("residuals", o.residuals, os);
  }
  return os.str();
}

}  // namespace qdgeo::cli
