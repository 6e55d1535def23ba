#include "cornerscat/config.hpp"

#include <cmath>
#include <set>

namespace cornerscat {

std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::VerifyAlgebra: return "verify-algebra";
    case RunMode::VerifyInduction: return "verify-induction";
    case RunMode::Solve: return "solve";
    case RunMode::FarfieldSweep: return "farfield-sweep";
    case RunMode::ItpScan: return "itp-scan";
    case RunMode::Headline: return "headline";
  }
  return "unknown";
}

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& m : v) s += (s.empty() ? "" : "; ") + m;
  return s;
}

class Reader {
 public:
  std::vector<std::string> errors;

  void keys(const nlohmann::json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (const auto& [k, v] : obj.items())
      if (!allowed.count(k)) errors.push_back("unknown key '" + where + k + "'");
  }

  template <class T>
  std::optional<T> get(const nlohmann::json& obj, const std::string& key, const std::string& where = "") {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw std::invalid_argument("not a number");
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_integer()) throw std::invalid_argument("not an integer");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw std::invalid_argument("not a boolean");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw std::invalid_argument("not a string");
      }
      return v.get<T>();
    } catch (const std::exception&) {
      errors.push_back("'" + where + key + "' has the wrong type");
      return std::nullopt;
    }
  }

  const nlohmann::json* object(const nlohmann::json& obj, const std::string& key) {
    if (!obj.contains(key)) return nullptr;
    if (!obj.at(key).is_object()) {
      errors.push_back("'" + key + "' must be an object");
      return nullptr;
    }
    return &obj.at(key);
  }

  void require(bool ok, const std::string& msg) {
    if (!ok) errors.push_back(msg);
  }
};

}  // namespace

ConfigErrors::ConfigErrors(std::vector<std::string> messages)
    : ConfigError("invalid configuration: " + join(messages)), messages_(std::move(messages)) {}

int RunConfig::grid_cells() const {
  if (cells) return *cells;
  if (h && geometry) {
    const double extent = geometry->kind == ShapeKind::Disk ? 2 * geometry->radius : geometry->width;
    return static_cast<int>(std::lround(extent / *h));
  }
  throw ConfigError("grid resolution missing");
}

ScattererGrid RunConfig::scatterer() const {
  if (!geometry || !rho0) throw ConfigError("geometry and rho0 are required");
  const auto& g = *geometry;
  switch (g.kind) {
    case ShapeKind::Rectangle: return ScattererGrid::rectangle(g.width, g.height, grid_cells(), *rho0);
    case ShapeKind::LShape:
      return ScattererGrid::l_shape(g.width, g.height, g.cut_width, g.cut_height, grid_cells(), *rho0);
    case ShapeKind::Disk: return ScattererGrid::disk(g.radius, grid_cells(), *rho0);
    case ShapeKind::Polygon: break;
  }
  throw ConfigError("unsupported geometry kind");
}

RunConfig parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigErrors({std::string("malformed JSON: ") + e.what()});
  }
  return parse_config(doc);
}

RunConfig parse_config(const nlohmann::json& doc) {
  Reader r;
  RunConfig c;
  if (!doc.is_object()) throw ConfigErrors({"configuration must be a JSON object"});
  c.source = doc;
  r.keys(doc, "", {"mode", "lambda", "mu", "rho0", "geometry", "omega", "omega_range", "samples", "grid", "directions",
                   "solver", "incident", "max_order", "induction_samples", "itp", "output", "seed", "headline"});

  const auto mode = r.get<std::string>(doc, "mode");
  if (!mode) {
    r.errors.push_back("'mode' is required");
  } else {
    const std::pair<const char*, RunMode> modes[] = {
        {"verify-algebra", RunMode::VerifyAlgebra}, {"verify-induction", RunMode::VerifyInduction},
        {"solve", RunMode::Solve},                  {"farfield-sweep", RunMode::FarfieldSweep},
        {"itp-scan", RunMode::ItpScan},             {"headline", RunMode::Headline}};
    bool found = false;
    for (const auto& [name, m] : modes)
      if (*mode == name) {
        c.mode = m;
        found = true;
      }
    if (!found) r.errors.push_back("unknown mode '" + *mode + "'");
  }

  if (auto v = r.get<double>(doc, "lambda")) c.lambda = *v;
  if (auto v = r.get<double>(doc, "mu")) c.mu = *v;
  r.require(c.mu > 0, "mu must satisfy mu > 0 (got " + std::to_string(c.mu) + ")");
  r.require(c.lambda + c.mu > 0, "lambda must satisfy lambda + mu > 0");
  c.rho0 = r.get<double>(doc, "rho0");
  if (c.rho0) {
    r.require(*c.rho0 > 0, "rho0 must be positive");
    r.require(*c.rho0 != 1.0, "rho0 must be a constant different from one");
  }

  if (const auto* g = r.object(doc, "geometry")) {
    r.keys(*g, "geometry.", {"kind", "width", "height", "cut_width", "cut_height", "radius"});
    GeometryConfig geo;
    const auto kind = r.get<std::string>(*g, "kind", "geometry.");
    auto positive = [&](const char* key, double& out) {
      const auto v = r.get<double>(*g, key, "geometry.");
      if (!v || !(*v > 0)) r.errors.push_back(std::string("geometry.") + key + " must be a positive number");
      else out = *v;
    };
    if (!kind) {
      r.errors.push_back("geometry.kind is required");
    } else if (*kind == "rectangle") {
      geo.kind = ShapeKind::Rectangle;
      positive("width", geo.width);
      positive("height", geo.height);
    } else if (*kind == "l-shape") {
      geo.kind = ShapeKind::LShape;
      positive("width", geo.width);
      positive("height", geo.height);
      positive("cut_width", geo.cut_width);
      positive("cut_height", geo.cut_height);
      r.require(geo.cut_width < geo.width && geo.cut_height < geo.height, "l-shape cut must be smaller than the box");
    } else if (*kind == "disk") {
      geo.kind = ShapeKind::Disk;
      positive("radius", geo.radius);
    } else {
      r.errors.push_back("geometry.kind must be rectangle, l-shape or disk");
    }
    c.geometry = geo;
  }

  c.omega = r.get<double>(doc, "omega");
  if (c.omega) r.require(*c.omega > 0, "omega must be positive");
  if (doc.contains("omega_range")) {
    const auto& v = doc.at("omega_range");
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      c.omega_range = {v[0].get<double>(), v[1].get<double>()};
      r.require(c.omega_range->first > 0 && c.omega_range->second > c.omega_range->first,
                "omega_range must satisfy 0 < lo < hi");
    } else {
      r.errors.push_back("omega_range must be [lo, hi]");
    }
  }
  if (auto v = r.get<int>(doc, "samples")) c.samples = *v;
  if (const auto* g = r.object(doc, "grid")) {
    r.keys(*g, "grid.", {"cells", "h"});
    c.cells = r.get<int>(*g, "cells", "grid.");
    c.h = r.get<double>(*g, "h", "grid.");
    r.require(!(c.cells && c.h), "grid: give either cells or h, not both");
    if (c.cells) r.require(*c.cells >= 4, "grid.cells must be at least 4");
    if (c.h) r.require(*c.h > 0, "grid.h must be positive");
  }
  if (auto v = r.get<int>(doc, "directions")) c.directions = *v;
  if (const auto* s = r.object(doc, "solver")) {
    r.keys(*s, "solver.", {"tol", "restart", "max_iterations", "dense_threshold"});
    if (auto v = r.get<double>(*s, "tol", "solver.")) c.solver.tol = *v;
    if (auto v = r.get<int>(*s, "restart", "solver.")) c.solver.restart = *v;
    if (auto v = r.get<int>(*s, "max_iterations", "solver.")) c.solver.max_iterations = *v;
    if (auto v = r.get<int>(*s, "dense_threshold", "solver.")) c.solver.dense_threshold = static_cast<std::size_t>(*v);
    r.require(c.solver.tol > 0 && c.solver.tol < 1, "solver.tol must lie in (0, 1)");
    r.require(c.solver.restart >= 1, "solver.restart must be positive");
    r.require(c.solver.max_iterations >= 1, "solver.max_iterations must be positive");
  }
  if (const auto* s = r.object(doc, "incident")) {
    r.keys(*s, "incident.", {"kind", "angle"});
    if (auto v = r.get<std::string>(*s, "kind", "incident.")) {
      if (*v == "P") c.incident_kind = WaveKind::P;
      else if (*v == "S") c.incident_kind = WaveKind::S;
      else r.errors.push_back("incident.kind must be P or S");
    }
    if (auto v = r.get<double>(*s, "angle", "incident.")) c.incident_angle = *v;
  }
  if (auto v = r.get<int>(doc, "max_order")) c.max_order = *v;
  if (auto v = r.get<int>(doc, "induction_samples")) c.induction_samples = *v;
  r.require(c.max_order >= 0, "max_order must be non-negative");
  r.require(c.induction_samples >= 1, "induction_samples must be positive");
  if (const auto* s = r.object(doc, "itp")) {
    r.keys(*s, "itp.", {"nodes"});
    if (auto v = r.get<int>(*s, "nodes", "itp.")) c.itp_nodes = *v;
  }
  if (auto v = r.get<std::string>(doc, "output")) c.output = *v;
  if (doc.contains("seed")) {
    if (doc.at("seed").is_number_unsigned() || (doc.at("seed").is_number_integer() && doc.at("seed").get<long long>() >= 0))
      c.seed = doc.at("seed").get<std::uint64_t>();
    else r.errors.push_back("'seed' must be a non-negative integer");
  }
  if (const auto* s = r.object(doc, "headline")) {
    r.keys(*s, "headline.", {"size", "aspect", "cells", "sweep_points", "itp_points", "rect_floor", "disk_floor",
                             "itp_dip_depth", "stability", "brent_evaluations"});
    auto& h = c.headline;
    if (auto v = r.get<double>(*s, "size", "headline.")) h.size = *v;
    if (auto v = r.get<double>(*s, "aspect", "headline.")) h.aspect = *v;
    if (auto v = r.get<int>(*s, "cells", "headline.")) h.cells = *v;
    if (auto v = r.get<int>(*s, "sweep_points", "headline.")) h.sweep_points = *v;
    if (auto v = r.get<int>(*s, "itp_points", "headline.")) h.itp_points = *v;
    if (auto v = r.get<double>(*s, "rect_floor", "headline.")) h.rect_floor = *v;
    if (auto v = r.get<double>(*s, "disk_floor", "headline.")) h.disk_floor = *v;
    if (auto v = r.get<double>(*s, "itp_dip_depth", "headline.")) h.itp_dip_depth = *v;
    if (auto v = r.get<bool>(*s, "stability", "headline.")) h.stability = *v;
    if (auto v = r.get<int>(*s, "brent_evaluations", "headline.")) h.brent_evaluations = *v;
    r.require(h.size > 0 && h.aspect > 0 && h.cells >= 8, "headline size/aspect/cells out of range");
  }

  // Mode-specific requirements.
  if (mode) {
    const bool field = c.mode == RunMode::Solve || c.mode == RunMode::FarfieldSweep || c.mode == RunMode::ItpScan;
    if (field) {
      r.require(c.rho0.has_value(), to_string(c.mode) + " requires rho0");
      r.require(c.geometry.has_value(), to_string(c.mode) + " requires geometry");
      r.require(c.cells.has_value() || c.h.has_value(), to_string(c.mode) + " requires grid.cells or grid.h");
    }
    if (c.mode == RunMode::Solve) r.require(c.omega.has_value(), "solve requires omega");
    if (c.mode == RunMode::FarfieldSweep || c.mode == RunMode::ItpScan)
      r.require(c.omega_range.has_value(), to_string(c.mode) + " requires omega_range");
    if (c.mode == RunMode::FarfieldSweep) {
      r.require(c.samples >= 20, "farfield-sweep needs samples >= 20");
      r.require(c.directions >= 16 && c.directions % 2 == 0, "directions must be even and at least 16");
    }
    if (c.mode == RunMode::Solve) r.require(c.directions >= 1, "directions must be positive");
    if (c.mode == RunMode::ItpScan) r.require(c.samples >= 3, "itp-scan needs samples >= 3");
    if (c.mode == RunMode::Headline) {
      auto& h = c.headline;
      h.lambda = c.lambda;
      h.mu = c.mu;
      if (c.rho0) h.rho0 = *c.rho0;
      if (c.omega_range) {
        h.omega_lo = c.omega_range->first;
        h.omega_hi = c.omega_range->second;
      }
      if (doc.contains("directions")) h.directions = c.directions;
      if (doc.contains("solver")) h.solver = c.solver;
    }
  }
  if (!r.errors.empty()) throw ConfigErrors(r.errors);
  return c;
}

}  // namespace cornerscat
