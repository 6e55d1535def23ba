#pragma once

// Strict JSON run configuration.  Every violation is collected before the
// run starts; unknown keys are errors.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cornerscat/errors.hpp"
#include "cornerscat/headline.hpp"

namespace cornerscat {

enum class RunMode { VerifyAlgebra, VerifyInduction, Solve, FarfieldSweep, ItpScan, Headline };

std::string to_string(RunMode m);

struct GeometryConfig {
  ShapeKind kind = ShapeKind::Rectangle;
  double width = 0;
  double height = 0;
  double cut_width = 0;
  double cut_height = 0;
  double radius = 0;
};

struct RunConfig {
  RunMode mode = RunMode::VerifyAlgebra;
  double lambda = 1.0;
  double mu = 1.0;
  std::optional<double> rho0;
  std::optional<GeometryConfig> geometry;
  std::optional<double> omega;
  std::optional<std::pair<double, double>> omega_range;
  int samples = 40;             ///< sweep / scan points
  std::optional<int> cells;     ///< cells across the bounding box
  std::optional<double> h;      ///< alternatively, the cell size
  int directions = 32;
  SolverOptions solver;
  WaveKind incident_kind = WaveKind::P;
  double incident_angle = 0;
  int max_order = 16;
  int induction_samples = 50;
  int itp_nodes = 0;            ///< 0: cells + 1
  std::string output;           ///< directory below the output root
  std::uint64_t seed = 1;
  HeadlineConfig headline;
  nlohmann::json source;        ///< the parsed document, echoed into the manifest

  /// Cells across the bounding box from `cells` or `h`.
  int grid_cells() const;
  ScattererGrid scatterer() const;
  LameParameters params() const { return LameParameters(lambda, mu); }
};

/// Aggregated configuration failure: one message per violation.
class ConfigErrors : public ConfigError {
 public:
  explicit ConfigErrors(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const noexcept { return messages_; }

 private:
  std::vector<std::string> messages_;
};

/// Parses and validates; throws ConfigErrors listing every problem.
RunConfig parse_config(const std::string& text);
RunConfig parse_config(const nlohmann::json& doc);
inline RunConfig parse_config(const char* text) { return parse_config(std::string(text)); }

}  // namespace cornerscat
