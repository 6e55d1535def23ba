#pragma once

// Dispatch of a validated RunConfig to its module, artifact writing and exit
// status mapping.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "cornerscat/config.hpp"

namespace cornerscat {

enum ExitCode : int { kExitOk = 0, kExitPropertyFailed = 1, kExitConfig = 2, kExitSolver = 3 };

/// Environment variable naming the directory under which run outputs go.
inline constexpr const char* kOutputRootEnv = "CORNERSCAT_OUTPUT_ROOT";

struct RunOptions {
  std::filesystem::path output_root;  ///< empty: $CORNERSCAT_OUTPUT_ROOT, else "cornerscat-out"
  bool use_cache = true;              ///< reuse solve results from <root>/cache, keyed by config hash
  int jobs = 1;                       ///< worker threads for frequency sweeps
  std::ostream* log = nullptr;        ///< progress and summary lines
};

/// Output directory for a config: <root>/<config.output or mode>.
std::filesystem::path output_dir(const RunConfig& cfg, const RunOptions& opts);

/// Runs the configured pipeline.  Returns an ExitCode; never throws for
/// module errors (they map to exit codes and are flagged in the manifest).
int run(const RunConfig& cfg, const RunOptions& opts = {});

/// Parses `text` and runs it; malformed or invalid configs give kExitConfig
/// without creating any artifact.
int run_config_text(const std::string& text, const RunOptions& opts = {});

}  // namespace cornerscat
