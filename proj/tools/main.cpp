// cornerscat: batch front end.  Each subcommand builds or loads a JSON run
// config, hands it to cornerscat::run and exits with its status.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cornerscat/run.hpp"

namespace {

using cornerscat::kExitConfig;

int load_config(const std::string& path, const std::string& mode, nlohmann::json& doc) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "config error: cannot read " << path << '\n';
    return kExitConfig;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    doc = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (!doc.is_object()) {
    std::cerr << "config error: top level must be an object\n";
    return kExitConfig;
  }
  if (!doc.contains("mode")) doc["mode"] = mode;
  if (doc["mode"] != mode) {
    std::cerr << "config error: config mode " << doc["mode"].dump() << " does not match subcommand " << mode << '\n';
    return kExitConfig;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic corner scattering: exact verification suites and far-field experiments"};
  app.require_subcommand(1);

  std::string output_root;
  bool no_cache = false;
  int jobs = 1;
  app.add_option("--output-root", output_root, std::string("Output root (default $") + cornerscat::kOutputRootEnv +
                                                   " or ./cornerscat-out)");
  app.add_flag("--no-cache", no_cache, "Ignore and do not write the solve cache");
  app.add_option("-j,--jobs", jobs, "Worker threads for frequency sweeps")->check(CLI::Range(1, 256));

  std::uint64_t seed = 1;
  int max_order = 16;
  int samples = 50;
  double lambda = 1, mu = 1;
  std::string config_path;

  auto* alg = app.add_subcommand("verify-algebra", "Exact symbol and B-matrix identities on random rational inputs");
  alg->add_option("--seed", seed, "RNG seed");
  alg->add_option("--config", config_path, "JSON config (overrides the flags)")->check(CLI::ExistingFile);

  auto* ind = app.add_subcommand("verify-induction", "Exact corner-jet vanishing certificates");
  ind->add_option("--max-order", max_order, "Highest jet order certified")->check(CLI::Range(0, 64));
  ind->add_option("--samples", samples, "Random (lambda, mu) pairs")->check(CLI::Range(1, 100000));
  ind->add_option("--seed", seed, "RNG seed");
  ind->add_option("--config", config_path, "JSON config (overrides the flags)")->check(CLI::ExistingFile);

  for (auto* s : {alg, ind}) {
    s->add_option("--lambda", lambda, "Lame lambda");
    s->add_option("--mu", mu, "Lame mu");
  }

  const char* file_modes[][2] = {{"solve", "Single Lippmann-Schwinger solve and far-field pattern"},
                                 {"farfield-sweep", "sigma_min/sigma_median of F over a frequency window"},
                                 {"itp-scan", "Interior transmission smallest-singular-value scan"},
                                 {"headline", "Rectangle vs disk juxtaposition with stability checks"}};
  for (const auto& m : file_modes)
    app.add_subcommand(m[0], m[1])->add_option("--config", config_path, "JSON config")->required()->check(
        CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  const std::string mode = app.get_subcommands().front()->get_name();
  nlohmann::json doc;
  if (!config_path.empty()) {
    if (int rc = load_config(config_path, mode, doc)) return rc;
  } else {
    doc = {{"mode", mode}, {"lambda", lambda}, {"mu", mu}, {"seed", seed}};
    if (mode == "verify-induction") {
      doc["max_order"] = max_order;
      doc["induction_samples"] = samples;
    }
  }

  cornerscat::RunOptions opts;
  opts.output_root = output_root;
  opts.use_cache = !no_cache;
  opts.jobs = jobs;
  opts.log = &std::cout;
  return cornerscat::run_config_text(doc.dump(), opts);
}
