#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cornerscat/artifacts.hpp"
#include "cornerscat/run.hpp"

using namespace cornerscat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("cornerscat-test-" + name);
  fs::remove_all(d);
  return d;
}

const char* kSolve = R"({"mode": "solve", "lambda": 1, "mu": 1, "rho0": 2,
  "geometry": {"kind": "disk", "radius": 1}, "grid": {"cells": 12}, "omega": 1.2, "directions": 8,
  "solver": {"tol": 1e-10}})";

}  // namespace

TEST(Artifacts, CsvNumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(csv_number(v)), v);
  CsvTable t({"a", "b"});
  t.add_row({"1", "x,y"});
  EXPECT_EQ(t.str(), "a,b\n1,\"x,y\"\n");
  EXPECT_ANY_THROW(t.add_row({"1"}));
}

TEST(Artifacts, MatrixCacheRoundTrip) {
  const fs::path d = fresh_dir("cache");
  MatrixCache cache(d);
  const nlohmann::json key{{"k", 1}};
  EXPECT_FALSE(cache.load(key));
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(3, 4);
  cache.store(key, m);
  const auto back = cache.load(key);
  ASSERT_TRUE(back);
  EXPECT_EQ(*back, m);
  EXPECT_FALSE(cache.load({{"k", 2}}));
}

TEST(Artifacts, MalformedConfigWritesNothing) {
  const fs::path d = fresh_dir("malformed");
  RunOptions o;
  o.output_root = d;
  EXPECT_EQ(run_config_text("{\"mode\": \"solve\",", o), kExitConfig);
  EXPECT_EQ(run_config_text(R"({"mode": "solve", "mu": -1})", o), kExitConfig);
  EXPECT_FALSE(fs::exists(d));
}

TEST(Artifacts, ManifestListsEveryFile) {
  const fs::path d = fresh_dir("manifest");
  RunOptions o;
  o.output_root = d;
  ASSERT_EQ(run_config_text(R"({"mode": "verify-algebra", "lambda": 1, "mu": 1, "seed": 4})", o), kExitOk);
  const auto m = nlohmann::json::parse(slurp(d / "verify-algebra" / "manifest.json"));
  std::set<std::string> listed(m["files"].begin(), m["files"].end());
  for (const auto& e : fs::directory_iterator(d / "verify-algebra")) {
    if (e.path().filename() != "manifest.json") {
      EXPECT_TRUE(listed.count(e.path().filename().string()));
    }
  }
  EXPECT_EQ(m["exit_code"], 0);
  EXPECT_FALSE(m["partial"].get<bool>());
  EXPECT_EQ(m["config_hash"].get<std::string>().size(), 64u);
}

TEST(Artifacts, RerunIsByteIdentical) {
  const fs::path a = fresh_dir("rerun-a"), b = fresh_dir("rerun-b");
  for (const auto& root : {a, b}) {
    RunOptions o;
    o.output_root = root;
    o.use_cache = false;
    ASSERT_EQ(run_config_text(kSolve, o), kExitOk);
    ASSERT_EQ(run_config_text(R"({"mode": "verify-induction", "lambda": 1, "mu": 1, "max_order": 8,
      "induction_samples": 3})", o), kExitOk);
  }
  EXPECT_EQ(slurp(a / "solve" / "farfield.csv"), slurp(b / "solve" / "farfield.csv"));
  EXPECT_EQ(slurp(a / "verify-induction" / "proof_log.json"), slurp(b / "verify-induction" / "proof_log.json"));
  EXPECT_EQ(slurp(a / "verify-induction" / "printed_diff.csv"), slurp(b / "verify-induction" / "printed_diff.csv"));
}

TEST(Artifacts, SolveCacheIsReused) {
  const fs::path d = fresh_dir("solve-cache");
  RunOptions o;
  o.output_root = d;
  ASSERT_EQ(run_config_text(kSolve, o), kExitOk);
  const std::string first = slurp(d / "solve" / "farfield.csv");
  EXPECT_FALSE(nlohmann::json::parse(slurp(d / "solve" / "solve.json"))["cached"].get<bool>());
  ASSERT_EQ(run_config_text(kSolve, o), kExitOk);
  EXPECT_TRUE(nlohmann::json::parse(slurp(d / "solve" / "solve.json"))["cached"].get<bool>());
  EXPECT_EQ(slurp(d / "solve" / "farfield.csv"), first);
  EXPECT_EQ(std::distance(fs::directory_iterator(d / "cache"), fs::directory_iterator{}), 2);
}

TEST(Artifacts, SolverFailureMapsToExitThree) {
  const fs::path d = fresh_dir("solver-fail");
  RunOptions o;
  o.output_root = d;
  o.use_cache = false;
  const int code = run_config_text(R"({"mode": "solve", "lambda": 1, "mu": 1, "rho0": 50,
    "geometry": {"kind": "disk", "radius": 3}, "grid": {"cells": 40}, "omega": 1,
    "solver": {"tol": 1e-14, "max_iterations": 3, "restart": 3, "dense_threshold": 0}})", o);
  EXPECT_EQ(code, kExitSolver);
  const auto m = nlohmann::json::parse(slurp(d / "solve" / "manifest.json"));
  EXPECT_TRUE(m["partial"].get<bool>());
  EXPECT_EQ(m["exit_code"], kExitSolver);
}
