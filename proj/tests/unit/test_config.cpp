#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "cornerscat/config.hpp"

using namespace cornerscat;

namespace {

std::vector<std::string> errors_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigErrors& e) {
    return e.messages();
  }
  return {};
}

bool mentions(const std::vector<std::string>& msgs, const std::string& needle) {
  return std::any_of(msgs.begin(), msgs.end(), [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

}  // namespace

TEST(Config, MinimalVerifyAlgebra) {
  const RunConfig c = parse_config(R"({"mode": "verify-algebra", "lambda": 1, "mu": 1})");
  EXPECT_EQ(c.mode, RunMode::VerifyAlgebra);
  EXPECT_EQ(to_string(c.mode), "verify-algebra");
}

TEST(Config, RhoOneRejected) {
  const auto e = errors_of(R"({"mode": "solve", "lambda": 1, "mu": 1, "rho0": 1,
    "geometry": {"kind": "disk", "radius": 1}, "grid": {"cells": 16}, "omega": 1})");
  EXPECT_TRUE(mentions(e, "different from one"));
}

TEST(Config, NegativeMuRejected) {
  const auto e = errors_of(R"({"mode": "verify-algebra", "lambda": 1, "mu": -1})");
  EXPECT_TRUE(mentions(e, "mu > 0"));
}

TEST(Config, EveryViolationIsReported) {
  const auto e = errors_of(R"({"mode": "solve", "lambda": -3, "mu": 1, "rho0": 1, "bogus": 2})");
  EXPECT_TRUE(mentions(e, "lambda + mu > 0"));
  EXPECT_TRUE(mentions(e, "different from one"));
  EXPECT_TRUE(mentions(e, "bogus"));
  EXPECT_TRUE(mentions(e, "geometry"));
  EXPECT_TRUE(mentions(e, "omega"));
  EXPECT_GE(e.size(), 5u);
}

TEST(Config, UnknownNestedKeyRejected) {
  const auto e = errors_of(R"({"mode": "solve", "lambda": 1, "mu": 1, "rho0": 2,
    "geometry": {"kind": "disk", "radius": 1, "colour": "red"}, "grid": {"cells": 16}, "omega": 1})");
  EXPECT_TRUE(mentions(e, "colour"));
}

TEST(Config, MalformedDocument) {
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config("[1, 2]"), ConfigError);
}

TEST(Config, SolveGeometryAndGrid) {
  const RunConfig c = parse_config(R"({"mode": "solve", "lambda": 1, "mu": 1, "rho0": 2,
    "geometry": {"kind": "rectangle", "width": 2, "height": 1}, "grid": {"h": 0.125}, "omega": 1.5,
    "directions": 16, "solver": {"tol": 1e-9}})");
  EXPECT_EQ(c.grid_cells(), 16);
  EXPECT_EQ(c.scatterer().shape().kind, ShapeKind::Rectangle);
  EXPECT_DOUBLE_EQ(*c.omega, 1.5);
  EXPECT_DOUBLE_EQ(c.solver.tol, 1e-9);
}

TEST(Config, HeadlineInheritsPhysics) {
  const RunConfig c = parse_config(R"({"mode": "headline", "lambda": -0.5, "mu": 1, "rho0": 3,
    "omega_range": [0.9, 1.1], "headline": {"cells": 24, "stability": false}})");
  EXPECT_DOUBLE_EQ(c.headline.lambda, -0.5);
  EXPECT_DOUBLE_EQ(c.headline.rho0, 3);
  EXPECT_DOUBLE_EQ(c.headline.omega_lo, 0.9);
  EXPECT_EQ(c.headline.cells, 24);
  EXPECT_FALSE(c.headline.stability);
}
