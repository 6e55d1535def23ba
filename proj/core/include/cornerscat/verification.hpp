#pragma once

// Randomized verification suites shared by the CLI and the acceptance runner.
// All randomness flows from a single seed through std::mt19937_64.

#include <cstdint>
#include <random>

#include <nlohmann/json.hpp>

#include "cornerscat/lame_algebra.hpp"
#include "cornerscat/report.hpp"

namespace cornerscat {

/// Random rational p/q with |p| <= num_bound, 1 <= q <= den_bound.
mpq_class random_rational(std::mt19937_64& rng, int num_bound = 24, int den_bound = 12);
/// Random admissible Lamé pair (mu > 0, lambda + mu > 0).
algebra::RationalLame random_lame(std::mt19937_64& rng);

struct AlgebraSuiteOptions {
  std::uint64_t seed = 1;
  int determinant_instances = 500;
  int symbol_points = 200;
};

/// Rank-one determinant lemma, symbol diagonalization, B-matrix identities and
/// both L^2 factorizations, all in exact arithmetic.  One check per family.
CheckReport verify_algebra(const AlgebraSuiteOptions& opts = {});

struct InductionSuiteOptions {
  std::uint64_t seed = 1;
  int samples = 50;
  int max_order = 16;
  int probe_max_order = 6;
};

struct InductionSuite {
  CheckReport report;
  nlohmann::json log;  ///< proof log of the first sample plus the degeneracy probe table
};

/// Full-rank certificates for random admissible pairs, degeneracy probes on
/// a = b (plus a = -b and b = 0), and the order-4 PDE relations.
InductionSuite verify_induction(const InductionSuiteOptions& opts = {});

/// Fields vanishing on random lines: both alternative traction forms and the
/// normal-derivative reconstruction agree with the traction to `tol`, and the
/// Günter derivative vanishes.
CheckReport verify_vanishing_traction(int fields = 100, std::uint64_t seed = 1, double tol = 1e-12);

}  // namespace cornerscat
