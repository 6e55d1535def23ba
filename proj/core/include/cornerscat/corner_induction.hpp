#pragma once

// Jet-vanishing induction at a right-angled corner O (the origin, edges along
// the positive tau1 / tau2 axes).
//
// At derivative order n the unknowns are v[t][j] = Lambda1^j Lambda2^(n-j) W_t(O),
// t in {1, 2}, j = 0..n, with W1 = w1 - i w2, W2 = w1 + i w2 and
// Lambda1 = d_tau1 - i d_tau2, Lambda2 = d_tau1 + i d_tau2.  Two families of
// linear constraints act on them:
//   * boundary rows: once all lower orders vanish, w = 0 and Tw = 0 on both
//     edges kill d_tau1^p d_tau2^(n-p) w for p in {n, n-1, 1, 0};
//   * PDE rows: grad^(n-4) L^2 w(O) = 0, generated from the Lambda-form of L^2.
// An order is certified when the stacked system has full column rank 2(n+1),
// computed exactly over Q(i).

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "cornerscat/gaussian_rational.hpp"
#include "cornerscat/lame_algebra.hpp"
#include "cornerscat/report.hpp"

namespace cornerscat::induction {

enum class RowSource { Boundary, Pde, PrintedComparison };

std::string to_string(RowSource s);

struct ConstraintRow {
  RowSource source = RowSource::Boundary;
  std::string recipe;                     ///< how to regenerate the row, e.g. "t=1 p=3"
  std::vector<GaussianRational> coeffs;   ///< length 2(n+1)
};

/// Column of v[t][j] in a JetSystem of order n (t is 1 or 2).
std::size_t unknown_index(int n, int t, int j);

/// Coefficients of (Lambda1 + Lambda2)^p (Lambda1 - Lambda2)^(n-p) i^(n-p) / 2^n,
/// i.e. d_tau1^p d_tau2^(n-p) expressed on the monomials Lambda1^j Lambda2^(n-j).
std::vector<GaussianRational> tangential_in_lambda(int n, int p);

/// Boundary constraints at order n, placed in both t-blocks.  Order 0 is
/// w(O) = 0 itself; orders 1 and 2 force the whole jet; from order 3 on there
/// are exactly four rows per block.
std::vector<ConstraintRow> boundary_rows(int n);

/// Rows from grad^(n-4) L^2 w(O) = 0: for each prefix Lambda1^k Lambda2^(n-4-k),
/// k = 0..n-4, the two components of the Lambda-form in the W basis.  Empty for n < 4.
std::vector<ConstraintRow> pde_rows(int n, const mpq_class& a, const mpq_class& b);

struct JetSystem {
  int order = 0;
  std::vector<ConstraintRow> rows;

  std::size_t unknowns() const { return 2 * static_cast<std::size_t>(order + 1); }
  GRMatrix matrix() const;
};

JetSystem assemble_jet_system(int n, const mpq_class& a, const mpq_class& b);

struct RankReport {
  int order = 0;
  std::size_t boundary_rows = 0;
  std::size_t pde_rows = 0;
  std::size_t unknowns = 0;
  std::size_t rank = 0;
  std::string pivot_hash;  ///< SHA-256 of the elimination pivot trace
  std::vector<std::string> provenance;  ///< "boundary t=1 p=3", "pde k=0 W1", ...
  bool full_rank() const { return rank == unknowns; }
};

/// Rank of the order-n system for admissible (a, b): a > 0, b > 0, a != b.
/// Throws PreconditionError otherwise.
RankReport certify_order(int n, const mpq_class& a, const mpq_class& b);

/// Same computation without the admissibility guard, for degeneracy probes.
RankReport probe_order(int n, const mpq_class& a, const mpq_class& b);

/// d_tau1^p d_tau2^(n-p) -> Lambda-monomials, as an (n+1) x (n+1) matrix (row p).
GRMatrix tau_to_lambda_basis(int n);

struct ChainStep {
  int order = 0;                       ///< the n in chain_u0_and_L2(n)
  std::vector<std::string> conclusions;
  int licenses_pde_order = 0;          ///< n + 2
};

/// Propagates certified w-jets to u0, L u0 and L^2 w at order n - 2.  Requires
/// certificates for every order 0..n (ContractViolation otherwise).
ChainStep chain_u0_and_L2(int n, const std::vector<RankReport>& certified);

struct InductionCertificate {
  int max_order = 0;
  mpq_class lambda;
  mpq_class mu;
  std::vector<RankReport> orders;
  std::vector<ChainStep> chain;
  CheckReport guards;
  std::string assumption;
  bool passed = false;
};

/// Certifies orders 0..max_order in sequence.  PDE rows at order n are only used
/// once the chain step n - 2 has been recorded.
InductionCertificate run_induction(const algebra::RationalLame& lame, int max_order);

nlohmann::json proof_log(const InductionCertificate& cert);

/// At order 4 the boundary rows leave only Lambda1^2 Lambda2^2 W_t free (plus the
/// edge monomials it determines); adding the PDE rows forces it to zero.
CheckReport order4_reduction(const mpq_class& a, const mpq_class& b);

struct PrintedEntry {
  std::string label;
  GaussianRational printed;
  GaussianRational derived;
  bool match() const { return printed == derived; }
};

struct PrintedComparison {
  int order = 0;
  std::vector<PrintedEntry> entries;
  bool edges_determined = false;  ///< boundary rows express the 4 edge monomials via the middle ones
  bool certified = false;         ///< certify_order(order) at (a, b) = (9, 1) has full rank
  std::size_t mismatches() const;
};

/// Edge monomials {Lambda1^n, Lambda1^(n-1) Lambda2, Lambda1 Lambda2^(n-1), Lambda2^n}
/// as combinations of the middle monomials, derived from boundary_rows.
/// Result is 4 x (n+1) with nonzero entries only in columns 2..n-2.  n >= 3.
GRMatrix edge_normal_form(int n);

/// Entrywise diff of the printed corner systems at orders 4, 5, 6 (both the
/// literal displays and the general even/odd formulas) against edge_normal_form.
PrintedComparison compare_printed_systems(int n);

nlohmann::json to_json(const PrintedComparison& c);

}  // namespace cornerscat::induction
