#include <gtest/gtest.h>

#include <random>

#include "cornerscat/corner_induction.hpp"
#include "cornerscat/errors.hpp"
#include "cornerscat/verification.hpp"

using namespace cornerscat;
using namespace cornerscat::induction;

namespace {

using GR = GaussianRational;

GR power(const GR& z, int e) {
  GR r = 1;
  for (int k = 0; k < e; ++k) r *= z;
  return r;
}

}  // namespace

TEST(CornerInduction, TangentialExpansionMatchesDirectEvaluation) {
  // d1 = (L1 + L2)/2, d2 = i (L1 - L2)/2 evaluated at a generic point.
  const GR l1(mpq_class(3, 7), mpq_class(-2, 5)), l2(mpq_class(-5, 3), mpq_class(1, 4));
  const GR d1 = (l1 + l2) / GR(2), d2 = GR::i() * (l1 - l2) / GR(2);
  for (int n = 0; n <= 8; ++n)
    for (int p = 0; p <= n; ++p) {
      const auto c = tangential_in_lambda(n, p);
      ASSERT_EQ(c.size(), static_cast<std::size_t>(n + 1));
      GR sum = 0;
      for (int j = 0; j <= n; ++j) sum += c[j] * power(l1, j) * power(l2, n - j);
      EXPECT_EQ(sum, power(d1, p) * power(d2, n - p)) << "n=" << n << " p=" << p;
    }
}

TEST(CornerInduction, RowCounts) {
  EXPECT_TRUE(pde_rows(3, 9, 1).empty());
  EXPECT_EQ(pde_rows(6, 9, 1).size(), 2u * 3u);
  EXPECT_EQ(boundary_rows(5).size(), 8u);
  for (const auto& r : assemble_jet_system(7, 9, 1).rows) EXPECT_EQ(r.coeffs.size(), 16u);
}

TEST(CornerInduction, FullRankForAdmissiblePairs) {
  std::mt19937_64 rng(21);
  for (int s = 0; s < 5; ++s) {
    const auto lame = random_lame(rng);
    for (int n = 0; n <= 12; ++n) {
      const RankReport r = certify_order(n, lame.a(), lame.b());
      EXPECT_TRUE(r.full_rank()) << "n=" << n << " rank " << r.rank << "/" << r.unknowns;
    }
  }
}

TEST(CornerInduction, GuardRejectsDegenerateCoefficients) {
  EXPECT_THROW(certify_order(5, 4, 4), PreconditionError);
  EXPECT_THROW(certify_order(5, 4, 0), PreconditionError);
  EXPECT_NO_THROW(probe_order(5, 4, 4));
}

TEST(CornerInduction, ProbesFindDeficiencies) {
  EXPECT_FALSE(probe_order(4, 1, -1).full_rank());
  EXPECT_FALSE(probe_order(5, 1, 0).full_rank());
  EXPECT_TRUE(probe_order(3, 1, 0).full_rank());
}

TEST(CornerInduction, CertificateAndChain) {
  const InductionCertificate cert = run_induction(algebra::RationalLame(mpq_class(1, 2), 1), 10);
  EXPECT_TRUE(cert.passed);
  EXPECT_EQ(cert.orders.size(), 11u);
  ASSERT_FALSE(cert.chain.empty());
  for (const auto& step : cert.chain) EXPECT_EQ(step.licenses_pde_order, step.order + 2);
  const auto log = proof_log(cert);
  EXPECT_TRUE(log.contains("orders"));
  EXPECT_THROW(chain_u0_and_L2(5, {}), ContractViolation);
}

TEST(CornerInduction, PivotHashIsDeterministic) {
  EXPECT_EQ(certify_order(9, 9, 1).pivot_hash, certify_order(9, 9, 1).pivot_hash);
}

TEST(CornerInduction, Order4Reduction) { EXPECT_TRUE(order4_reduction(9, 1).passed()); }

TEST(CornerInduction, PrintedSystemsDiffIsCompleteAndCertified) {
  for (int n : {4, 5, 6}) {
    const PrintedComparison c = compare_printed_systems(n);
    EXPECT_FALSE(c.entries.empty());
    EXPECT_TRUE(c.certified);
    EXPECT_TRUE(c.edges_determined);
    const GRMatrix e = edge_normal_form(n);
    EXPECT_EQ(e.rows(), 4u);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t col : {std::size_t{0}, std::size_t{1}, std::size_t(n - 1), std::size_t(n)})
        EXPECT_TRUE(e(r, col).is_zero());
    EXPECT_TRUE(to_json(c).contains("entries"));
  }
}

TEST(CornerInduction, SuiteCertifiesAllSamples) {
  InductionSuiteOptions o;
  o.samples = 10;
  o.max_order = 12;
  const InductionSuite s = verify_induction(o);
  for (const auto& c : s.report.checks) {
    if (c.name.rfind("degeneracy probe a = b", 0) != 0) {
      EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    }
  }
}
