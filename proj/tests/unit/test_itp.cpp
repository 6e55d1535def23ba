#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "cornerscat/errors.hpp"
#include "cornerscat/itp.hpp"

using namespace cornerscat;

namespace {

ShapeDescriptor unit_square() {
  ShapeDescriptor s;
  s.kind = ShapeKind::Rectangle;
  s.width = s.height = 1.0;
  return s;
}

}  // namespace

TEST(Itp, SquareHasDeepDipThatSurvivesRefinement) {
  const LameParameters p(1.0, 1.0);
  ItpOptions o;
  o.scan_points = 30;
  const ItpScan coarse = itp_scan(unit_square(), 17, 4.0, p, 5.0, 8.0, o);
  ASSERT_FALSE(coarse.dips.empty());
  const ItpDip& dip = coarse.dips.front();
  RecordProperty("dip_omega", std::to_string(dip.omega));
  RecordProperty("dip_depth", std::to_string(dip.depth_ratio));
  EXPECT_LE(dip.depth_ratio, 1e-2);

  ItpOptions local;
  local.scan_points = 9;
  local.max_refine = 2;
  const ItpScan fine = itp_scan(unit_square(), 33, 4.0, p, dip.omega * 0.95, dip.omega * 1.05, local);
  ASSERT_FALSE(fine.dips.empty());
  double best = 1;
  for (const auto& d : fine.dips) best = std::min(best, std::abs(d.omega - dip.omega) / dip.omega);
  RecordProperty("h2_shift", std::to_string(best));
  EXPECT_LE(best, 0.05);
}

TEST(Itp, EmptyLowWindow) {
  ItpOptions o;
  o.scan_points = 12;
  const ItpScan s = itp_scan(unit_square(), 17, 4.0, LameParameters(1, 1), 0.5, 1.5, o);
  EXPECT_TRUE(s.dips.empty());
  EXPECT_EQ(s.samples.size(), 12u);
}

TEST(Itp, RefusesUnderResolvedGrid) {
  EXPECT_THROW(itp_scan(unit_square(), 9, 4.0, LameParameters(1, 1), 5.0, 8.0), PreconditionError);
}

TEST(Itp, SystemShape) {
  const ItpDiscretization d(unit_square(), 17, LameParameters(1, 1), 4.0);
  EXPECT_GE(d.rows(), d.cols());
  EXPECT_EQ(d.interior_nodes(), 15u * 15u);
  EXPECT_GT(d.sigma_min(5.0), 0.0);
}

TEST(Itp, DiskDeterminantRootsChangeSign) {
  const LameParameters p(-0.9, 1.0);
  const auto roots = disk_transmission_eigenvalues(p, 0.5, 18.8, 0.8, 1.0, 12);
  ASSERT_FALSE(roots.empty());
  EXPECT_TRUE(std::is_sorted(roots.begin(), roots.end(),
                             [](const DiskItpRoot& a, const DiskItpRoot& b) { return a.omega < b.omega; }));
  for (const auto& r : roots) {
    const double lo = disk_itp_determinant(p, 0.5, 18.8, r.order, r.omega * (1 - 1e-7));
    const double hi = disk_itp_determinant(p, 0.5, 18.8, r.order, r.omega * (1 + 1e-7));
    EXPECT_LT(lo * hi, 0.0) << "order " << r.order << " omega " << r.omega;
  }
}
