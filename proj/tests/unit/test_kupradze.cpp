#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cornerscat/errors.hpp"
#include "cornerscat/kupradze.hpp"
#include "oracles.hpp"

using namespace cornerscat;

namespace {

constexpr double kPi = 3.14159265358979323846;

using oracle::navier_residual;

}  // namespace

TEST(Kupradze, NavierResidualAtRandomPairs) {
  const LameParameters params(1.0, 1.0);
  const double omega = 2.0;
  const KupradzeKernel K(params, omega);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> pos(-2, 2), dist(0.5, 3.0), ang(0, 2 * kPi);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const Vec2 y(pos(rng), pos(rng));
    const double r = dist(rng), t = ang(rng);
    const Vec2 x = y + r * Vec2(std::cos(t), std::sin(t));
    for (int c = 0; c < 2; ++c) {
      const double res = navier_residual(K, x, y, c, 5e-3);
      worst = std::max(worst, res);
      EXPECT_LT(res, 1e-5) << "pair " << i << " column " << c;
    }
  }
  RecordProperty("worst_relative_residual", std::to_string(worst));
}

TEST(Kupradze, ReciprocitySymmetry) {
  const KupradzeKernel K(LameParameters(2.5, 0.7), 1.3);
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> pos(-3, 3);
  for (int i = 0; i < 50; ++i) {
    const Vec2 x(pos(rng), pos(rng)), y(pos(rng), pos(rng));
    const CMat2 a = K(x, y), b = K(y, x).transpose();
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12 * a.cwiseAbs().maxCoeff());
    EXPECT_LT((a - a.transpose()).cwiseAbs().maxCoeff(), 1e-12 * a.cwiseAbs().maxCoeff());
  }
}

TEST(Kupradze, SourcePointIsRejected) {
  const KupradzeKernel K(LameParameters(1, 1), 1);
  EXPECT_THROW(K.at(Vec2::Zero()), DomainError);
}

TEST(Kupradze, FarFieldConstantsStableAndCalibrated) {
  const LameParameters params(1.0, 1.0);
  for (double omega : {0.5, 1.0, 3.0}) {
    const FarFieldConstants closed = farfield_constants(params, omega);
    const FarFieldConstants c200 = calibrate_farfield_constants(params, omega, 200);
    const FarFieldConstants c400 = calibrate_farfield_constants(params, omega, 400);
    EXPECT_LT(std::abs(c200.c_p - c400.c_p) / std::abs(c400.c_p), 1e-3);
    EXPECT_LT(std::abs(c200.c_s - c400.c_s) / std::abs(c400.c_s), 1e-3);
    EXPECT_LT(std::abs(c400.c_p - closed.c_p) / std::abs(closed.c_p), 1e-3);
    EXPECT_LT(std::abs(c400.c_s - closed.c_s) / std::abs(closed.c_s), 1e-3);
  }
}

TEST(Kupradze, DiskIntegralMatchesQuadrature) {
  const KupradzeKernel K(LameParameters(1.5, 1.0), 1.7);
  const double a = 0.3;
  boost::math::quadrature::tanh_sinh<double> ts;
  // Angular trapezoid is exact: Gamma depends on the angle through rhat rhat^T only.
  auto ring = [&](double r) {
    CMat2 s = CMat2::Zero();
    if (r < 1e-150) return s;  // r Gamma -> 0; tiny tanh-sinh abscissae underflow in norm()
    for (int m = 0; m < 16; ++m) {
      const double t = 2 * kPi * m / 16;
      s += K.at(r * Vec2(std::cos(t), std::sin(t)));
    }
    return CMat2(s * (2 * kPi / 16) * r);
  };
  const CMat2 got = K.disk_integral(a);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double re = ts.integrate([&](double r) { return ring(r)(i, j).real(); }, 0.0, a);
      const double im = ts.integrate([&](double r) { return ring(r)(i, j).imag(); }, 0.0, a);
      EXPECT_LT(std::abs(got(i, j) - cplx(re, im)), 1e-9 * std::max(1.0, std::abs(got(0, 0)))) << i << j;
    }
  EXPECT_EQ(K.self_cell(0.1), K.disk_integral(0.1 / std::sqrt(kPi)));
}
