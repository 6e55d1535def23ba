#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "cornerscat/errors.hpp"
#include "cornerscat/hankel.hpp"
#include "oracles.hpp"

using namespace cornerscat;

namespace {

constexpr double kPi = 3.14159265358979323846;

using oracle::hankel;
using oracle::log_point;

}  // namespace

TEST(Hankel, MatchesArbitraryPrecisionOracle) {
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = log_point(i, 1000);
    const Hankel012 h = hankel1_012(x);
    const std::complex<double> got[3] = {h.h0, h.h1, h.h2};
    for (int n = 0; n <= 2; ++n) {
      const auto ref = hankel(n, x);
      const double rel = std::abs(got[n] - ref) / std::abs(ref);
      worst = std::max(worst, rel);
      EXPECT_LT(rel, 1e-10) << "n=" << n << " x=" << x;
      EXPECT_EQ(cornerscat::hankel1(n, x), got[n]);
    }
  }
  RecordProperty("worst_relative_error", std::to_string(worst));
}

TEST(Hankel, SwitchPointIsContinuous) {
  for (int n = 0; n <= 2; ++n) {
    const double below = std::nextafter(kHankelSwitch, 0.0);
    EXPECT_LT(std::abs(hankel1(n, below) - hankel(n, below)) / std::abs(hankel(n, below)), 1e-10);
    EXPECT_LT(std::abs(hankel1(n, kHankelSwitch) - hankel(n, kHankelSwitch)) /
                  std::abs(hankel(n, kHankelSwitch)),
              1e-10);
  }
}

TEST(Hankel, Wronskian) {
  // J_{n+1} Y_n - J_n Y_{n+1} = 2 / (pi x)
  for (int i = 0; i < 200; ++i) {
    const double x = log_point(i, 200);
    for (int n = 0; n <= 1; ++n) {
      const double w = bessel_j(n + 1, x) * bessel_y(n, x) - bessel_j(n, x) * bessel_y(n + 1, x);
      EXPECT_NEAR(w * kPi * x / 2.0, 1.0, 1e-10) << "n=" << n << " x=" << x;
    }
  }
}

TEST(Hankel, Recurrence) {
  // H_0 + H_2 = (2/x) H_1
  for (int i = 0; i < 200; ++i) {
    const double x = log_point(i, 200);
    const Hankel012 h = hankel1_012(x);
    const auto rhs = 2.0 / x * h.h1;
    EXPECT_LT(std::abs(h.h0 + h.h2 - rhs) / std::abs(rhs), 1e-10) << "x=" << x;
  }
}

TEST(Hankel, DomainAndOrderErrors) {
  EXPECT_THROW(hankel1(0, 0.0), DomainError);
  EXPECT_THROW(hankel1(1, -1.0), DomainError);
  EXPECT_THROW(hankel1(3, 1.0), PreconditionError);
  EXPECT_THROW(bessel_j(-1, 1.0), PreconditionError);
}
