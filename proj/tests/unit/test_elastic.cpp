#include <gtest/gtest.h>

#include <cmath>

#include "cornerscat/elastic.hpp"
#include "cornerscat/errors.hpp"
#include "cornerscat/helmholtz_split.hpp"
#include "cornerscat/verification.hpp"

using namespace cornerscat;

namespace {

constexpr double kPi = 3.14159265358979323846;
const cplx I(0, 1);

CMat2 fd_jacobian(const PlaneWave& w, const Vec2& x, double d) {
  CMat2 J;
  for (int j = 0; j < 2; ++j) {
    const Vec2 e = d * Vec2::Unit(j);
    J.col(j) = (-plane_wave_eval(w, x + 2 * e).value + 8.0 * plane_wave_eval(w, x + e).value -
                8.0 * plane_wave_eval(w, x - e).value + plane_wave_eval(w, x - 2 * e).value) /
               (12 * d);
  }
  return J;
}

LatticeField sample(const PlaneWave& w, const SampleLattice& lat) {
  LatticeField f = LatticeField::zeros(lat);
  for (int j = 0; j < lat.ny; ++j)
    for (int i = 0; i < lat.nx; ++i) {
      f.values[lat.index(i, j)] = plane_wave_eval(w, lat.point(i, j)).value;
      f.valid[lat.index(i, j)] = 1;
    }
  return f;
}

}  // namespace

TEST(Elastic, LameValidation) {
  EXPECT_THROW(LameParameters(1, 0), ConfigError);
  EXPECT_THROW(LameParameters(-1, 1), ConfigError);
  EXPECT_NO_THROW(LameParameters(-0.9, 1));
  const Wavenumbers k = wavenumbers(LameParameters(2, 1), 3);
  EXPECT_DOUBLE_EQ(k.k_p, 3 / 2.0);
  EXPECT_DOUBLE_EQ(k.k_s, 3.0);
  EXPECT_THROW(Direction(Vec2::Zero()), DomainError);
}

TEST(Elastic, PlaneWaveJacobianMatchesFiniteDifferences) {
  const LameParameters params(1.3, 0.8);
  for (WaveKind kind : {WaveKind::P, WaveKind::S})
    for (double t : {0.0, 0.4, 2.9}) {
      const PlaneWave w{kind, Direction::from_angle(t), wavenumbers(params, 2.2)};
      const Vec2 x(0.3, -1.1);
      const FieldSample s = plane_wave_eval(w, x);
      EXPECT_LT((*s.jacobian - fd_jacobian(w, x, 1e-3)).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_NEAR(s.value.norm(), 1.0, 1e-14);
      if (kind == WaveKind::P) EXPECT_LT(std::abs(s.curl()), 1e-12);
      else EXPECT_LT(std::abs(s.divergence()), 1e-12);
    }
}

TEST(Elastic, TractionOfPlaneWaveClosedForm) {
  const LameParameters params(1.3, 0.8);
  const PlaneWave w{WaveKind::P, Direction::from_angle(0.7), wavenumbers(params, 1.5)};
  const Vec2 x(0.2, 0.5), nu = Vec2(1, 2).normalized();
  const FieldSample s = plane_wave_eval(w, x);
  const cplx e = std::exp(I * w.k() * w.direction.d().dot(x));
  const Vec2& d = w.direction.d();
  const CVec2 expect = I * w.k() * e * (params.lambda() * nu + 2 * params.mu() * d.dot(nu) * d).cast<cplx>();
  EXPECT_LT((traction(s, nu, params) - expect).norm(), 1e-13);
  const CVec2 m = I * w.k() * e * (d.dot(nu) * d - nu).cast<cplx>();
  EXPECT_LT((guenter_derivative(s, nu) - m).norm(), 1e-13);
  EXPECT_THROW(traction(FieldSample{}, nu, params), ContractViolation);
}

TEST(Elastic, VanishingFieldTractionForms) {
  const CheckReport r = verify_vanishing_traction(100, 1, 1e-12);
  for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
}

TEST(HelmholtzSplit, CentralWeights) {
  const auto d2 = central_weights(2, 1);
  ASSERT_EQ(d2.size(), 3u);
  EXPECT_NEAR(d2[0], 1, 1e-14);
  EXPECT_NEAR(d2[1], -2, 1e-14);
  EXPECT_NEAR(d2[2], 1, 1e-14);
  const auto d1 = central_weights(1, 2);
  const double expect[5] = {1 / 12.0, -8 / 12.0, 0, 8 / 12.0, -1 / 12.0};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(d1[i], expect[i], 1e-14);
}

TEST(HelmholtzSplit, SeparatesPlaneWaves) {
  const LameParameters params(2.0, 1.0);
  const Wavenumbers k = wavenumbers(params, 2.0);
  const SampleLattice lat{Vec2(-1, -1), 2 * kPi / k.k_s / 20, 40, 40};
  for (WaveKind kind : {WaveKind::P, WaveKind::S}) {
    const PlaneWave w{kind, Direction::from_angle(0.6), k};
    const LatticeField u = sample(w, lat);
    const HelmholtzParts parts = helmholtz_split(u, k, 8);
    const LatticeField& same = kind == WaveKind::P ? parts.p : parts.s;
    const LatticeField& other = kind == WaveKind::P ? parts.s : parts.p;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < lat.size(); ++i) {
      if (!same.valid[i]) continue;
      ++checked;
      EXPECT_LT((same.values[i] - u.values[i]).norm(), 1e-6);
      EXPECT_LT(other.values[i].norm(), 1e-6);
    }
    EXPECT_GT(checked, 0u);
    EXPECT_LT(helmholtz_residual(same, w.k(), 8), 1e-5 * w.k() * w.k());
  }
}

TEST(HelmholtzSplit, RefusesUnderResolvedLattice) {
  const Wavenumbers k = wavenumbers(LameParameters(1, 1), 2.0);
  const SampleLattice lat{Vec2::Zero(), 2 * kPi / k.k_s / 4, 30, 30};
  EXPECT_THROW(helmholtz_split(LatticeField::zeros(lat), k, 8), PreconditionError);
}
