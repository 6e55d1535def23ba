#pragma once

// Independent reference computations shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <complex>

#include <mpfr.h>

#include "cornerscat/farfield.hpp"
#include "cornerscat/kupradze.hpp"

namespace cornerscat::oracle {

/// H_n^(1)(x) from MPFR's jn / yn at 200 bits.
inline std::complex<double> hankel(int n, double x) {
  mpfr_t xx, j, y;
  mpfr_inits2(200, xx, j, y, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_d(xx, x, MPFR_RNDN);
  mpfr_jn(j, n, xx, MPFR_RNDN);
  mpfr_yn(y, n, xx, MPFR_RNDN);
  const std::complex<double> h(mpfr_get_d(j, MPFR_RNDN), mpfr_get_d(y, MPFR_RNDN));
  mpfr_clears(xx, j, y, static_cast<mpfr_ptr>(nullptr));
  return h;
}

/// 10^(-3 + 6 i / (count - 1)): log-spaced points in [1e-3, 1e3].
inline double log_point(int i, int count) { return std::pow(10.0, -3.0 + 6.0 * i / (count - 1)); }

/// (L + omega^2) applied to column c of Gamma(., y) at x by 4th-order central
/// differences with step d, relative to omega^2 max|Gamma(x, y)|.
inline double navier_residual(const KupradzeKernel& K, const Vec2& x, const Vec2& y, int c, double d) {
  const LameParameters& p = K.params();
  auto u = [&](double dx, double dy) -> CVec2 { return K(x + Vec2(dx, dy), y).col(c); };
  const double w1[5] = {1, -8, 0, 8, -1};     // / 12 d
  const double w2[5] = {-1, 16, -30, 16, -1};  // / 12 d^2
  CVec2 uxx = CVec2::Zero(), uyy = CVec2::Zero(), uxy = CVec2::Zero();
  for (int a = -2; a <= 2; ++a) {
    uxx += w2[a + 2] * u(a * d, 0);
    uyy += w2[a + 2] * u(0, a * d);
    for (int b = -2; b <= 2; ++b)
      if (w1[a + 2] != 0 && w1[b + 2] != 0) uxy += w1[a + 2] * w1[b + 2] * u(a * d, b * d);
  }
  uxx /= 12 * d * d;
  uyy /= 12 * d * d;
  uxy /= 144 * d * d;
  const CVec2 grad_div(uxx(0) + uxy(1), uxy(0) + uyy(1));
  const double w2k = K.k().omega * K.k().omega;
  const CVec2 r = p.mu() * (uxx + uyy) + (p.lambda() + p.mu()) * grad_div + w2k * u(0, 0);
  return r.cwiseAbs().maxCoeff() / (w2k * K(x, y).cwiseAbs().maxCoeff());
}

/// Far-field pattern stacked as (u_p, u_s).
inline Eigen::VectorXcd stacked(const FarFieldPattern& f) {
  Eigen::VectorXcd v(2 * f.u_p.size());
  for (std::size_t l = 0; l < f.u_p.size(); ++l) {
    v(static_cast<Eigen::Index>(l)) = f.u_p[l];
    v(static_cast<Eigen::Index>(f.u_p.size() + l)) = f.u_s[l];
  }
  return v;
}

/// Far field of the P plane wave at angle 0.3 scattered by `g`, solved to 1e-12.
inline Eigen::VectorXcd scattered_far(const ScattererGrid& g, const LameParameters& p, double omega, int n) {
  SolverOptions o;
  o.tol = 1e-12;
  const PlaneWave w{WaveKind::P, Direction::from_angle(0.3), wavenumbers(p, omega)};
  return stacked(far_field(ls_solve(g, w, p, omega, o), g, p, omega, n));
}

/// ||F_rho(0.1) - F_Born|| / ||F_rho(0.05) - F_Born|| with rho0 = 1 + eps.
inline double born_ratio(const LameParameters& p, double omega, double radius, int cells) {
  SolverOptions o;
  o.tol = 1e-12;
  const PlaneWave w{WaveKind::P, Direction::from_angle(0.3), wavenumbers(p, omega)};
  double err[2];
  for (int i = 0; i < 2; ++i) {
    const ScattererGrid g = ScattererGrid::disk(radius, cells, i == 0 ? 1.1 : 1.05);
    const auto full = stacked(far_field(ls_solve(g, w, p, omega, o), g, p, omega, 16));
    const auto born = stacked(far_field(sample_plane_wave(g, w), g, p, omega, 16));
    err[i] = (full - born).norm();
  }
  return err[0] / err[1];
}

/// log2 of successive far-field differences on disks with cells, 2 cells, 4 cells.
inline double disk_convergence_order(const LameParameters& p, double omega, double radius, int cells, double rho0) {
  Eigen::VectorXcd f[3];
  for (auto& v : f) {
    v = scattered_far(ScattererGrid::disk(radius, cells, rho0), p, omega, 16);
    cells *= 2;
  }
  return std::log2((f[0] - f[1]).norm() / (f[1] - f[2]).norm());
}

}  // namespace cornerscat::oracle
