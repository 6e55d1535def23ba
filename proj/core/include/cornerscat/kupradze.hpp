#pragma once

// Outgoing fundamental solution of L + omega^2 (unit density):
//   (L + omega^2) Gamma = -delta I,
//   Gamma(x, y) = i/(4 mu) H0(k_s r) I + i/(4 omega^2) grad grad^T [H0(k_s r) - H0(k_p r)],
// with grad grad^T H0(k r) = k^2 [H2(k r) rhat rhat^T - H1(k r)/(k r) I].

#include "cornerscat/elastic.hpp"

namespace cornerscat {

class KupradzeKernel {
 public:
  KupradzeKernel(const LameParameters& params, double omega);

  const LameParameters& params() const { return params_; }
  const Wavenumbers& k() const { return k_; }

  /// Gamma at separation r = x - y (depends on r only). Throws DomainError for r = 0.
  CMat2 at(const Vec2& r) const;
  CMat2 operator()(const Vec2& x, const Vec2& y) const { return at(x - y); }

  /// Integral of Gamma(x, .) over a disk of radius a centred at x, in closed form.
  CMat2 disk_integral(double a) const;
  /// Self-cell term for a square cell of side h: disk of equal area, a = h / sqrt(pi).
  CMat2 self_cell(double h) const;

 private:
  LameParameters params_;
  Wavenumbers k_;
};

CMat2 kupradze_green(const Vec2& x, const Vec2& y, const LameParameters& params, double omega);

/// Far-field constants: Gamma(r xhat, y) ~ e^{i k_p r}/sqrt(r) c_p e^{-i k_p xhat.y} xhat xhat^T
///                                        + e^{i k_s r}/sqrt(r) c_s e^{-i k_s xhat.y} xhat_perp xhat_perp^T.
struct FarFieldConstants {
  cplx c_p;
  cplx c_s;
};

/// c_p = e^{i pi/4} / ((lambda+2mu) sqrt(8 pi k_p)),  c_s = e^{i pi/4} / (mu sqrt(8 pi k_s)).
FarFieldConstants farfield_constants(const LameParameters& params, double omega);

/// Numerical asymptotic matching: averages sqrt(r) e^{-i k r} e^{i k xhat.y} times the
/// projected Gamma over one P-S beat period starting `wavelengths` P (resp. S)
/// wavelengths out along `xhat`.
FarFieldConstants calibrate_farfield_constants(const LameParameters& params, double omega, double wavelengths,
                                               const Vec2& y = Vec2(0.25, -0.15), double angle = 0.7);

}  // namespace cornerscat
