#include "cornerscat/kupradze.hpp"

#include <cmath>

#include "cornerscat/errors.hpp"
#include "cornerscat/hankel.hpp"

namespace cornerscat {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);
}  // namespace

KupradzeKernel::KupradzeKernel(const LameParameters& params, double omega)
    : params_(params), k_(wavenumbers(params, omega)) {}

CMat2 KupradzeKernel::at(const Vec2& r) const {
  const double dist = r.norm();
  if (!(dist > 0.0)) throw DomainError("Kupradze tensor is singular at coincident points");
  const Vec2 rh = r / dist;
  const Eigen::Matrix2d rr = rh * rh.transpose();
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();

  const double ks = k_.k_s;
  const double kp = k_.k_p;
  const Hankel012 hs = hankel1_012(ks * dist);
  const Hankel012 hp = hankel1_012(kp * dist);

  // grad grad^T H0(k r) = k^2 [H2 rr - H1/(k r) I]
  const cplx rr_coef = ks * ks * hs.h2 - kp * kp * hp.h2;
  const cplx id_coef = -ks * hs.h1 / dist + kp * hp.h1 / dist;

  const double w2 = k_.omega * k_.omega;
  const cplx a = kI / (4.0 * params_.mu());
  const cplx b = kI / (4.0 * w2);
  return (a * hs.h0 + b * id_coef) * id.cast<cplx>() + (b * rr_coef) * rr.cast<cplx>();
}

CMat2 KupradzeKernel::disk_integral(double a) const {
  if (!(a > 0.0)) throw DomainError("disk radius must be positive");
  const double ks = k_.k_s;
  const double kp = k_.k_p;
  const double w2 = k_.omega * k_.omega;
  // int_{|y|<a} (i/4) H0(k|y|) dy = (i/4) (2 pi a H1(k a)/k + 4i/k^2)
  const cplx helm = 2.0 * kPi * a * hankel1(1, ks * a) / ks + 4.0 * kI / (ks * ks);
  // The Hessian part by the divergence theorem: pi a f'(a) I, f = H0(k_s r) - H0(k_p r).
  const cplx hess = kPi * a * (-ks * hankel1(1, ks * a) + kp * hankel1(1, kp * a));
  const cplx diag = kI / (4.0 * params_.mu()) * helm + kI / (4.0 * w2) * hess;
  return diag * CMat2::Identity();
}

CMat2 KupradzeKernel::self_cell(double h) const { return disk_integral(h / std::sqrt(kPi)); }

CMat2 kupradze_green(const Vec2& x, const Vec2& y, const LameParameters& params, double omega) {
  return KupradzeKernel(params, omega)(x, y);
}

FarFieldConstants farfield_constants(const LameParameters& params, double omega) {
  const Wavenumbers k = wavenumbers(params, omega);
  const cplx phase = std::polar(1.0, kPi / 4);
  return {phase / (params.p_modulus() * std::sqrt(8 * kPi * k.k_p)), phase / (params.mu() * std::sqrt(8 * kPi * k.k_s))};
}

FarFieldConstants calibrate_farfield_constants(const LameParameters& params, double omega, double wavelengths,
                                               const Vec2& y, double angle) {
  const KupradzeKernel g(params, omega);
  const Vec2 xh(std::cos(angle), std::sin(angle));
  const Vec2 xp(-xh.y(), xh.x());
  // The other wave's near field leaks into each projection as a 1/r term
  // beating at |k_s - k_p|; averaging over one beat period cancels it.
  const double beat = 2 * kPi / std::abs(g.k().k_s - g.k().k_p);
  constexpr int kBeatSamples = 16;
  auto estimate = [&](double k, const Vec2& pol) {
    const double r0 = wavelengths * 2 * kPi / k;
    cplx sum = 0;
    for (int m = 0; m < kBeatSamples; ++m) {
      const double r = r0 + beat * m / kBeatSamples;
      const cplx proj = pol.cast<cplx>().dot(g(r * xh, y) * pol.cast<cplx>());
      sum += std::sqrt(r) * std::exp(-kI * k * r) * std::exp(kI * k * xh.dot(y)) * proj;
    }
    return sum / static_cast<double>(kBeatSamples);
  };
  return {estimate(g.k().k_p, xh), estimate(g.k().k_s, xp)};
}

}  // namespace cornerscat
