#pragma once

// Physical building blocks of 2D time-harmonic isotropic elasticity:
// Lamé parameters, P/S wavenumbers, plane waves with analytic Jacobians,
// and the boundary operators (traction, Günter derivative) on a line.
//
// 2D conventions used throughout the library:
//   curl u        := d1 u2 - d2 u1                       (scalar)
//   nu x c        := c * (nu2, -nu1)                     (scalar c)
//   c x nu        := c * (-nu2, nu1)                     (scalar c)
//   nu x v        := nu1 v2 - nu2 v1                     (vector v)
//   vec-curl phi  := (d2 phi, -d1 phi)
// With these, for fields vanishing on a line with normal nu,
//   T w = mu d_nu w + (lambda+mu) nu div w = (lambda+2mu) d_nu w + (lambda+mu) nu x curl w.

#include <complex>
#include <optional>

#include <Eigen/Core>

namespace cornerscat {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using CVec2 = Eigen::Vector2cd;
using CMat2 = Eigen::Matrix2cd;

class LameParameters {
 public:
  /// Throws ConfigError unless mu > 0 and lambda + mu > 0.
  LameParameters(double lambda, double mu);

  double lambda() const noexcept { return lambda_; }
  double mu() const noexcept { return mu_; }
  /// lambda + 2 mu, the P-wave modulus.
  double p_modulus() const noexcept { return lambda_ + 2.0 * mu_; }

 private:
  double lambda_;
  double mu_;
};

struct Wavenumbers {
  double omega;
  double k_p;
  double k_s;
};

/// k_p = omega / sqrt(lambda + 2 mu), k_s = omega / sqrt(mu).
Wavenumbers wavenumbers(const LameParameters& params, double omega);

/// Unit propagation direction with its +90 degree rotation.
class Direction {
 public:
  /// Normalizes `d`; throws DomainError for a (near) zero vector.
  explicit Direction(const Vec2& d);
  static Direction from_angle(double theta);

  const Vec2& d() const noexcept { return d_; }
  const Vec2& d_perp() const noexcept { return d_perp_; }
  double angle() const;

 private:
  Vec2 d_;
  Vec2 d_perp_;
};

/// Value of a complex 2-vector field at a point, optionally with its Jacobian
/// J(i, j) = d_j u_i.
struct FieldSample {
  CVec2 value = CVec2::Zero();
  std::optional<CMat2> jacobian;

  cplx divergence() const;
  cplx curl() const;
};

enum class WaveKind { P, S };

/// P wave: d exp(i k_p d.x).  S wave: d_perp exp(i k_s d.x).  Unit amplitude.
struct PlaneWave {
  WaveKind kind;
  Direction direction;
  Wavenumbers wavenumbers;

  double k() const noexcept { return kind == WaveKind::P ? wavenumbers.k_p : wavenumbers.k_s; }
  const Vec2& polarization() const noexcept {
    return kind == WaveKind::P ? direction.d() : direction.d_perp();
  }
};

/// Value and exact Jacobian of a plane wave at x.
FieldSample plane_wave_eval(const PlaneWave& wave, const Vec2& x);

/// A point on a line with unit normal nu and tangent tau = nu rotated by +90 degrees.
class BoundarySegment {
 public:
  BoundarySegment(const Vec2& point, const Vec2& normal);

  const Vec2& point() const noexcept { return point_; }
  const Vec2& nu() const noexcept { return nu_; }
  const Vec2& tau() const noexcept { return tau_; }

 private:
  Vec2 point_;
  Vec2 nu_;
  Vec2 tau_;
};

/// Tu = 2 mu d_nu u + lambda nu div u + mu nu x curl u.
/// Throws ContractViolation if the sample has no Jacobian.
CVec2 traction(const FieldSample& sample, const Vec2& nu, const LameParameters& params);

/// Mw = d_nu w - nu div w + nu x curl w (tangential; zero for fields vanishing on the line).
CVec2 guenter_derivative(const FieldSample& sample, const Vec2& nu);

/// Reconstructs d_nu w from Tw for fields vanishing on the line:
/// d_nu w = (1/mu) (nu x Tw) x nu + 1/(lambda+2mu) (nu . Tw) nu.
CVec2 normal_from_cauchy(const CVec2& tw, const Vec2& nu, const LameParameters& params);

/// The two alternative traction forms valid for fields vanishing on the line.
CVec2 traction_vanishing_div_form(const FieldSample& sample, const Vec2& nu,
                                  const LameParameters& params);
CVec2 traction_vanishing_curl_form(const FieldSample& sample, const Vec2& nu,
                                   const LameParameters& params);

/// 2D cross products under the library convention.
inline Vec2 cross_normal_scalar_dir(const Vec2& nu) { return Vec2(nu.y(), -nu.x()); }
inline cplx cross(const Vec2& nu, const CVec2& v) { return nu.x() * v.y() - nu.y() * v.x(); }

}  // namespace cornerscat
