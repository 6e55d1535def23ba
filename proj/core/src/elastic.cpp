#include "cornerscat/elastic.hpp"

#include <cmath>
#include <sstream>

#include "cornerscat/errors.hpp"

namespace cornerscat {

LameParameters::LameParameters(double lambda, double mu) : lambda_(lambda), mu_(mu) {
  if (!std::isfinite(lambda) || !std::isfinite(mu)) {
    throw ConfigError("Lamé parameters must be finite");
  }
  if (!(mu > 0.0)) {
    std::ostringstream os;
    os << "shear modulus must satisfy mu > 0 (got mu = " << mu << ")";
    throw ConfigError(os.str());
  }
  if (!(lambda + mu > 0.0)) {
    std::ostringstream os;
    os << "Lamé parameters must satisfy lambda + mu > 0 (got " << lambda + mu << ")";
    throw ConfigError(os.str());
  }
}

Wavenumbers wavenumbers(const LameParameters& params, double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ConfigError("circular frequency omega must be positive");
  }
  return Wavenumbers{omega, omega / std::sqrt(params.p_modulus()), omega / std::sqrt(params.mu())};
}

Direction::Direction(const Vec2& d) {
  const double n = d.norm();
  if (!(n > 1e-300) || !std::isfinite(n)) throw DomainError("direction vector must be nonzero");
  d_ = d / n;
  d_perp_ = Vec2(-d_.y(), d_.x());
}

Direction Direction::from_angle(double theta) { return Direction(Vec2(std::cos(theta), std::sin(theta))); }

double Direction::angle() const { return std::atan2(d_.y(), d_.x()); }

cplx FieldSample::divergence() const {
  if (!jacobian) throw ContractViolation("field sample carries no Jacobian");
  return (*jacobian)(0, 0) + (*jacobian)(1, 1);
}

cplx FieldSample::curl() const {
  if (!jacobian) throw ContractViolation("field sample carries no Jacobian");
  return (*jacobian)(1, 0) - (*jacobian)(0, 1);
}

FieldSample plane_wave_eval(const PlaneWave& wave, const Vec2& x) {
  const double k = wave.k();
  const Vec2& d = wave.direction.d();
  const Vec2& a = wave.polarization();
  const cplx phase = std::exp(cplx(0.0, k * d.dot(x)));
  FieldSample s;
  s.value = a.cast<cplx>() * phase;
  // d_j (a_i e^{ik d.x}) = i k d_j a_i e^{ik d.x}
  s.jacobian = (cplx(0.0, k) * phase) * (a * d.transpose()).cast<cplx>();
  return s;
}

BoundarySegment::BoundarySegment(const Vec2& point, const Vec2& normal) : point_(point) {
  const double n = normal.norm();
  if (!(n > 1e-300)) throw DomainError("boundary normal must be nonzero");
  nu_ = normal / n;
  tau_ = Vec2(-nu_.y(), nu_.x());
}

namespace {

const CMat2& require_jacobian(const FieldSample& s) {
  if (!s.jacobian) throw ContractViolation("field sample carries no Jacobian");
  return *s.jacobian;
}

CVec2 normal_derivative(const CMat2& jac, const Vec2& nu) { return jac * nu.cast<cplx>(); }

}  // namespace

CVec2 traction(const FieldSample& sample, const Vec2& nu, const LameParameters& params) {
  const CMat2& jac = require_jacobian(sample);
  const CVec2 dnu = normal_derivative(jac, nu);
  const cplx div = jac(0, 0) + jac(1, 1);
  const cplx curl = jac(1, 0) - jac(0, 1);
  const CVec2 nu_c = nu.cast<cplx>();
  return 2.0 * params.mu() * dnu + params.lambda() * div * nu_c +
         params.mu() * curl * cross_normal_scalar_dir(nu).cast<cplx>();
}

CVec2 traction_vanishing_div_form(const FieldSample& sample, const Vec2& nu,
                                  const LameParameters& params) {
  const CMat2& jac = require_jacobian(sample);
  const cplx div = jac(0, 0) + jac(1, 1);
  return params.mu() * normal_derivative(jac, nu) + (params.lambda() + params.mu()) * div * nu.cast<cplx>();
}

CVec2 traction_vanishing_curl_form(const FieldSample& sample, const Vec2& nu,
                                   const LameParameters& params) {
  const CMat2& jac = require_jacobian(sample);
  const cplx curl = jac(1, 0) - jac(0, 1);
  return params.p_modulus() * normal_derivative(jac, nu) +
         (params.lambda() + params.mu()) * curl * cross_normal_scalar_dir(nu).cast<cplx>();
}

CVec2 guenter_derivative(const FieldSample& sample, const Vec2& nu) {
  const CMat2& jac = require_jacobian(sample);
  const cplx div = jac(0, 0) + jac(1, 1);
  const cplx curl = jac(1, 0) - jac(0, 1);
  return normal_derivative(jac, nu) - div * nu.cast<cplx>() + curl * cross_normal_scalar_dir(nu).cast<cplx>();
}

CVec2 normal_from_cauchy(const CVec2& tw, const Vec2& nu, const LameParameters& params) {
  // (nu x Tw) x nu: scalar times (-nu2, nu1), i.e. the tangential component.
  const cplx tangential = cross(nu, tw);
  const CVec2 tau(cplx(-nu.y()), cplx(nu.x()));
  const cplx normal = nu.x() * tw.x() + nu.y() * tw.y();
  return (tangential / params.mu()) * tau + (normal / params.p_modulus()) * nu.cast<cplx>();
}

}  // namespace cornerscat
