#include "cornerscat/hankel.hpp"

#include <cmath>

#include "cornerscat/errors.hpp"

namespace cornerscat {

namespace {

using ld = long double;

constexpr ld kPi = 3.141592653589793238462643383279502884L;
constexpr ld kEuler = 0.577215664901532860606512090082402431L;

void check_args(int n, double x) {
  if (n < 0 || n > 2) throw PreconditionError("Hankel functions are implemented for orders 0, 1, 2");
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("Hankel functions require finite x > 0");
}

struct JY {
  ld j, y;
};

// J_n = sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)
// Y_n = -(1/pi) sum_{k<n} (n-k-1)!/k! (x/2)^(2k-n) + (2/pi) ln(x/2) J_n
//       - (1/pi) sum_k [psi(k+1) + psi(n+k+1)] (-1)^k (x/2)^(2k+n) / (k! (n+k)!)
JY series(int n, ld x) {
  const ld half = x / 2;
  const ld q = half * half;

  ld lead = 1;  // (x/2)^n / n!
  for (int k = 1; k <= n; ++k) lead *= half / k;

  ld psi_k = -kEuler;  // psi(k+1) at k = 0
  ld psi_nk = -kEuler;
  for (int k = 1; k <= n; ++k) psi_nk += ld(1) / k;

  ld term = lead;
  ld j = 0;
  ld s = 0;
  for (int k = 0; k < 200; ++k) {
    j += term;
    s += (psi_k + psi_nk) * term;
    const ld next = -term * q / ((k + 1) * ld(k + 1 + n));
    psi_k += ld(1) / (k + 1);
    psi_nk += ld(1) / (k + 1 + n);
    term = next;
    if (std::fabs(term) * (1 + std::fabs(psi_k + psi_nk)) < 1e-22L * (std::fabs(j) + std::fabs(s) + 1e-300L) && k > 2) break;
  }

  ld finite = 0;
  for (int k = 0; k < n; ++k) {
    ld c = 1;  // (n-k-1)!/k!
    for (int i = 2; i <= n - k - 1; ++i) c *= i;
    for (int i = 2; i <= k; ++i) c /= i;
    finite += c * std::pow(half, ld(2 * k - n));
  }

  JY r;
  r.j = j;
  r.y = -finite / kPi + (2 / kPi) * std::log(half) * j - s / kPi;
  return r;
}

// H_n(x) ~ sqrt(2/(pi x)) e^{i(x - n pi/2 - pi/4)} sum_k i^k a_k(n) / x^k
std::complex<ld> asymptotic(int n, ld x) {
  const ld mu = 4.0L * n * n;
  std::complex<ld> sum = 1;
  std::complex<ld> term = 1;
  ld last = 1;
  for (int k = 1; k < 80; ++k) {
    const ld odd = 2 * k - 1;
    term *= std::complex<ld>(0, 1) * ((mu - odd * odd) / (8 * k * x));
    const ld mag = std::abs(term);
    if (mag > last) break;
    sum += term;
    last = mag;
    if (mag < 1e-20L) break;
  }
  const ld phase = x - n * kPi / 2 - kPi / 4;
  return std::sqrt(2 / (kPi * x)) * std::complex<ld>(std::cos(phase), std::sin(phase)) * sum;
}

std::complex<double> eval(int n, double x) {
  if (x < kHankelSwitch) {
    const JY r = series(n, x);
    return {static_cast<double>(r.j), static_cast<double>(r.y)};
  }
  const auto h = asymptotic(n, x);
  return {static_cast<double>(h.real()), static_cast<double>(h.imag())};
}

}  // namespace

double bessel_j(int n, double x) { return hankel1(n, x).real(); }
double bessel_y(int n, double x) { return hankel1(n, x).imag(); }

std::complex<double> hankel1(int n, double x) {
  check_args(n, x);
  return eval(n, x);
}

Hankel012 hankel1_012(double x) {
  check_args(0, x);
  return {eval(0, x), eval(1, x), eval(2, x)};
}

}  // namespace cornerscat
