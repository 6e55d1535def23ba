#pragma once

// Bessel J_n, Y_n and Hankel H_n^(1) = J_n + i Y_n for integer orders 0, 1, 2.
// Ascending series (in long double) below x = 12, Hankel's asymptotic
// expansion from 12 up.

#include <complex>

namespace cornerscat {

inline constexpr double kHankelSwitch = 12.0;

/// Throws DomainError for x <= 0 and PreconditionError for orders outside 0..2.
double bessel_j(int n, double x);
double bessel_y(int n, double x);
std::complex<double> hankel1(int n, double x);

struct Hankel012 {
  std::complex<double> h0, h1, h2;
};

/// All three orders in one pass (the Green tensor needs them together).
Hankel012 hankel1_012(double x);

}  // namespace cornerscat
