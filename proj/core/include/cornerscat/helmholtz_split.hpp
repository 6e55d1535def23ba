#pragma once

#include <vector>

#include "cornerscat/elastic.hpp"

namespace cornerscat {

/// Uniform lattice of sample points origin + (i h, j h), i < nx, j < ny.
struct SampleLattice {
  Vec2 origin = Vec2::Zero();
  double h = 1.0;
  int nx = 0;
  int ny = 0;

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  Vec2 point(int i, int j) const { return origin + h * Vec2(i, j); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
};

/// Complex 2-vector samples on a lattice; `valid` marks points that carry data.
struct LatticeField {
  SampleLattice lattice;
  std::vector<CVec2> values;
  std::vector<char> valid;

  static LatticeField zeros(const SampleLattice& lattice);
};

struct HelmholtzParts {
  LatticeField p;  ///< -(1/k_p^2) grad div u
  LatticeField s;  ///< (1/k_s^2) vec-curl curl u
};

/// Central finite-difference weights for the `derivative`-th derivative on the
/// symmetric stencil -half..half (Fornberg's recursion).
std::vector<double> central_weights(int derivative, int half_width);

/// Splits a solution of the homogeneous Navier equation into its compressional
/// and shear parts with central stencils of the given (even) order. Output
/// points are valid where the full stencil lies on valid input points.
/// Throws PreconditionError below 5 samples per shear wavelength.
HelmholtzParts helmholtz_split(const LatticeField& u, const Wavenumbers& k, int stencil_order = 8);

/// Helmholtz residual (Delta + k^2) f at valid points (same stencil family);
/// returns the maximum modulus over points where the stencil fits.
double helmholtz_residual(const LatticeField& f, double k, int stencil_order);

}  // namespace cornerscat
