#include "cornerscat/helmholtz_split.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cornerscat/errors.hpp"

namespace cornerscat {

LatticeField LatticeField::zeros(const SampleLattice& lattice) {
  LatticeField f;
  f.lattice = lattice;
  f.values.assign(lattice.size(), CVec2::Zero());
  f.valid.assign(lattice.size(), 0);
  return f;
}

std::vector<double> central_weights(int derivative, int half_width) {
  // Fornberg (1988), weights for nodes x_k = k - half_width evaluated at 0.
  const int n = 2 * half_width + 1;
  const int m = derivative;
  std::vector<double> nodes(n);
  for (int k = 0; k < n; ++k) nodes[k] = k - half_width;
  std::vector<std::vector<std::vector<double>>> c(
      m + 1, std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0)));
  c[0][0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i < n; ++i) {
    double c2 = 1.0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      for (int d = 0; d <= std::min(i, m); ++d) {
        const double prev = d > 0 ? c[d - 1][i - 1][j] : 0.0;
        c[d][i][j] = (nodes[i] * c[d][i - 1][j] - d * prev) / c3;
      }
    }
    for (int d = 0; d <= std::min(i, m); ++d) {
      const double prev = d > 0 ? c[d - 1][i - 1][i - 1] : 0.0;
      c[d][i][i] = c1 / c2 * (d * prev - nodes[i - 1] * c[d][i - 1][i - 1]);
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) w[k] = c[m][n - 1][k];
  return w;
}

namespace {

struct Stencils {
  int half;
  std::vector<double> d1;
  std::vector<double> d2;
};

Stencils make_stencils(int order) {
  if (order < 2 || order % 2 != 0) throw PreconditionError("stencil order must be even and >= 2");
  const int half = order / 2;
  return Stencils{half, central_weights(1, half), central_weights(2, half)};
}

// Second derivatives of both components at (i, j); false if the stencil leaves the data.
struct Hessians {
  CVec2 dxx, dyy, dxy;
};

bool hessians_at(const LatticeField& u, const Stencils& st, int i, int j, Hessians& out) {
  const auto& L = u.lattice;
  const int r = st.half;
  if (i - r < 0 || j - r < 0 || i + r >= L.nx || j + r >= L.ny) return false;
  for (int a = -r; a <= r; ++a) {
    for (int b = -r; b <= r; ++b) {
      if (!u.valid[L.index(i + a, j + b)]) return false;
    }
  }
  out = Hessians{CVec2::Zero(), CVec2::Zero(), CVec2::Zero()};
  for (int a = -r; a <= r; ++a) {
    out.dxx += st.d2[a + r] * u.values[L.index(i + a, j)];
    out.dyy += st.d2[a + r] * u.values[L.index(i, j + a)];
    for (int b = -r; b <= r; ++b) {
      const double w = st.d1[a + r] * st.d1[b + r];
      if (w != 0.0) out.dxy += w * u.values[L.index(i + a, j + b)];
    }
  }
  const double h2 = L.h * L.h;
  out.dxx /= h2;
  out.dyy /= h2;
  out.dxy /= h2;
  return true;
}

}  // namespace

HelmholtzParts helmholtz_split(const LatticeField& u, const Wavenumbers& k, int stencil_order) {
  const auto& L = u.lattice;
  if (u.values.size() != L.size() || u.valid.size() != L.size()) {
    throw PreconditionError("lattice field storage does not match its lattice");
  }
  const double per_wavelength = 2.0 * std::numbers::pi / (k.k_s * L.h);
  if (per_wavelength < 5.0) {
    std::ostringstream os;
    os << "grid too coarse for the P/S split: " << per_wavelength
       << " points per shear wavelength (need at least 5)";
    throw PreconditionError(os.str());
  }
  const Stencils st = make_stencils(stencil_order);
  HelmholtzParts parts{LatticeField::zeros(L), LatticeField::zeros(L)};
  const double inv_kp2 = 1.0 / (k.k_p * k.k_p);
  const double inv_ks2 = 1.0 / (k.k_s * k.k_s);
  for (int j = 0; j < L.ny; ++j) {
    for (int i = 0; i < L.nx; ++i) {
      Hessians hs;
      if (!hessians_at(u, st, i, j, hs)) continue;
      const std::size_t idx = L.index(i, j);
      // grad div u = (u1_xx + u2_xy, u1_xy + u2_yy)
      const CVec2 grad_div(hs.dxx.x() + hs.dxy.y(), hs.dxy.x() + hs.dyy.y());
      // vec-curl curl u = (u2_xy - u1_yy, -(u2_xx - u1_xy))
      const CVec2 curl_curl(hs.dxy.y() - hs.dyy.x(), hs.dxy.x() - hs.dxx.y());
      parts.p.values[idx] = -inv_kp2 * grad_div;
      parts.s.values[idx] = inv_ks2 * curl_curl;
      parts.p.valid[idx] = 1;
      parts.s.valid[idx] = 1;
    }
  }
  return parts;
}

double helmholtz_residual(const LatticeField& f, double k, int stencil_order) {
  const Stencils st = make_stencils(stencil_order);
  const auto& L = f.lattice;
  double worst = 0.0;
  for (int j = 0; j < L.ny; ++j) {
    for (int i = 0; i < L.nx; ++i) {
      Hessians hs;
      if (!hessians_at(f, st, i, j, hs)) continue;
      const CVec2 r = hs.dxx + hs.dyy + k * k * f.values[L.index(i, j)];
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace cornerscat
