#include "cornerscat/itp.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <random>

#include <Eigen/Dense>
#include <Eigen/CholmodSupport>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "cornerscat/errors.hpp"

namespace cornerscat {

namespace {
constexpr double kPi = 3.14159265358979323846;
using Trip = Eigen::Triplet<cplx>;
}  // namespace

ItpDiscretization::ItpDiscretization(const ShapeDescriptor& shape, int nodes, const LameParameters& params,
                                     double rho0) {
  if (nodes < 5) throw ConfigError("ITP lattice needs at least 5 nodes across");
  if (rho0 == 1.0 || !(rho0 > 0)) throw ConfigError("rho0 must be positive and different from one");
  const int nx = nodes;
  h_ = shape.width / (nx - 1);
  const int ny = static_cast<int>(std::lround(shape.height / h_)) + 1;
  const Vec2 origin(-shape.width / 2, -(ny - 1) * h_ / 2);

  // Lattice nodes on the boundary count as inside: test a point pulled slightly towards the centre.
  std::vector<long> did(static_cast<std::size_t>(nx) * ny, -1);
  auto id = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
  auto in_d = [&](int i, int j) { return i >= 0 && j >= 0 && i < nx && j < ny && did[id(i, j)] >= 0; };
  long nd = 0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (shape.contains((origin + h_ * Vec2(i, j)) * (1 - 1e-9))) did[id(i, j)] = nd++;

  std::vector<long> wid(did.size(), -1);
  long nint = 0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!in_d(i, j)) continue;
      bool interior = true;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) interior = interior && in_d(i + di, j + dj);
      if (interior) wid[id(i, j)] = nint++;
    }
  }
  interior_count_ = static_cast<std::size_t>(nint);
  boundary_count_ = static_cast<std::size_t>(nd - nint);
  if (nint == 0) throw ConfigError("ITP lattice has no interior nodes");

  // Convex corner nodes (two outward axis directions) carry no v unknown: the
  // interior stencils next to them switch to the mixed-derivative variant that
  // avoids that diagonal.  Keeping them would leave v there under-determined.
  auto outward = [&](int i, int j) {
    int k = 0;
    k += !in_d(i + 1, j);
    k += !in_d(i - 1, j);
    k += !in_d(i, j + 1);
    k += !in_d(i, j - 1);
    return k;
  };
  std::vector<long> vid(did.size(), -1);
  long nv = 0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      if (in_d(i, j) && !(wid[id(i, j)] < 0 && outward(i, j) >= 2)) vid[id(i, j)] = nv++;

  // Column of component c at a node: >= 0 unknown, -1 known zero, -2 unavailable.
  auto vcol = [&](int i, int j, int c) -> long {
    if (!in_d(i, j) || vid[id(i, j)] < 0) return -2;
    return 2 * vid[id(i, j)] + c;
  };
  auto wcol = [&](int i, int j, int c) -> long {
    if (!in_d(i, j)) return -2;
    return wid[id(i, j)] >= 0 ? 2 * nv + 2 * wid[id(i, j)] + c : -1;
  };

  const double lam = params.lambda();
  const double mu = params.mu();
  const double pm = lam + 2 * mu;
  const double mix = lam + mu;

  std::vector<Trip> t0;
  std::vector<Trip> t2;
  long row = 0;

  // h^2 L u at (i, j), component c.
  auto navier = [&](long r, int i, int j, int c, auto col) {
    const double cx = c == 0 ? pm : mu;
    const double cy = c == 0 ? mu : pm;
    auto put = [&](int ii, int jj, int cc, double v) {
      const long k = col(ii, jj, cc);
      if (k >= 0) t0.emplace_back(r, k, v);
    };
    put(i + 1, j, c, cx);
    put(i - 1, j, c, cx);
    put(i, j + 1, c, cy);
    put(i, j - 1, c, cy);
    put(i, j, c, -2 * (cx + cy));
    const int o = 1 - c;
    auto ok = [&](int ii, int jj) { return col(ii, jj, o) != -2; };
    const bool ne_sw = ok(i + 1, j + 1) && ok(i - 1, j - 1);
    const bool nw_se = ok(i - 1, j + 1) && ok(i + 1, j - 1);
    if (ne_sw && nw_se) {
      // (u_NE - u_NW - u_SE + u_SW) / 4
      put(i + 1, j + 1, o, mix / 4);
      put(i - 1, j - 1, o, mix / 4);
      put(i + 1, j - 1, o, -mix / 4);
      put(i - 1, j + 1, o, -mix / 4);
    } else if (ne_sw || nw_se) {
      // (u_NE + u_SW - u_N - u_S - u_E - u_W + 2 u) / 2, or its mirror image
      const double sg = ne_sw ? 1.0 : -1.0;
      if (ne_sw) {
        put(i + 1, j + 1, o, sg * mix / 2);
        put(i - 1, j - 1, o, sg * mix / 2);
      } else {
        put(i - 1, j + 1, o, sg * mix / 2);
        put(i + 1, j - 1, o, sg * mix / 2);
      }
      put(i + 1, j, o, -sg * mix / 2);
      put(i - 1, j, o, -sg * mix / 2);
      put(i, j + 1, o, -sg * mix / 2);
      put(i, j - 1, o, -sg * mix / 2);
      put(i, j, o, sg * mix);
    } else {
      throw ConfigError("ITP lattice too thin for the mixed-derivative stencil");
    }
  };

  const double h2 = h_ * h_;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (wid[id(i, j)] < 0) continue;
      for (int c = 0; c < 2; ++c) {
        navier(row, i, j, c, vcol);
        t2.emplace_back(row, vcol(i, j, c), h2);
        ++row;
      }
      for (int c = 0; c < 2; ++c) {
        navier(row, i, j, c, wcol);
        t2.emplace_back(row, wcol(i, j, c), h2 * rho0);
        t2.emplace_back(row, vcol(i, j, c), -h2 * (1 - rho0));
        ++row;
      }
    }
  }

  // d_nu w = 0 at boundary nodes: (4 w(q - e) - w(q - 2e)) / 2 along each outward axis e.
  const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!in_d(i, j) || wid[id(i, j)] >= 0) continue;
      for (const auto& e : dirs) {
        if (in_d(i + e[0], j + e[1])) continue;
        const int i1 = i - e[0], j1 = j - e[1], i2 = i - 2 * e[0], j2 = j - 2 * e[1];
        if (!in_d(i1, j1) || !in_d(i2, j2)) continue;
        for (int c = 0; c < 2; ++c) {
          const long k1 = wcol(i1, j1, c);
          const long k2 = wcol(i2, j2, c);
          if (k1 < 0 && k2 < 0) continue;
          if (k1 >= 0) t0.emplace_back(row, k1, 2.0);
          if (k2 >= 0) t0.emplace_back(row, k2, -0.5);
          ++row;
        }
      }
    }
  }

  // v carries no boundary condition; next to the dropped corner nodes the
  // lattice leaves it under-determined, so tie it to the interior by cubic
  // extrapolation v(q) - 3 v(q-e) + 3 v(q-2e) - v(q-3e) = 0 (consistent to O(h^3)).
  auto dropped = [&](int i, int j) { return in_d(i, j) && vid[id(i, j)] < 0; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (!in_d(i, j) || wid[id(i, j)] >= 0 || vid[id(i, j)] < 0) continue;
      const bool near_corner = dropped(i + 1, j) || dropped(i - 1, j) || dropped(i, j + 1) || dropped(i, j - 1);
      if (!near_corner) continue;
      for (const auto& e : dirs) {
        if (in_d(i + e[0], j + e[1])) continue;
        long k[4];
        const double wgt[4] = {1, -3, 3, -1};
        bool ok = true;
        for (int c = 0; c < 2 && ok; ++c) {
          for (int s2 = 0; s2 < 4; ++s2) {
            k[s2] = vcol(i - s2 * e[0], j - s2 * e[1], c);
            ok = ok && k[s2] >= 0;
          }
          if (!ok) break;
          for (int s2 = 0; s2 < 4; ++s2) t0.emplace_back(row, k[s2], wgt[s2]);
          ++row;
        }
      }
    }
  }

  const long ncols = 2 * nv + 2 * nint;
  a0_.resize(row, ncols);
  a2_.resize(row, ncols);
  a0_.setFromTriplets(t0.begin(), t0.end());
  a2_.setFromTriplets(t2.begin(), t2.end());
}

Eigen::SparseMatrix<cplx> ItpDiscretization::matrix(double omega) const {
  Eigen::SparseMatrix<cplx> m = a0_ + (omega * omega) * a2_;
  m.makeCompressed();
  return m;
}

double ItpDiscretization::sigma_min(double omega) const {
  const Eigen::SparseMatrix<cplx> a = matrix(omega);
  const Eigen::SparseMatrix<cplx> n = Eigen::SparseMatrix<cplx>(a.adjoint()) * a;
  Eigen::CholmodSupernodalLLT<Eigen::SparseMatrix<cplx>, Eigen::Lower> ldlt;
  ldlt.compute(n);
  if (ldlt.info() != Eigen::Success) throw SolverError("ITP normal-equation factorization failed");

  // Lanczos on the inverse normal matrix with full reorthogonalization; the
  // largest Ritz value of N^-1 converges to 1 / sigma_min^2.
  const Eigen::Index dim = n.rows();
  const int max_steps = static_cast<int>(std::min<Eigen::Index>(dim, 120));
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd q(dim);
  for (Eigen::Index r = 0; r < dim; ++r) q[r] = cplx(gauss(rng), gauss(rng));
  Eigen::MatrixXcd basis(dim, max_steps);
  Eigen::MatrixXcd image(dim, max_steps);
  basis.col(0) = q.normalized();
  double prev = -1;
  double theta = 0;
  for (int k = 0; k < max_steps; ++k) {
    image.col(k) = ldlt.solve(Eigen::VectorXcd(basis.col(k)));
    const Eigen::MatrixXcd t = basis.leftCols(k + 1).adjoint() * image.leftCols(k + 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (t + t.adjoint()), Eigen::EigenvaluesOnly);
    theta = es.eigenvalues()[k];
    if (prev > 0 && std::abs(theta - prev) <= 1e-9 * theta) break;
    prev = theta;
    if (k + 1 == max_steps) break;
    Eigen::VectorXcd r = image.col(k);
    for (int pass = 0; pass < 2; ++pass) r -= basis.leftCols(k + 1) * (basis.leftCols(k + 1).adjoint() * r);
    const double nr = r.norm();
    if (nr <= 1e-14 * theta) break;
    basis.col(k + 1) = r / nr;
  }
  const double lmin = theta > 0 ? 1.0 / theta : 0.0;
  return std::sqrt(lmin);
}

ItpDip refine_itp_dip(const ItpDiscretization& d, double lo, double hi, double median, double rel_tol) {
  const int bits = std::max(8, static_cast<int>(std::ceil(-std::log2(rel_tol))));
  std::uintmax_t max_iter = 60;
  const auto best = boost::math::tools::brent_find_minima([&d](double w) { return d.sigma_min(w); }, lo, hi, bits, max_iter);
  ItpDip dip;
  dip.omega = best.first;
  dip.sigma_min = best.second;
  dip.depth_ratio = median > 0 ? best.second / median : 0.0;
  return dip;
}

ItpScan itp_scan(const ShapeDescriptor& shape, int nodes, double rho0, const LameParameters& params, double omega_lo,
                 double omega_hi, const ItpOptions& opts) {
  if (!(omega_lo > 0 && omega_hi > omega_lo)) throw ConfigError("omega range must satisfy 0 < lo < hi");
  if (opts.scan_points < 3) throw ConfigError("ITP scan needs at least 3 points");
  const ItpDiscretization d(shape, nodes, params, rho0);
  const double ks = wavenumbers(params, omega_hi).k_s;
  const double per_wavelength = 2 * kPi / (ks * d.h());
  if (per_wavelength < 8.0) {
    throw PreconditionError("ITP lattice resolves only " + std::to_string(per_wavelength) +
                            " points per shear wavelength at omega_max (need >= 8)");
  }

  ItpScan scan;
  scan.h = d.h();
  for (int i = 0; i < opts.scan_points; ++i) {
    const double w = omega_lo + (omega_hi - omega_lo) * i / (opts.scan_points - 1);
    scan.samples.push_back({w, d.sigma_min(w)});
  }
  std::vector<double> s;
  for (const auto& x : scan.samples) s.push_back(x.sigma_min);
  std::sort(s.begin(), s.end());
  scan.median = s.size() % 2 ? s[s.size() / 2] : 0.5 * (s[s.size() / 2 - 1] + s[s.size() / 2]);

  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < scan.samples.size(); ++i) {
    const double b = scan.samples[i].sigma_min;
    if (b < scan.samples[i - 1].sigma_min && b < scan.samples[i + 1].sigma_min) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(),
            [&](std::size_t x, std::size_t y) { return scan.samples[x].sigma_min < scan.samples[y].sigma_min; });
  if (opts.max_refine > 0 && minima.size() > static_cast<std::size_t>(opts.max_refine)) minima.resize(opts.max_refine);
  for (const std::size_t i : minima) {
    const auto& b = scan.samples[i];
    ItpDip dip{b.omega, b.sigma_min, b.sigma_min / scan.median};
    if (opts.refine) dip = refine_itp_dip(d, scan.samples[i - 1].omega, scan.samples[i + 1].omega, scan.median,
                                          opts.refine_rel_tol);
    if (dip.depth_ratio <= opts.report_threshold) scan.dips.push_back(dip);
  }
  std::sort(scan.dips.begin(), scan.dips.end(), [](const ItpDip& x, const ItpDip& y) { return x.depth_ratio < y.depth_ratio; });
  return scan;
}

void to_json(nlohmann::json& j, const ItpScan& s) {
  j["h"] = s.h;
  j["median"] = s.median;
  j["samples"] = nlohmann::json::array();
  for (const auto& x : s.samples) j["samples"].push_back({{"omega", x.omega}, {"sigma_min", x.sigma_min}});
  j["dips"] = nlohmann::json::array();
  for (const auto& d : s.dips) j["dips"].push_back({{"omega", d.omega}, {"sigma_min", d.sigma_min}, {"depth_ratio", d.depth_ratio}});
}

double disk_itp_determinant(const LameParameters& params, double rho0, double radius, int order, double omega) {
  if (!(radius > 0) || !(omega > 0) || order < 0) throw DomainError("disk ITP needs radius > 0, omega > 0, order >= 0");
  const double lam = params.lambda();
  const double mu = params.mu();
  const double n = order;
  const double r = radius;
  const Wavenumbers kw = wavenumbers(params, omega);
  const double sr = std::sqrt(rho0);

  // f = J_n(k r) and its first two radial derivatives.
  auto radial = [&](double k) {
    const double x = k * r;
    const double j = std::cyl_bessel_j(n, x);
    const double jp = n > 0 ? std::cyl_bessel_j(n - 1, x) - n / x * j : -std::cyl_bessel_j(1.0, x);
    const double jpp = -jp / x - (1 - n * n / (x * x)) * j;
    return std::array<double, 3>{j, k * jp, k * k * jpp};
  };
  auto p_column = [&](double k) {
    const auto [f, f1, f2] = radial(k);
    return Eigen::Vector4d(f1, n * f / r, -lam * k * k * f + 2 * mu * f2, mu * n * (2 * f1 / r - 2 * f / (r * r)));
  };
  auto s_column = [&](double k) {
    const auto [g, g1, g2] = radial(k);
    return Eigen::Vector4d(n * g / r, g1, 2 * mu * n * (g1 / r - g / (r * r)), mu * (g2 - g1 / r + n * n * g / (r * r)));
  };
  Eigen::Matrix4d m;
  m.col(0) = p_column(kw.k_p);
  m.col(1) = s_column(kw.k_s);
  m.col(2) = p_column(kw.k_p * sr);
  m.col(3) = s_column(kw.k_s * sr);
  // Positive column scaling keeps the sign and avoids under/overflow at high order.
  for (int c = 0; c < 4; ++c) {
    const double s = m.col(c).cwiseAbs().maxCoeff();
    if (s > 0) m.col(c) /= s;
  }
  return m.determinant();
}

std::vector<DiskItpRoot> disk_transmission_eigenvalues(const LameParameters& params, double rho0, double radius,
                                                       double omega_lo, double omega_hi, int max_order,
                                                       int samples) {
  if (!(omega_lo > 0 && omega_hi > omega_lo)) throw ConfigError("omega range must satisfy 0 < lo < hi");
  if (samples < 2 || max_order < 0) throw ConfigError("disk ITP search needs samples >= 2 and max_order >= 0");
  if (rho0 == 1.0 || !(rho0 > 0)) throw ConfigError("rho0 must be positive and different from one");
  std::vector<DiskItpRoot> roots;
  for (int n = 0; n <= max_order; ++n) {
    auto f = [&](double w) { return disk_itp_determinant(params, rho0, radius, n, w); };
    double w0 = omega_lo;
    double f0 = f(w0);
    for (int i = 1; i < samples; ++i) {
      const double w1 = omega_lo + (omega_hi - omega_lo) * i / (samples - 1);
      const double f1 = f(w1);
      if (f0 == 0) {
        roots.push_back({w0, n});
      } else if (f0 * f1 < 0) {
        std::uintmax_t iters = 100;
        const auto br = boost::math::tools::toms748_solve(f, w0, w1, f0, f1,
                                                          boost::math::tools::eps_tolerance<double>(50), iters);
        roots.push_back({0.5 * (br.first + br.second), n});
      }
      w0 = w1;
      f0 = f1;
    }
  }
  std::sort(roots.begin(), roots.end(), [](const DiskItpRoot& a, const DiskItpRoot& b) { return a.omega < b.omega; });
  return roots;
}

}  // namespace cornerscat
