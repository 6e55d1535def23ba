#pragma once

// Finite-difference interior transmission problem on a node lattice:
//   L v + omega^2 v = 0,  L w + omega^2 rho0 w = omega^2 (1 - rho0) v  in D,
//   w = 0 and Tw = 0 on the boundary.
// With w = 0 on the boundary, Tw = 0 is equivalent to d_nu w = 0, imposed by
// one-sided second-order differences along each outward axis direction.  The
// system is over-determined, so candidate eigenvalues show up as dips of the
// smallest singular value.

#include <vector>

#include <Eigen/SparseCore>
#include <nlohmann/json.hpp>

#include "cornerscat/elastic.hpp"
#include "cornerscat/scatterer.hpp"

namespace cornerscat {

class ItpDiscretization {
 public:
  /// `nodes` lattice points across the shape's bounding box (boundary included).
  ItpDiscretization(const ShapeDescriptor& shape, int nodes, const LameParameters& params, double rho0);

  double h() const { return h_; }
  std::size_t rows() const { return static_cast<std::size_t>(a0_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(a0_.cols()); }
  std::size_t interior_nodes() const { return interior_count_; }
  std::size_t boundary_nodes() const { return boundary_count_; }

  /// Row-scaled system matrix A0 + omega^2 A2.
  Eigen::SparseMatrix<cplx> matrix(double omega) const;
  /// Smallest singular value of matrix(omega).
  double sigma_min(double omega) const;

 private:
  double h_ = 0;
  std::size_t interior_count_ = 0;
  std::size_t boundary_count_ = 0;
  Eigen::SparseMatrix<cplx> a0_;
  Eigen::SparseMatrix<cplx> a2_;
};

struct ItpOptions {
  int scan_points = 40;
  bool refine = true;
  double refine_rel_tol = 1e-6;
  /// Local minima shallower than this fraction of the window median are not reported.
  double report_threshold = 0.5;
  /// Only the this many lowest local minima are refined (and reported); 0 = all.
  int max_refine = 0;
};

struct ItpSample {
  double omega = 0;
  double sigma_min = 0;
};

struct ItpDip {
  double omega = 0;
  double sigma_min = 0;
  double depth_ratio = 0;  ///< sigma_min / median over the scan
};

struct ItpScan {
  std::vector<ItpSample> samples;
  std::vector<ItpDip> dips;  ///< sorted by depth (deepest first)
  double median = 0;
  double h = 0;
};

/// Throws PreconditionError when h exceeds one eighth of the shear wavelength at omega_hi.
ItpScan itp_scan(const ShapeDescriptor& shape, int nodes, double rho0, const LameParameters& params, double omega_lo,
                 double omega_hi, const ItpOptions& opts = {});

/// Brent refinement of a single dip inside [lo, hi].
ItpDip refine_itp_dip(const ItpDiscretization& d, double lo, double hi, double median, double rel_tol = 1e-6);

void to_json(nlohmann::json& j, const ItpScan& s);

// Separable interior transmission problem on a disk of radius R.  For angular
// order n the regular Navier solutions J_n(k r) e^{in theta} (P and S, outside
// density 1 and inside density rho0) must match in displacement and traction at
// r = R; the 4x4 matching determinant, made real by a diagonal phase scaling,
// changes sign at each transmission eigenvalue of that order.
double disk_itp_determinant(const LameParameters& params, double rho0, double radius, int order, double omega);

struct DiskItpRoot {
  double omega = 0;
  int order = 0;
};

/// Sign-change bracketing on `samples` points per order, then TOMS 748 to full precision.
/// Roots are sorted by omega.
std::vector<DiskItpRoot> disk_transmission_eigenvalues(const LameParameters& params, double rho0, double radius,
                                                       double omega_lo, double omega_hi, int max_order,
                                                       int samples = 400);

}  // namespace cornerscat
