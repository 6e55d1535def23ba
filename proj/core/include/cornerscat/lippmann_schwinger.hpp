#pragma once

// Volume integral equation for a penetrable scatterer of constant density rho0:
//   u = u_in + omega^2 (rho0 - 1) int_D Gamma(x, y) u(y) dy,
// discretized by the midpoint rule on the grid cells, with the self-cell
// integrated over an equal-area disk. Large grids apply the operator by FFT
// convolution and solve with restarted GMRES; small ones assemble it densely.

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "cornerscat/kupradze.hpp"
#include "cornerscat/scatterer.hpp"

namespace cornerscat {

struct SolverOptions {
  double tol = 1e-8;              ///< relative residual target
  int max_iterations = 4000;      ///< total matrix-vector products
  int restart = 60;
  std::size_t dense_threshold = 2400;  ///< assemble and factor when 2 |D| <= this
};

struct SolveStats {
  bool dense = false;
  int iterations = 0;
  std::vector<double> residual_history;  ///< relative residuals, one per product
  double relative_residual = 0;          ///< recomputed from the final iterate
};

class LippmannSchwinger {
 public:
  LippmannSchwinger(const ScattererGrid& grid, const LameParameters& params, double omega, SolverOptions opts = {});
  ~LippmannSchwinger();
  LippmannSchwinger(const LippmannSchwinger&) = delete;
  LippmannSchwinger& operator=(const LippmannSchwinger&) = delete;

  const ScattererGrid& grid() const { return grid_; }
  const KupradzeKernel& kernel() const { return kernel_; }
  /// omega^2 (rho0 - 1)
  double contrast() const { return contrast_; }
  bool dense() const { return dense_; }
  std::size_t unknowns() const { return 2 * grid_.cells().size(); }

  /// Packed layout: first component on all cells of D, then the second.
  Eigen::VectorXcd pack(const WaveField& f) const;
  WaveField unpack(const Eigen::VectorXcd& v) const;

  /// Discrete volume potential (K_h v)(x_i) = sum_j h^2 Gamma(x_i - x_j) v_j with the self-cell term.
  Eigen::VectorXcd apply_K(const Eigen::VectorXcd& v) const;
  /// (I - contrast K_h) v
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

  /// Total field for the given incident field; throws SolverError (with the
  /// residual history) if the tolerance is not met within the iteration budget.
  WaveField solve(const WaveField& incident, SolveStats* stats = nullptr) const;

  /// Scattered field contrast * int_D Gamma(x, y) u(y) dy at a point outside D.
  CVec2 scattered_at(const WaveField& u, const Vec2& x) const;

 private:
  Eigen::VectorXcd apply_K_fft(const Eigen::VectorXcd& v) const;
  Eigen::VectorXcd gmres(const Eigen::VectorXcd& b, SolveStats& stats) const;

  ScattererGrid grid_;
  KupradzeKernel kernel_;
  SolverOptions opts_;
  double contrast_;
  bool dense_;

  // Kernel table over offsets: entry for (m, n) at ((m + px) % px, (n + py) % py).
  int px_ = 0;
  int py_ = 0;
  std::vector<CMat2> table_;

  struct Fft;
  std::unique_ptr<Fft> fft_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

/// Convenience wrapper: sample the plane wave on D and solve.
WaveField ls_solve(const ScattererGrid& grid, const PlaneWave& incident, const LameParameters& params, double omega,
                   const SolverOptions& opts = {}, SolveStats* stats = nullptr);

struct FarFieldPattern {
  std::vector<double> angles;  ///< observation directions 2 pi l / N
  std::vector<cplx> u_p;       ///< coefficient along xhat
  std::vector<cplx> u_s;       ///< coefficient along xhat_perp

  CVec2 reconstruct(std::size_t l) const;
};

/// Precomputed far-field evaluation at N equally spaced directions:
///   u_p(xhat) = c_p contrast int_D e^{-i k_p xhat.y} xhat.u(y) dy,
///   u_s(xhat) = c_s contrast int_D e^{-i k_s xhat.y} xhat_perp.u(y) dy.
class FarFieldOperator {
 public:
  FarFieldOperator(const ScattererGrid& grid, const LameParameters& params, double omega, int directions);

  FarFieldPattern operator()(const WaveField& u) const;
  /// Packed u (LippmannSchwinger layout) -> (u_p[0..N), u_s[0..N)).
  Eigen::VectorXcd apply(const Eigen::VectorXcd& packed) const;
  int directions() const { return n_; }

 private:
  std::vector<std::size_t> cells_;
  int n_;
  Eigen::MatrixXcd map_;  // 2N x 2|D|
};

FarFieldPattern far_field(const WaveField& u, const ScattererGrid& grid, const LameParameters& params, double omega,
                          int directions);

}  // namespace cornerscat
