#pragma once

// Discretized far-field operator, Herglotz synthesis and frequency sweeps of
// sigma_min(F) / sigma_median(F).

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "cornerscat/lippmann_schwinger.hpp"

namespace cornerscat {

/// Coefficients (g_p, g_s) at the N direction nodes 2 pi j / N.
struct HerglotzDensity {
  std::vector<cplx> g_p;
  std::vector<cplx> g_s;

  static HerglotzDensity zeros(int n) { return {std::vector<cplx>(n), std::vector<cplx>(n)}; }
  int size() const { return static_cast<int>(g_p.size()); }
};

/// Trapezoidal rule for
///   u_g(x) = e^{-i pi/4} int_S { sqrt(k_p/omega) e^{i k_p d.x} d g_p(d)
///                               + sqrt(k_s/omega) e^{i k_s d.x} d_perp g_s(d) } ds(d),
/// with value and Jacobian.
FieldSample herglotz_eval(const HerglotzDensity& g, const LameParameters& params, double omega, const Vec2& x);

/// The incident field on D of the j-th P (kind = P) or S node of the Herglotz
/// quadrature, prefactors and weight 2 pi / N included.
WaveField herglotz_node_field(const ScattererGrid& grid, const LameParameters& params, double omega, int n, int j,
                              WaveKind kind);

struct FarFieldMatrix {
  int n = 0;  ///< directions
  double omega = 0;
  std::string scatterer;
  /// 2N x 2N.  Rows: u_p at node l (first N), u_s at node l (last N).
  /// Columns: Herglotz P node j (first N), S node j (last N).  F g = (u_g)^infinity.
  Eigen::MatrixXcd F;

  Eigen::VectorXd singular_values() const;  ///< descending
};

struct AssembleStats {
  long total_iterations = 0;
  double max_residual = 0;
};

/// Solves the 2N incident problems.  A solver failure aborts with the failing direction.
FarFieldMatrix assemble_F(const ScattererGrid& grid, const LameParameters& params, double omega, int n,
                          const SolverOptions& opts = {}, AssembleStats* stats = nullptr);

/// Singular values of F restricted to the Fourier modes q = residue (mod 4) in
/// both the incident and the observation variable.  On a grid that is invariant
/// under quarter turns (disk or square on a square box) and n divisible by 4, F
/// is exactly block diagonal in these classes, so this is a quarter of sigma(F)
/// at a quarter of the solves.  PreconditionError otherwise.
Eigen::VectorXd quarter_turn_block_singular_values(const ScattererGrid& grid, const LameParameters& params,
                                                   double omega, int n, int residue, const SolverOptions& opts = {});

struct SingularSummary {
  double sigma_min = 0;
  double sigma_median = 0;
  double sigma_max = 0;
  double ratio() const { return sigma_median > 0 ? sigma_min / sigma_median : 0.0; }
};

SingularSummary summarize(const Eigen::VectorXd& sigma);

struct SweepSample {
  double omega = 0;
  SingularSummary sigma;
  long iterations = 0;
  std::optional<std::string> error;  ///< solver failure at this frequency
};

struct SweepReport {
  std::string scatterer;
  int n = 0;
  std::vector<SweepSample> samples;  ///< increasing omega

  /// Smallest sigma_min / sigma_median over successful samples.
  double min_ratio() const;
  const SweepSample* argmin() const;
};

/// `samples` equally spaced frequencies including both endpoints (samples >= 20).
/// Frequencies are independent; `jobs` worker threads each own their solver and
/// the report is assembled in omega order, so results do not depend on `jobs`.
SweepReport injectivity_sweep(const ScattererGrid& grid, const LameParameters& params, double omega_lo,
                              double omega_hi, int n, int samples, const SolverOptions& opts = {}, int jobs = 1);

/// Evaluates the given frequencies (any order); output sorted by omega.
SweepReport sweep_at(const ScattererGrid& grid, const LameParameters& params, const std::vector<double>& omegas, int n,
                     const SolverOptions& opts = {}, int jobs = 1);

void to_json(nlohmann::json& j, const SweepReport& r);

}  // namespace cornerscat
