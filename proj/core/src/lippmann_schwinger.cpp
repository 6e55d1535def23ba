#include "cornerscat/lippmann_schwinger.hpp"

#include <cmath>
#include <complex>
#include <fftw3.h>
#include <mutex>

#include "cornerscat/errors.hpp"

namespace cornerscat {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

// The FFTW planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Complex Givens rotation zeroing b in (a, b).
struct Givens {
  double c = 1;
  cplx s = 0;
  void make(const cplx& a, const cplx& b) {
    const double aa = std::abs(a);
    if (aa == 0.0) {
      c = 0;
      s = 1;
      return;
    }
    const double t = std::hypot(aa, std::abs(b));
    c = aa / t;
    s = (a / aa) * std::conj(b) / t;
  }
  void apply(cplx& x, cplx& y) const {
    const cplx nx = c * x + s * y;
    y = -std::conj(s) * x + c * y;
    x = nx;
  }
};
}  // namespace

struct LippmannSchwinger::Fft {
  int n = 0;
  fftw_complex* a = nullptr;
  fftw_complex* b = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<cplx> k11, k12, k22;  // transformed kernel components, pre-scaled by 1/n

  Fft(int px, int py) : n(px * py) {
    const std::lock_guard<std::mutex> lock(planner_mutex());
    a = fftw_alloc_complex(static_cast<std::size_t>(n));
    b = fftw_alloc_complex(static_cast<std::size_t>(n));
    // ESTIMATE keeps plans (and therefore results) reproducible run to run.
    fwd = fftw_plan_dft_2d(py, px, a, a, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_2d(py, px, a, a, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    const std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(a);
    fftw_free(b);
  }
  cplx* ca() { return reinterpret_cast<cplx*>(a); }
  cplx* cb() { return reinterpret_cast<cplx*>(b); }
};

LippmannSchwinger::LippmannSchwinger(const ScattererGrid& grid, const LameParameters& params, double omega,
                                     SolverOptions opts)
    : grid_(grid), kernel_(params, omega), opts_(opts) {
  if (!(opts_.tol > 0)) throw ConfigError("solver tolerance must be positive");
  const double cells_per_wavelength = 2 * kPi / (kernel_.k().k_s * grid_.h());
  if (cells_per_wavelength < 8.0) {
    throw PreconditionError("grid resolves only " + std::to_string(cells_per_wavelength) +
                            " cells per shear wavelength (need >= 8)");
  }
  contrast_ = omega * omega * (grid_.rho0() - 1.0);
  dense_ = unknowns() <= opts_.dense_threshold;

  px_ = 2 * grid_.nx();
  py_ = 2 * grid_.ny();
  table_.assign(static_cast<std::size_t>(px_) * py_, CMat2::Zero());
  const double h = grid_.h();
  const double h2 = h * h;
  for (int n = -(grid_.ny() - 1); n <= grid_.ny() - 1; ++n) {
    for (int m = -(grid_.nx() - 1); m <= grid_.nx() - 1; ++m) {
      const std::size_t at = static_cast<std::size_t>((n + py_) % py_) * px_ + static_cast<std::size_t>((m + px_) % px_);
      table_[at] = (m == 0 && n == 0) ? kernel_.self_cell(h) : CMat2(h2 * kernel_.at(Vec2(m * h, n * h)));
    }
  }

  const auto& cells = grid_.cells();
  const std::size_t nd = cells.size();
  if (dense_) {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(2 * nd, 2 * nd);
    for (std::size_t q = 0; q < nd; ++q) {
      const int iq = static_cast<int>(cells[q] % grid_.nx());
      const int jq = static_cast<int>(cells[q] / grid_.nx());
      for (std::size_t r = 0; r < nd; ++r) {
        const int m = iq - static_cast<int>(cells[r] % grid_.nx());
        const int n = jq - static_cast<int>(cells[r] / grid_.nx());
        const CMat2& g = table_[static_cast<std::size_t>((n + py_) % py_) * px_ + static_cast<std::size_t>((m + px_) % px_)];
        A(q, r) -= contrast_ * g(0, 0);
        A(q, nd + r) -= contrast_ * g(0, 1);
        A(nd + q, r) -= contrast_ * g(1, 0);
        A(nd + q, nd + r) -= contrast_ * g(1, 1);
      }
    }
    lu_.compute(A);
  }

  fft_ = std::make_unique<Fft>(px_, py_);
  const std::size_t total = static_cast<std::size_t>(px_) * py_;
  auto transform = [&](int r, int c) {
    for (std::size_t i = 0; i < total; ++i) fft_->ca()[i] = table_[i](r, c);
    fftw_execute_dft(fft_->fwd, fft_->a, fft_->a);
    std::vector<cplx> out(fft_->ca(), fft_->ca() + total);
    for (auto& z : out) z /= static_cast<double>(total);
    return out;
  };
  fft_->k11 = transform(0, 0);
  fft_->k12 = transform(0, 1);
  fft_->k22 = transform(1, 1);
}

LippmannSchwinger::~LippmannSchwinger() = default;

Eigen::VectorXcd LippmannSchwinger::pack(const WaveField& f) const {
  const auto& cells = grid_.cells();
  const std::size_t nd = cells.size();
  Eigen::VectorXcd v(2 * nd);
  for (std::size_t q = 0; q < nd; ++q) {
    v[q] = f.values[cells[q]].x();
    v[nd + q] = f.values[cells[q]].y();
  }
  return v;
}

WaveField LippmannSchwinger::unpack(const Eigen::VectorXcd& v) const {
  const auto& cells = grid_.cells();
  const std::size_t nd = cells.size();
  WaveField f = WaveField::zeros(grid_);
  for (std::size_t q = 0; q < nd; ++q) f.values[cells[q]] = CVec2(v[q], v[nd + q]);
  return f;
}

Eigen::VectorXcd LippmannSchwinger::apply_K_fft(const Eigen::VectorXcd& v) const {
  const auto& cells = grid_.cells();
  const std::size_t nd = cells.size();
  const std::size_t total = static_cast<std::size_t>(px_) * py_;
  Fft& f = *fft_;
  std::fill(f.ca(), f.ca() + total, cplx(0));
  std::fill(f.cb(), f.cb() + total, cplx(0));
  auto padded = [&](std::size_t idx) {
    return static_cast<std::size_t>(idx / grid_.nx()) * px_ + idx % grid_.nx();
  };
  for (std::size_t q = 0; q < nd; ++q) {
    const std::size_t p = padded(cells[q]);
    f.ca()[p] = v[q];
    f.cb()[p] = v[nd + q];
  }
  fftw_execute_dft(f.fwd, f.a, f.a);
  fftw_execute_dft(f.fwd, f.b, f.b);
  // Written out by hand: std::complex operator* goes through the C99 Annex G
  // slow path here and dominates the product otherwise.
  double* a = reinterpret_cast<double*>(f.a);
  double* b = reinterpret_cast<double*>(f.b);
  const double* k11 = reinterpret_cast<const double*>(f.k11.data());
  const double* k12 = reinterpret_cast<const double*>(f.k12.data());
  const double* k22 = reinterpret_cast<const double*>(f.k22.data());
  for (std::size_t i = 0; i < 2 * total; i += 2) {
    const double xr = a[i], xi = a[i + 1], yr = b[i], yi = b[i + 1];
    a[i] = k11[i] * xr - k11[i + 1] * xi + k12[i] * yr - k12[i + 1] * yi;
    a[i + 1] = k11[i] * xi + k11[i + 1] * xr + k12[i] * yi + k12[i + 1] * yr;
    b[i] = k12[i] * xr - k12[i + 1] * xi + k22[i] * yr - k22[i + 1] * yi;
    b[i + 1] = k12[i] * xi + k12[i + 1] * xr + k22[i] * yi + k22[i + 1] * yr;
  }
  fftw_execute_dft(f.bwd, f.a, f.a);
  fftw_execute_dft(f.bwd, f.b, f.b);
  Eigen::VectorXcd out(2 * nd);
  for (std::size_t q = 0; q < nd; ++q) {
    const std::size_t p = padded(cells[q]);
    out[q] = f.ca()[p];
    out[nd + q] = f.cb()[p];
  }
  return out;
}

Eigen::VectorXcd LippmannSchwinger::apply_K(const Eigen::VectorXcd& v) const {
  if (static_cast<std::size_t>(v.size()) != unknowns()) throw PreconditionError("vector size does not match the grid");
  return apply_K_fft(v);
}

Eigen::VectorXcd LippmannSchwinger::apply(const Eigen::VectorXcd& v) const { return v - contrast_ * apply_K(v); }

Eigen::VectorXcd LippmannSchwinger::gmres(const Eigen::VectorXcd& b, SolveStats& stats) const {
  const Eigen::Index n = b.size();
  const int m = std::max(1, opts_.restart);
  const double bnorm = b.norm();
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  if (bnorm == 0.0) {
    stats.residual_history.push_back(0.0);
    return x;
  }
  const double target = opts_.tol * bnorm;

  Eigen::MatrixXcd V(n, m + 1);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
  std::vector<Givens> rot(static_cast<std::size_t>(m));
  Eigen::VectorXcd g(m + 1);

  Eigen::VectorXcd r = b;
  double beta = bnorm;
  stats.residual_history.push_back(1.0);
  while (stats.iterations < opts_.max_iterations) {
    V.col(0) = r / beta;
    g.setZero();
    g[0] = beta;
    H.setZero();
    int j = 0;
    bool done = false;
    for (; j < m && stats.iterations < opts_.max_iterations; ++j) {
      Eigen::VectorXcd w = apply(V.col(j));
      ++stats.iterations;
      // classical Gram-Schmidt, applied twice
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXcd hcol = V.leftCols(j + 1).adjoint() * w;
        w.noalias() -= V.leftCols(j + 1) * hcol;
        H.col(j).head(j + 1) += hcol;
      }
      const double hn = w.norm();
      H(j + 1, j) = hn;
      if (hn > 0) V.col(j + 1) = w / hn;
      for (int i = 0; i < j; ++i) rot[static_cast<std::size_t>(i)].apply(H(i, j), H(i + 1, j));
      rot[static_cast<std::size_t>(j)].make(H(j, j), H(j + 1, j));
      rot[static_cast<std::size_t>(j)].apply(H(j, j), H(j + 1, j));
      rot[static_cast<std::size_t>(j)].apply(g[j], g[j + 1]);
      const double res = std::abs(g[j + 1]);
      stats.residual_history.push_back(res / bnorm);
      if (res <= target || hn == 0) {
        ++j;
        done = true;
        break;
      }
    }
    const Eigen::VectorXcd y =
        H.topLeftCorner(j, j).triangularView<Eigen::Upper>().solve(g.head(j));
    x.noalias() += V.leftCols(j) * y;
    r = b - apply(x);
    beta = r.norm();
    if (beta <= target) break;
    if (done && beta > target) continue;  // implicit residual was optimistic; keep going
  }
  return x;
}

WaveField LippmannSchwinger::solve(const WaveField& incident, SolveStats* stats_out) const {
  SolveStats stats;
  const Eigen::VectorXcd b = pack(incident);
  Eigen::VectorXcd x;
  if (dense_) {
    stats.dense = true;
    x = lu_.solve(b);
  } else {
    x = gmres(b, stats);
  }
  const double bnorm = b.norm();
  stats.relative_residual = bnorm > 0 ? (apply(x) - b).norm() / bnorm : 0.0;
  if (stats.dense) stats.residual_history.push_back(stats.relative_residual);
  if (stats_out) *stats_out = stats;
  if (!(stats.relative_residual <= opts_.tol)) {
    throw SolverError("Lippmann-Schwinger solve did not reach tol " + std::to_string(opts_.tol) + " (residual " +
                          std::to_string(stats.relative_residual) + " after " + std::to_string(stats.iterations) +
                          " products)",
                      stats.residual_history);
  }
  return unpack(x);
}

CVec2 LippmannSchwinger::scattered_at(const WaveField& u, const Vec2& x) const {
  CVec2 s = CVec2::Zero();
  const double h2 = grid_.h() * grid_.h();
  for (auto idx : grid_.cells()) s += kernel_.at(x - grid_.center(idx)) * u.values[idx];
  return contrast_ * h2 * s;
}

WaveField ls_solve(const ScattererGrid& grid, const PlaneWave& incident, const LameParameters& params, double omega,
                   const SolverOptions& opts, SolveStats* stats) {
  const LippmannSchwinger ls(grid, params, omega, opts);
  return ls.solve(sample_plane_wave(grid, incident), stats);
}

CVec2 FarFieldPattern::reconstruct(std::size_t l) const {
  const Vec2 xh(std::cos(angles[l]), std::sin(angles[l]));
  const Vec2 xp(-xh.y(), xh.x());
  return u_p[l] * xh.cast<cplx>() + u_s[l] * xp.cast<cplx>();
}

FarFieldOperator::FarFieldOperator(const ScattererGrid& grid, const LameParameters& params, double omega,
                                   int directions)
    : cells_(grid.cells()), n_(directions) {
  if (directions < 1) throw ConfigError("need at least one far-field direction");
  const Wavenumbers k = wavenumbers(params, omega);
  const FarFieldConstants c = farfield_constants(params, omega);
  const double w = omega * omega * (grid.rho0() - 1.0) * grid.h() * grid.h();
  const std::size_t nd = cells_.size();
  map_.resize(2 * n_, static_cast<Eigen::Index>(2 * nd));
  for (int l = 0; l < n_; ++l) {
    const double th = 2 * kPi * l / n_;
    const Vec2 xh(std::cos(th), std::sin(th));
    const Vec2 xp(-xh.y(), xh.x());
    for (std::size_t q = 0; q < nd; ++q) {
      const Vec2 y = grid.center(cells_[q]);
      const cplx ep = w * c.c_p * std::exp(-kI * k.k_p * xh.dot(y));
      const cplx es = w * c.c_s * std::exp(-kI * k.k_s * xh.dot(y));
      map_(l, q) = ep * xh.x();
      map_(l, nd + q) = ep * xh.y();
      map_(n_ + l, q) = es * xp.x();
      map_(n_ + l, nd + q) = es * xp.y();
    }
  }
}

Eigen::VectorXcd FarFieldOperator::apply(const Eigen::VectorXcd& packed) const { return map_ * packed; }

FarFieldPattern FarFieldOperator::operator()(const WaveField& u) const {
  const std::size_t nd = cells_.size();
  Eigen::VectorXcd v(2 * nd);
  for (std::size_t q = 0; q < nd; ++q) {
    v[q] = u.values[cells_[q]].x();
    v[nd + q] = u.values[cells_[q]].y();
  }
  const Eigen::VectorXcd r = apply(v);
  FarFieldPattern p;
  for (int l = 0; l < n_; ++l) {
    p.angles.push_back(2 * kPi * l / n_);
    p.u_p.push_back(r[l]);
    p.u_s.push_back(r[n_ + l]);
  }
  return p;
}

FarFieldPattern far_field(const WaveField& u, const ScattererGrid& grid, const LameParameters& params, double omega,
                          int directions) {
  return FarFieldOperator(grid, params, omega, directions)(u);
}

}  // namespace cornerscat
