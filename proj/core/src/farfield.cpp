#include "cornerscat/farfield.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "cornerscat/errors.hpp"

namespace cornerscat {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0.0, 1.0);

cplx herglotz_prefactor(double k, double omega, int n) {
  return std::polar(1.0, -kPi / 4) * std::sqrt(k / omega) * (2 * kPi / n);
}
}  // namespace

FieldSample herglotz_eval(const HerglotzDensity& g, const LameParameters& params, double omega, const Vec2& x) {
  const int n = g.size();
  if (n == 0 || static_cast<int>(g.g_s.size()) != n) throw PreconditionError("Herglotz density needs matching g_p, g_s");
  const Wavenumbers k = wavenumbers(params, omega);
  const cplx ap = herglotz_prefactor(k.k_p, omega, n);
  const cplx as = herglotz_prefactor(k.k_s, omega, n);
  FieldSample out;
  out.jacobian = CMat2::Zero();
  for (int j = 0; j < n; ++j) {
    const Direction d = Direction::from_angle(2 * kPi * j / n);
    if (g.g_p[static_cast<std::size_t>(j)] != cplx(0)) {
      const FieldSample s = plane_wave_eval(PlaneWave{WaveKind::P, d, k}, x);
      const cplx c = ap * g.g_p[static_cast<std::size_t>(j)];
      out.value += c * s.value;
      *out.jacobian += c * *s.jacobian;
    }
    if (g.g_s[static_cast<std::size_t>(j)] != cplx(0)) {
      const FieldSample s = plane_wave_eval(PlaneWave{WaveKind::S, d, k}, x);
      const cplx c = as * g.g_s[static_cast<std::size_t>(j)];
      out.value += c * s.value;
      *out.jacobian += c * *s.jacobian;
    }
  }
  return out;
}

WaveField herglotz_node_field(const ScattererGrid& grid, const LameParameters& params, double omega, int n, int j,
                              WaveKind kind) {
  const Wavenumbers k = wavenumbers(params, omega);
  const PlaneWave wave{kind, Direction::from_angle(2 * kPi * j / n), k};
  WaveField f = sample_plane_wave(grid, wave);
  const cplx pre = herglotz_prefactor(wave.k(), omega, n);
  for (auto idx : grid.cells()) f.values[idx] *= pre;
  return f;
}

Eigen::VectorXd FarFieldMatrix::singular_values() const {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(F).singularValues();
}

FarFieldMatrix assemble_F(const ScattererGrid& grid, const LameParameters& params, double omega, int n,
                          const SolverOptions& opts, AssembleStats* stats) {
  if (n < 1) throw ConfigError("need at least one direction");
  const LippmannSchwinger ls(grid, params, omega, opts);
  const FarFieldOperator far(grid, params, omega, n);
  FarFieldMatrix out;
  out.n = n;
  out.omega = omega;
  out.scatterer = grid.shape().str();
  out.F.resize(2 * n, 2 * n);
  AssembleStats local;
  for (int col = 0; col < 2 * n; ++col) {
    const WaveKind kind = col < n ? WaveKind::P : WaveKind::S;
    const int j = col % n;
    SolveStats st;
    WaveField u;
    try {
      u = ls.solve(herglotz_node_field(grid, params, omega, n, j, kind), &st);
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " [incident " + (kind == WaveKind::P ? "P" : "S") + " direction " +
                            std::to_string(j) + "/" + std::to_string(n) + ", omega " + std::to_string(omega) + "]",
                        e.residual_history());
    }
    local.total_iterations += st.iterations;
    local.max_residual = std::max(local.max_residual, st.relative_residual);
    out.F.col(col) = far.apply(ls.pack(u));
  }
  if (stats) *stats = local;
  return out;
}

Eigen::VectorXd quarter_turn_block_singular_values(const ScattererGrid& grid, const LameParameters& params,
                                                   double omega, int n, int residue, const SolverOptions& opts) {
  const ShapeDescriptor& s = grid.shape();
  const bool square_box = grid.nx() == grid.ny() && (s.kind == ShapeKind::Disk ||
                                                     (s.kind == ShapeKind::Rectangle && s.width == s.height));
  if (!square_box) throw PreconditionError("quarter-turn block needs a disk or square on a square grid");
  if (n < 4 || n % 4 != 0) throw PreconditionError("quarter-turn block needs a direction count divisible by 4");
  const int r = ((residue % 4) + 4) % 4;
  const int m = n / 4;
  const LippmannSchwinger ls(grid, params, omega, opts);
  const FarFieldOperator far(grid, params, omega, n);
  const double pi = 3.14159265358979323846;

  std::vector<Eigen::VectorXcd> nodes[2];
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < n; ++j)
      nodes[k].push_back(ls.pack(herglotz_node_field(grid, params, omega, n, j, k == 0 ? WaveKind::P : WaveKind::S)));

  // Unitary Fourier change of basis: column mode q gets density e^{i q theta_j},
  // row mode q' is read off as (1/n) sum_l e^{-i q' theta_l} F(l).
  Eigen::MatrixXcd B(2 * m, 2 * m);
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < m; ++a) {
      const int q = r + 4 * a;
      Eigen::VectorXcd in = Eigen::VectorXcd::Zero(nodes[k][0].size());
      for (int j = 0; j < n; ++j) in += std::polar(1.0, 2 * pi * q * j / n) * nodes[k][j];
      const Eigen::VectorXcd f = far.apply(ls.pack(ls.solve(ls.unpack(in))));
      for (int t = 0; t < 2; ++t)
        for (int b = 0; b < m; ++b) {
          const int qr = r + 4 * b;
          cplx acc = 0;
          for (int l = 0; l < n; ++l) acc += std::polar(1.0, -2 * pi * qr * l / n) * f(t * n + l);
          B(t * m + b, k * m + a) = acc / static_cast<double>(n);
        }
    }
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(B).singularValues();
}

SingularSummary summarize(const Eigen::VectorXd& sigma) {
  if (sigma.size() == 0) throw PreconditionError("no singular values");
  std::vector<double> s(sigma.data(), sigma.data() + sigma.size());
  std::sort(s.begin(), s.end());
  SingularSummary r;
  r.sigma_min = s.front();
  r.sigma_max = s.back();
  const std::size_t m = s.size();
  r.sigma_median = m % 2 ? s[m / 2] : 0.5 * (s[m / 2 - 1] + s[m / 2]);
  return r;
}

double SweepReport::min_ratio() const {
  const SweepSample* a = argmin();
  return a ? a->sigma.ratio() : 0.0;
}

const SweepSample* SweepReport::argmin() const {
  const SweepSample* best = nullptr;
  for (const auto& s : samples) {
    if (s.error) continue;
    if (!best || s.sigma.ratio() < best->sigma.ratio()) best = &s;
  }
  return best;
}

SweepReport sweep_at(const ScattererGrid& grid, const LameParameters& params, const std::vector<double>& omegas, int n,
                     const SolverOptions& opts, int jobs) {
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  SweepReport r;
  r.scatterer = grid.shape().str();
  r.n = n;
  std::vector<double> w = omegas;
  std::sort(w.begin(), w.end());
  r.samples.resize(w.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < w.size(); i = next++) {
      SweepSample& s = r.samples[i];
      s.omega = w[i];
      try {
        AssembleStats st;
        const FarFieldMatrix F = assemble_F(grid, params, w[i], n, opts, &st);
        s.sigma = summarize(F.singular_values());
        s.iterations = st.total_iterations;
      } catch (const SolverError& e) {
        s.error = e.what();
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = w.size();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::min<int>(jobs, static_cast<int>(w.size())); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return r;
}

SweepReport injectivity_sweep(const ScattererGrid& grid, const LameParameters& params, double omega_lo,
                              double omega_hi, int n, int samples, const SolverOptions& opts, int jobs) {
  if (samples < 20) throw ConfigError("injectivity sweep needs at least 20 samples");
  if (!(omega_lo > 0 && omega_hi > omega_lo)) throw ConfigError("omega range must satisfy 0 < lo < hi");
  if (n < 16 || n % 2) throw ConfigError("direction count must be even and at least 16");
  std::vector<double> w;
  for (int i = 0; i < samples; ++i) w.push_back(omega_lo + (omega_hi - omega_lo) * i / (samples - 1));
  return sweep_at(grid, params, w, n, opts, jobs);
}

void to_json(nlohmann::json& j, const SweepReport& r) {
  j["scatterer"] = r.scatterer;
  j["directions"] = r.n;
  j["samples"] = nlohmann::json::array();
  for (const auto& s : r.samples) {
    nlohmann::json e{{"omega", s.omega},
                     {"sigma_min", s.sigma.sigma_min},
                     {"sigma_median", s.sigma.sigma_median},
                     {"sigma_max", s.sigma.sigma_max},
                     {"ratio", s.sigma.ratio()},
                     {"iterations", s.iterations}};
    if (s.error) e["error"] = *s.error;
    j["samples"].push_back(e);
  }
  j["min_ratio"] = r.min_ratio();
}

}  // namespace cornerscat
