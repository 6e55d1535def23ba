// Acceptance runner: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "cornerscat/corner_induction.hpp"
#include "cornerscat/elastic.hpp"
#include "cornerscat/hankel.hpp"
#include "cornerscat/headline.hpp"
#include "cornerscat/kupradze.hpp"
#include "cornerscat/verification.hpp"
#include "oracles.hpp"

using namespace cornerscat;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!ok) detail << " [failed: " << what << "]";
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void failures_into(const CheckReport& r, Verdict& v) {
  for (const auto& c : r.checks) v.require(c.passed, c.name + ": " + c.detail);
}

Verdict exact_algebra() {
  Verdict v;
  const auto t0 = Clock::now();
  const CheckReport r = verify_algebra({});
  const double s = since(t0);
  failures_into(r, v);
  v.require(s < 5.0, "runtime < 5 s");
  v.detail << r.checks.size() << " families exact, " << s << " s";
  return v;
}

Verdict induction_certificate() {
  Verdict v;
  const auto t0 = Clock::now();
  const InductionSuite suite = verify_induction({});
  const double s = since(t0);
  failures_into(suite.report, v);
  v.require(s < 60.0, "runtime < 60 s");
  v.detail << "50 pairs x orders 0..16, " << s << " s";
  return v;
}

Verdict printed_diff() {
  Verdict v;
  const auto t0 = Clock::now();
  std::size_t entries = 0, mismatches = 0;
  for (int n : {4, 5, 6}) {
    const auto c = induction::compare_printed_systems(n);
    entries += c.entries.size();
    mismatches += c.mismatches();
    v.require(!c.entries.empty(), "diff generated at order " + std::to_string(n));
    v.require(c.certified && c.edges_determined, "derived system certifies order " + std::to_string(n));
  }
  const double s = since(t0);
  v.require(s < 1.0, "runtime < 1 s");
  v.detail << entries << " entries compared, " << mismatches << " differ, " << s << " s";
  return v;
}

Verdict special_functions() {
  Verdict v;
  double worst = 0, wronskian = 0, recurrence = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = oracle::log_point(i, 1000);
    const Hankel012 h = hankel1_012(x);
    const std::complex<double> got[3] = {h.h0, h.h1, h.h2};
    for (int n = 0; n <= 2; ++n) {
      const auto ref = oracle::hankel(n, x);
      worst = std::max(worst, std::abs(got[n] - ref) / std::abs(ref));
    }
    for (int n = 0; n <= 1; ++n) {
      const double w = bessel_j(n + 1, x) * bessel_y(n, x) - bessel_j(n, x) * bessel_y(n + 1, x);
      wronskian = std::max(wronskian, std::abs(w * kPi * x / 2.0 - 1.0));
    }
    const auto rhs = 2.0 / x * h.h1;
    recurrence = std::max(recurrence, std::abs(h.h0 + h.h2 - rhs) / std::abs(rhs));
  }
  v.require(worst <= 1e-10, "Hankel vs MPFR");
  v.require(wronskian <= 1e-10, "Wronskian");
  v.require(recurrence <= 1e-10, "recurrence");
  v.detail << "max rel err " << worst << ", Wronskian " << wronskian << ", recurrence " << recurrence;
  return v;
}

Verdict fundamental_solution() {
  Verdict v;
  const LameParameters params(1.0, 1.0);
  const KupradzeKernel K(params, 2.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(-2, 2), dist(0.5, 3.0), ang(0, 2 * kPi);
  double residual = 0, symmetry = 0;
  for (int i = 0; i < 50; ++i) {
    const Vec2 y(pos(rng), pos(rng));
    const double r = dist(rng), t = ang(rng);
    const Vec2 x = y + r * Vec2(std::cos(t), std::sin(t));
    for (int c = 0; c < 2; ++c) residual = std::max(residual, oracle::navier_residual(K, x, y, c, 5e-3));
    const CMat2 a = K(x, y), b = K(y, x).transpose();
    symmetry = std::max(symmetry, (a - b).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff());
  }
  double drift = 0;
  for (double omega : {0.5, 1.0, 3.0}) {
    const auto c200 = calibrate_farfield_constants(params, omega, 200);
    const auto c400 = calibrate_farfield_constants(params, omega, 400);
    drift = std::max({drift, std::abs(c200.c_p - c400.c_p) / std::abs(c400.c_p),
                      std::abs(c200.c_s - c400.c_s) / std::abs(c400.c_s)});
  }
  v.require(residual < 1e-5, "Navier residual");
  v.require(symmetry <= 1e-12, "symmetry");
  v.require(drift <= 1e-3, "far-field constants 200 vs 400 wavelengths");
  v.detail << "residual " << residual << ", symmetry " << symmetry << ", calibration drift " << drift;
  return v;
}

Verdict solver_sanity() {
  Verdict v;
  const auto t0 = Clock::now();
  const LameParameters p(1.0, 1.0);
  SolverOptions o;
  o.tol = 1e-12;
  double zero = 0;
  for (double rho0 : {1 + 1e-12, 1 - 1e-12}) {
    const ScattererGrid g = ScattererGrid::disk(1.0, 48, rho0);
    const PlaneWave w{WaveKind::S, Direction::from_angle(1.0), wavenumbers(p, 2.0)};
    const auto ff = oracle::stacked(far_field(ls_solve(g, w, p, 2.0, o), g, p, 2.0, 16));
    zero = std::max(zero, ff.cwiseAbs().maxCoeff());
  }
  const double born = oracle::born_ratio(p, 2.0, 1.0, 48);
  const double order = oracle::disk_convergence_order(p, 1.0, 1.0, 12, 2.0);
  const double s = since(t0);
  v.require(zero <= 1e-9, "zero-contrast far field");
  v.require(born >= 3.5 && born <= 4.5, "Born ratio");
  v.require(order >= 1.8, "disk self-convergence order");
  v.require(s < 120.0, "runtime < 2 min");
  v.detail << "zero-contrast " << zero << ", Born ratio " << born << ", order " << order << ", " << s << " s";
  return v;
}

Verdict headline() {
  Verdict v;
  const HeadlineReport r = run_headline({}, [](const std::string& m) { std::fprintf(stderr, "    %s\n", m.c_str()); });
  failures_into(r.checks, v);
  v.require(r.seconds < 600.0, "runtime < 10 min");
  v.detail << "rectangle ITP dip " << r.rectangle.dip.omega << " (depth " << r.rectangle.dip.depth_ratio
           << "), rectangle floor " << r.rectangle.floor << ", ratio at dip " << r.rectangle.ratio_at_dip
           << "; disk ITE " << r.disk.ite.omega << ", sigma ratio " << r.disk.dip.sigma.ratio() << "; "
           << r.seconds << " s";
  return v;
}

Verdict vanishing_traction() {
  Verdict v;
  const CheckReport r = verify_vanishing_traction(100, 1, 1e-12);
  failures_into(r, v);
  v.detail << r.checks.size() << " checks over 100 fields";
  return v;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"1 exact algebra", exact_algebra},
      {"2 induction certificate", induction_certificate},
      {"3 printed-system diff", printed_diff},
      {"4 special functions", special_functions},
      {"5 fundamental solution", fundamental_solution},
      {"6 solver sanity", solver_sanity},
      {"7 headline experiment", headline},
      {"8 vanishing-field traction", vanishing_traction},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    failed += !v.pass;
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
