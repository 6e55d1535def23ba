#include "cornerscat/headline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "cornerscat/errors.hpp"

namespace cornerscat {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

FarFieldProbe probe(const ScattererGrid& grid, const LameParameters& params, double omega, int n,
                    const SolverOptions& opts, std::string label) {
  const FarFieldMatrix F = assemble_F(grid, params, omega, n, opts);
  return {std::move(label), omega, summarize(F.singular_values())};
}

// Brent search of sigma_min over the quarter-turn block holding `residue`
// (sigma_min^2 is locally quadratic in omega at an avoided crossing), then one
// full F at the minimizer for the reported ratio.
FarFieldProbe minimize_disk_ratio(const ScattererGrid& grid, const LameParameters& params, int n, int residue,
                                  const SolverOptions& opts, double lo, double hi, int evaluations,
                                  const std::string& label) {
  auto f = [&](double w) {
    const double s = quarter_turn_block_singular_values(grid, params, w, n, residue, opts).minCoeff();
    return s * s;
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(std::max(1, evaluations));
  const double w = boost::math::tools::brent_find_minima(f, lo, hi, 24, iters).first;
  return probe(grid, params, w, n, opts, label + " (" + std::to_string(iters) + " block evaluations)");
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

bool within_factor(double a, double b, double factor) {
  return a > 0 && b > 0 && a <= factor * b && b <= factor * a;
}

}  // namespace

HeadlineReport run_headline(const HeadlineConfig& cfg, const ProgressFn& progress) {
  const auto t0 = std::chrono::steady_clock::now();
  auto say = [&](const std::string& s) {
    if (progress) progress(s);
  };
  HeadlineReport rep;
  rep.config = cfg;
  const LameParameters params(cfg.lambda, cfg.mu);
  const int n = cfg.directions;
  auto& checks = rep.checks;
  checks.title = "headline";

  // Rectangle: ITP dip, then the far-field sweep through it.
  auto& rect = rep.rectangle;
  const ScattererGrid grid_r = ScattererGrid::rectangle(cfg.size, cfg.aspect * cfg.size, cfg.cells, cfg.rho0);
  say("rectangle ITP scan");
  ItpOptions io;
  io.scan_points = cfg.itp_points;
  io.max_refine = 3;
  io.report_threshold = 1.0;
  rect.itp = itp_scan(grid_r.shape(), cfg.cells + 1, cfg.rho0, params, cfg.omega_lo, cfg.omega_hi, io);
  const bool have_dip = !rect.itp.dips.empty() && rect.itp.dips.front().depth_ratio <= cfg.itp_dip_depth;
  if (!rect.itp.dips.empty()) rect.dip = rect.itp.dips.front();
  checks.add("rectangle: ITP dip present", have_dip,
             "omega* = " + fmt(rect.dip.omega) + ", depth " + fmt(rect.dip.depth_ratio) + " (need <= " +
                 fmt(cfg.itp_dip_depth) + ")");

  say("rectangle far-field sweep");
  std::vector<double> omegas;
  for (int i = 0; i < cfg.sweep_points; ++i)
    omegas.push_back(cfg.omega_lo + (cfg.omega_hi - cfg.omega_lo) * i / (cfg.sweep_points - 1));
  if (have_dip) omegas.push_back(rect.dip.omega);
  rect.sweep = sweep_at(grid_r, params, omegas, n, cfg.solver);
  bool sweep_ok = true;
  rect.floor = std::numeric_limits<double>::infinity();
  for (const auto& s : rect.sweep.samples) {
    if (s.error) {
      sweep_ok = false;
      continue;
    }
    if (s.sigma.ratio() < rect.floor) {
      rect.floor = s.sigma.ratio();
      rect.floor_omega = s.omega;
    }
    if (have_dip && s.omega == rect.dip.omega) rect.ratio_at_dip = s.sigma.ratio();
  }
  checks.add("rectangle: far-field floor over sweep and dip", sweep_ok && rect.floor >= cfg.rect_floor,
             "min ratio " + fmt(rect.floor) + " at omega " + fmt(rect.floor_omega) + ", ratio at ITP dip " +
                 fmt(rect.ratio_at_dip) + " (need >= " + fmt(cfg.rect_floor) + ")");

  // Disk: exact transmission eigenvalues, then sigma_min(F) around the most singular one.
  auto& disk = rep.disk;
  const double radius = cfg.size / 2;
  const ScattererGrid grid_d = ScattererGrid::disk(radius, cfg.cells, cfg.rho0);
  disk.ites = disk_transmission_eigenvalues(params, cfg.rho0, radius, cfg.omega_lo, cfg.omega_hi, n / 2 - 1);
  checks.add("disk: transmission eigenvalue in window", !disk.ites.empty(),
             std::to_string(disk.ites.size()) + " eigenvalues of order < N/2");
  if (!disk.ites.empty()) {
    say("disk far field at transmission eigenvalues");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& e : disk.ites) {
      disk.probes.push_back(probe(grid_d, params, e.omega, n, cfg.solver, "ite order " + std::to_string(e.order)));
      if (disk.probes.back().sigma.ratio() < best) {
        best = disk.probes.back().sigma.ratio();
        disk.ite = e;
      }
    }
    say("disk sigma_min(F) search near omega* = " + fmt(disk.ite.omega));
    const double lo = disk.ite.omega * (1 - cfg.disk_bracket);
    const double hi = disk.ite.omega * (1 + cfg.disk_bracket);
    disk.dip = minimize_disk_ratio(grid_d, params, n, disk.ite.order, cfg.solver, lo, hi, cfg.brent_evaluations,
                                   "search");
    disk.probes.push_back(disk.dip);
    checks.add("disk: far-field collapse at transmission eigenvalue", disk.dip.sigma.ratio() <= cfg.disk_floor,
               "ratio " + fmt(disk.dip.sigma.ratio()) + " at omega " + fmt(disk.dip.omega) + " (need <= " +
                   fmt(cfg.disk_floor) + ")");
    checks.add("disk: collapse located at the eigenvalue", rel(disk.dip.omega, disk.ite.omega) <= cfg.location_tol,
               "omega " + fmt(disk.dip.omega) + " vs eigenvalue " + fmt(disk.ite.omega) + " (order " +
                   std::to_string(disk.ite.order) + ")");
  }

  if (cfg.stability) {
    if (have_dip) {
      say("h/2: rectangle ITP dip");
      ItpOptions lo_opts;
      lo_opts.scan_points = 9;
      lo_opts.max_refine = 2;
      lo_opts.report_threshold = 1.0;
      rect.itp_refined = itp_scan(grid_r.shape(), 2 * cfg.cells + 1, cfg.rho0, params, rect.dip.omega * 0.98,
                                  rect.dip.omega * 1.02, lo_opts);
      bool ok = !rect.itp_refined.dips.empty();
      double moved = std::numeric_limits<double>::infinity();
      for (const auto& d : rect.itp_refined.dips) moved = std::min(moved, rel(d.omega, rect.dip.omega));
      ok = ok && moved <= cfg.location_tol;
      checks.add("h/2: rectangle ITP dip location", ok, "relative shift " + fmt(moved));
    }

    std::vector<double> at = {rect.floor_omega};
    if (have_dip && rect.dip.omega != rect.floor_omega) at.push_back(rect.dip.omega);
    double base = std::numeric_limits<double>::infinity();
    for (const auto& s : rect.sweep.samples)
      if (!s.error && std::find(at.begin(), at.end(), s.omega) != at.end()) base = std::min(base, s.sigma.ratio());

    say("h/2: rectangle far field");
    const ScattererGrid fine_r = grid_r.refined();
    double fine = std::numeric_limits<double>::infinity();
    for (double w : at) {
      rect.probes.push_back(probe(fine_r, params, w, n, cfg.solver, "h/2"));
      fine = std::min(fine, rect.probes.back().sigma.ratio());
    }
    checks.add("h/2: rectangle floor", within_factor(fine, base, cfg.floor_factor) && fine >= cfg.rect_floor,
               "ratio " + fmt(fine) + " vs " + fmt(base));

    say("2N: rectangle far field");
    double dbl = std::numeric_limits<double>::infinity();
    for (double w : at) {
      rect.probes.push_back(probe(grid_r, params, w, 2 * n, cfg.solver, "2N"));
      dbl = std::min(dbl, rect.probes.back().sigma.ratio());
    }
    checks.add("2N: rectangle floor", within_factor(dbl, base, cfg.floor_factor) && dbl >= cfg.rect_floor,
               "ratio " + fmt(dbl) + " vs " + fmt(base));

    if (!disk.ites.empty()) {
      say("h/2: disk sigma_min(F) search");
      const double lo = disk.dip.omega * (1 - cfg.refine_bracket);
      const double hi = disk.dip.omega * (1 + cfg.refine_bracket);
      disk.dip_refined = minimize_disk_ratio(grid_d.refined(), params, n, disk.ite.order, cfg.solver, lo, hi,
                                             cfg.brent_evaluations, "h/2 search");
      disk.probes.push_back(disk.dip_refined);
      checks.add("h/2: disk collapse",
                 disk.dip_refined.sigma.ratio() <= cfg.disk_floor &&
                     rel(disk.dip_refined.omega, disk.dip.omega) <= cfg.location_tol,
                 "ratio " + fmt(disk.dip_refined.sigma.ratio()) + " at omega " + fmt(disk.dip_refined.omega));

      say("2N: disk far field");
      disk.dip_doubled = probe(grid_d, params, disk.dip.omega, 2 * n, cfg.solver, "2N");
      disk.probes.push_back(disk.dip_doubled);
      checks.add("2N: disk collapse", disk.dip_doubled.sigma.ratio() <= cfg.disk_floor,
                 "ratio " + fmt(disk.dip_doubled.sigma.ratio()) + " at omega " + fmt(disk.dip.omega));
    }
  }

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

void to_json(nlohmann::json& j, const HeadlineConfig& c) {
  j = {{"lambda", c.lambda},
       {"mu", c.mu},
       {"rho0", c.rho0},
       {"size", c.size},
       {"aspect", c.aspect},
       {"cells", c.cells},
       {"directions", c.directions},
       {"omega_range", {c.omega_lo, c.omega_hi}},
       {"sweep_points", c.sweep_points},
       {"itp_points", c.itp_points},
       {"solver", {{"tol", c.solver.tol}, {"restart", c.solver.restart}, {"max_iterations", c.solver.max_iterations}}},
       {"rect_floor", c.rect_floor},
       {"disk_floor", c.disk_floor},
       {"itp_dip_depth", c.itp_dip_depth},
       {"location_tol", c.location_tol},
       {"floor_factor", c.floor_factor},
       {"disk_bracket", c.disk_bracket},
       {"refine_bracket", c.refine_bracket},
       {"brent_evaluations", c.brent_evaluations},
       {"stability", c.stability}};
}

namespace {
nlohmann::json probe_json(const FarFieldProbe& p) {
  return {{"label", p.label},
          {"omega", p.omega},
          {"sigma_min", p.sigma.sigma_min},
          {"sigma_median", p.sigma.sigma_median},
          {"ratio", p.sigma.ratio()}};
}
}  // namespace

void to_json(nlohmann::json& j, const HeadlineReport& r) {
  j["config"] = r.config;
  auto& rj = j["rectangle"];
  rj["itp"] = r.rectangle.itp;
  rj["itp_dip"] = {{"omega", r.rectangle.dip.omega}, {"depth_ratio", r.rectangle.dip.depth_ratio}};
  rj["sweep"] = r.rectangle.sweep;
  rj["floor"] = r.rectangle.floor;
  rj["floor_omega"] = r.rectangle.floor_omega;
  rj["ratio_at_itp_dip"] = r.rectangle.ratio_at_dip;
  rj["itp_h2"] = r.rectangle.itp_refined;
  rj["probes"] = nlohmann::json::array();
  for (const auto& p : r.rectangle.probes) rj["probes"].push_back(probe_json(p));
  auto& dj = j["disk"];
  dj["eigenvalues"] = nlohmann::json::array();
  for (const auto& e : r.disk.ites) dj["eigenvalues"].push_back({{"omega", e.omega}, {"order", e.order}});
  dj["eigenvalue"] = {{"omega", r.disk.ite.omega}, {"order", r.disk.ite.order}};
  dj["dip"] = probe_json(r.disk.dip);
  dj["dip_h2"] = probe_json(r.disk.dip_refined);
  dj["dip_2n"] = probe_json(r.disk.dip_doubled);
  dj["probes"] = nlohmann::json::array();
  for (const auto& p : r.disk.probes) dj["probes"].push_back(probe_json(p));
  j["checks"] = r.checks;
  j["passed"] = r.checks.passed();
  j["seconds"] = r.seconds;
}

}  // namespace cornerscat
