#pragma once

// Headline experiment: an interior transmission eigenvalue of a rectangle
// leaves sigma_min(F) bounded away from zero, while a disk's transmission
// eigenvalue makes F nearly singular.  Includes h -> h/2 and N -> 2N checks.

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cornerscat/farfield.hpp"
#include "cornerscat/itp.hpp"
#include "cornerscat/report.hpp"

namespace cornerscat {

struct HeadlineConfig {
  double lambda = -0.9;
  double mu = 1.0;
  double rho0 = 0.5;
  double size = 37.6;    ///< rectangle width and disk diameter
  double aspect = 0.7;   ///< rectangle height / width
  int cells = 48;        ///< cells across the bounding box
  int directions = 32;
  double omega_lo = 0.88;
  double omega_hi = 1.0;
  int sweep_points = 40;
  int itp_points = 30;
  SolverOptions solver{1e-5, 40000, 20, 0};

  double rect_floor = 0.01;      ///< sigma_min / sigma_median must stay above this
  double disk_floor = 1e-3;      ///< and the disk must reach below this
  double itp_dip_depth = 0.05;   ///< ITP local minimum counts as a dip below this depth ratio
  double location_tol = 0.05;    ///< relative dip-location tolerance
  double floor_factor = 2.0;
  double disk_bracket = 0.006;   ///< relative half-width of the sigma_min(F) search around an ITE
  double refine_bracket = 0.001; ///< same at h/2, around the coarse minimizer
  int brent_evaluations = 12;    ///< block evaluations per disk search
  bool stability = true;
};

struct FarFieldProbe {
  std::string label;
  double omega = 0;
  SingularSummary sigma;
};

struct RectangleHeadline {
  ItpScan itp;
  ItpDip dip;
  SweepReport sweep;        ///< the regular sweep plus the ITP dip frequency
  double floor = 0;         ///< smallest ratio over `sweep`
  double floor_omega = 0;
  double ratio_at_dip = 0;
  ItpScan itp_refined;      ///< h/2, localized around dip.omega
  std::vector<FarFieldProbe> probes;
};

struct DiskHeadline {
  std::vector<DiskItpRoot> ites;
  DiskItpRoot ite;
  std::vector<FarFieldProbe> probes;
  FarFieldProbe dip;
  FarFieldProbe dip_refined;   ///< h/2
  FarFieldProbe dip_doubled;   ///< 2N
};

struct HeadlineReport {
  HeadlineConfig config;
  RectangleHeadline rectangle;
  DiskHeadline disk;
  CheckReport checks;
  double seconds = 0;
};

using ProgressFn = std::function<void(const std::string&)>;

HeadlineReport run_headline(const HeadlineConfig& cfg, const ProgressFn& progress = {});

void to_json(nlohmann::json& j, const HeadlineConfig& c);
void to_json(nlohmann::json& j, const HeadlineReport& r);

}  // namespace cornerscat
