#pragma once

#include <string>
#include <vector>

#include "core/picard.hpp"
#include "core/timestepping.hpp"
#include "io/config.hpp"

// Glue between a RunConfig and the numerical core, shared by the C API.
namespace hvbk {

GridPtr make_grid(const RunConfig& cfg);
IntegratorConfig integrator_config(const RunConfig& cfg);
PicardConfig picard_config(const RunConfig& cfg);
TwoFluidState initial_state(const RunConfig& cfg);

struct RunOutcome {
  RunReport report;
  std::vector<std::string> checkpoints;  // written files, in order
  long records = 0;
};

// Runs from `initial`, streaming the CSV to output.diag_path and checkpoints
// (ckpt_NNNNNN.hvbk plus final.hvbk) to output.checkpoint_dir when set.
// Empty paths disable the corresponding output.
RunOutcome run_config(const RunConfig& cfg, const TwoFluidState& initial);

struct PicardScan {
  std::vector<double> horizons;
  std::vector<double> factors;
  std::vector<int> converged;
  double slope = 0.0;  // of log factor against log horizon
};

// Contraction factor at picard.scan_points horizons spaced geometrically on
// [picard.scan_min, picard.scan_max].
PicardScan picard_scan(const RunConfig& cfg, const VelocityPair& data);

struct ExistenceScaling {
  std::vector<double> scales;
  std::vector<double> data_norms;
  std::vector<double> t_star;
  std::vector<int> capped;
  double exponent = 0.0;  // of log t_star against log data norm, uncapped points only
  int fitted_points = 0;  // exponent is 0 when fewer than two
};

ExistenceScaling existence_scaling(const RunConfig& cfg, const VelocityPair& data);

}  // namespace hvbk
