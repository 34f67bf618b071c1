#include "io/driver.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <memory>

#include "core/pressure.hpp"
#include "io/checkpoint.hpp"
#include "io/diagnostics_csv.hpp"
#include "io/initial_conditions.hpp"

namespace hvbk {

namespace {

class RunSink : public DiagnosticsSink {
 public:
  RunSink(const RunConfig& cfg, RunOutcome& out) : cfg_(cfg), out_(out) {
    if (!cfg.diag_path.empty()) csv_ = std::make_unique<CsvSink>(cfg.diag_path);
    if (!cfg.checkpoint_dir.empty()) std::filesystem::create_directories(cfg.checkpoint_dir);
  }

  void record(const DiagnosticsRecord& r) override {
    ++out_.records;
    if (csv_) csv_->record(r);
  }

  void checkpoint(const TwoFluidState& s) override {
    if (cfg_.checkpoint_dir.empty()) return;
    char name[32];
    std::snprintf(name, sizeof name, "ckpt_%06d.hvbk", count_++);
    write(s, name);
  }

  void write(const TwoFluidState& s, const std::string& name) {
    const std::string path = (std::filesystem::path(cfg_.checkpoint_dir) / name).string();
    const PressurePair p = solve_pressure(s, cfg_.phys);
    save_checkpoint(path, s, cfg_.phys, &p);
    out_.checkpoints.push_back(path);
  }

  void finish() {
    if (csv_) csv_->finish();
  }

 private:
  const RunConfig& cfg_;
  RunOutcome& out_;
  std::unique_ptr<CsvSink> csv_;
  int count_ = 0;
};

std::vector<double> geometric(double lo, double hi, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(lo * std::pow(hi / lo, double(i) / (count - 1)));
  return v;
}

}  // namespace

GridPtr make_grid(const RunConfig& cfg) { return Grid::create(cfg.n, cfg.length); }

IntegratorConfig integrator_config(const RunConfig& cfg) {
  IntegratorConfig ic = cfg.time;
  ic.sobolev_m = cfg.sobolev_m;
  return ic;
}

PicardConfig picard_config(const RunConfig& cfg) {
  PicardConfig pc = cfg.picard;
  pc.sobolev_m = cfg.sobolev_m;
  return pc;
}

TwoFluidState initial_state(const RunConfig& cfg) {
  return make_initial_condition(cfg.init, make_grid(cfg));
}

RunOutcome run_config(const RunConfig& cfg, const TwoFluidState& initial) {
  validate_config(cfg);
  RunOutcome out;
  RunSink sink(cfg, out);
  out.report = run(initial, cfg.phys, integrator_config(cfg), &sink);
  sink.finish();
  if (!cfg.checkpoint_dir.empty()) sink.write(out.report.final_state, "final.hvbk");
  return out;
}

PicardScan picard_scan(const RunConfig& cfg, const VelocityPair& data) {
  PicardScan scan;
  PicardConfig pc = picard_config(cfg);
  for (double t : geometric(cfg.probe.scan_min, cfg.probe.scan_max, cfg.probe.scan_points)) {
    pc.horizon = t;
    const ContractionResult r = contraction_factor(data, cfg.phys, pc);
    scan.horizons.push_back(t);
    scan.factors.push_back(r.factor);
    scan.converged.push_back(r.converged ? 1 : 0);
  }
  bool positive = true;
  for (double f : scan.factors) positive = positive && f > 0.0;
  scan.slope = positive ? loglog_slope(scan.horizons, scan.factors) : 0.0;
  return scan;
}

ExistenceScaling existence_scaling(const RunConfig& cfg, const VelocityPair& data) {
  ExistenceScaling out;
  const PicardConfig pc = picard_config(cfg);
  for (double s : cfg.probe.scales) {
    const VelocityPair d{s * data.n, s * data.s};
    const ExistenceProbe p = existence_time_probe(d, cfg.phys, pc);
    out.scales.push_back(s);
    out.data_norms.push_back(p.data_norm);
    out.t_star.push_back(p.t_star);
    out.capped.push_back(p.capped ? 1 : 0);
  }
  // A capped time is only a lower bound, so it stays out of the fit.
  std::vector<double> norms, times;
  for (std::size_t i = 0; i < out.t_star.size(); ++i) {
    if (out.capped[i] || !(out.t_star[i] > 0.0) || !(out.data_norms[i] > 0.0)) continue;
    norms.push_back(out.data_norms[i]);
    times.push_back(out.t_star[i]);
  }
  out.fitted_points = int(norms.size());
  out.exponent = norms.size() >= 2 ? loglog_slope(norms, times) : 0.0;
  return out;
}

}  // namespace hvbk
