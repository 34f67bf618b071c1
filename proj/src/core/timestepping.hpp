#pragma once

#include <functional>

#include "core/diagnostics.hpp"
#include "core/model.hpp"

namespace hvbk {

struct IntegratorConfig {
  double dt = 0.0;   // fixed step; when 0, cfl is used
  double cfl = 0.0;  // in (0, 1]
  double t_end = 0.0;
  int output_every = 1;           // steps between emitted records
  double checkpoint_every = 0.0;  // simulation time between checkpoints, 0 = off
  double sobolev_m = 3.0;

  void validate() const;
};

// Receives immutable snapshots during a run.
class DiagnosticsSink {
 public:
  virtual ~DiagnosticsSink() = default;
  virtual void record(const DiagnosticsRecord& r) = 0;
  virtual void checkpoint(const TwoFluidState&) {}
};

struct RunReport {
  TwoFluidState final_state;
  long steps = 0;
  double wall_seconds = 0.0;
  double max_residual_energy = 0.0;
  double max_residual_enstrophy = 0.0;
  // Largest E(t_{k+1}) - E(t_k) over all steps (<= 0 when energy is monotone).
  double max_energy_increase = 0.0;
  double bkm_integral = 0.0;
};

// One integrating-factor RK4 step. Throws BlowupError when the new state has
// non-finite values or |w|_inf > 1e12.
TwoFluidState step(const TwoFluidState& state, const PhysParams& p, double dt);

// cfl * dx / max(|u_n|_inf, |u_s|_inf, 1e-8)
double cfl_dt(const TwoFluidState& state, double cfl);

// Integrates to cfg.t_end. Every step is diagnosed for the residual maxima;
// records go to the sink at step 0, every output_every steps, and at the end.
RunReport run(const TwoFluidState& initial, const PhysParams& p, const IntegratorConfig& cfg,
              DiagnosticsSink* sink);

// Sink that keeps every record in memory.
class RecordingSink : public DiagnosticsSink {
 public:
  void record(const DiagnosticsRecord& r) override { records.push_back(r); }
  std::vector<DiagnosticsRecord> records;
};

}  // namespace hvbk
