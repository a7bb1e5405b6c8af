#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "disperlim/ep/stepper.hpp"

namespace disperlim::ep {

struct DiagnosticsSnapshot {
  double time = 0.0;
  double mass = 0.0;              // integral of (n - 1)
  double min_n = 0.0;
  double poisson_residual = 0.0;  // relative
  std::map<std::string, double> norms;  // "H0", "H2", "H4" of n - 1
};

struct DiagnosticsLog {
  std::vector<DiagnosticsSnapshot> snapshots;
  bool hyperviscosity = false;
  double hyper_nu = 0.0;
  nlohmann::json to_json() const;
};

DiagnosticsSnapshot diagnose(const EPState& s);

struct RunOptions {
  int snapshots = 10;           // evenly spaced, plus t = 0
  double blowup_factor = 10.0;  // on ||n - 1||_{H^2}
};

struct EpRun {
  EPState state;
  DiagnosticsLog log;
};

/// Integrate to initial.time + T with the largest step <= cfg.dt that divides T.
/// Throws BlowUpError if ||n - 1||_{H^2} exceeds blowup_factor times its initial value.
EpRun run_ep(const EPState& initial, double T, const StepperConfig& cfg,
             const RunOptions& opt = {});

/// Step count and step size used by run_ep for a horizon T.
std::pair<long, double> plan_steps(double T, double dt_max);

/// Auto mode: hyperviscosity on iff the spectral tail of n - 1 exceeds 1e-8.
StepperConfig resolve_hyperviscosity(const EPState& s, StepperConfig cfg);

/// Write n, u_j, phi as FLD1 files into dir.
void write_snapshot(const std::filesystem::path& dir, const EPState& s, const std::string& tag);

}  // namespace disperlim::ep
