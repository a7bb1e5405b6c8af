#include "disperlim/ep/diagnostics.hpp"

#include <spdlog/spdlog.h>

#include <cmath>

#include "disperlim/error.hpp"
#include "disperlim/spectral/fld_io.hpp"

namespace disperlim::ep {

nlohmann::json DiagnosticsLog::to_json() const {
  nlohmann::json j;
  j["hyperviscosity"] = hyperviscosity;
  j["hyper_nu"] = hyper_nu;
  j["snapshots"] = nlohmann::json::array();
  for (const auto& s : snapshots) {
    j["snapshots"].push_back({{"time", s.time},
                              {"mass", s.mass},
                              {"min_n", s.min_n},
                              {"poisson_residual", s.poisson_residual},
                              {"norms", s.norms}});
  }
  return j;
}

DiagnosticsSnapshot diagnose(const EPState& s) {
  DiagnosticsSnapshot d;
  d.time = s.time;
  RealField q = s.n;
  q += -1.0;
  d.mass = q.integral();
  d.min_n = s.n.min();
  d.poisson_residual =
      spectral::l2_norm(poisson_residual(s.n, s.phi, s.params)) / spectral::l2_norm(s.n);
  const auto Q = spectral::forward_transform(q);
  for (int k : {0, 2, 4}) d.norms["H" + std::to_string(k)] = spectral::sobolev_norm(Q, k);
  return d;
}

std::pair<long, double> plan_steps(double T, double dt_max) {
  if (T <= 0.0) return {0, dt_max};
  const long n = static_cast<long>(std::ceil(T / dt_max - 1e-9));
  return {n, T / static_cast<double>(n)};
}

StepperConfig resolve_hyperviscosity(const EPState& s, StepperConfig cfg) {
  if (cfg.hyperviscosity != HyperviscosityMode::Auto) return cfg;
  RealField q = s.n;
  q += -1.0;
  const double tail = spectral::spectral_tail_ratio(spectral::forward_transform(q));
  cfg.hyperviscosity = tail > 1e-8 ? HyperviscosityMode::On : HyperviscosityMode::Off;
  if (cfg.hyperviscosity == HyperviscosityMode::On) {
    spdlog::info("spectral tail {:.2e} > 1e-8: hyperviscosity enabled", tail);
  }
  return cfg;
}

EpRun run_ep(const EPState& initial, double T, const StepperConfig& cfg_in, const RunOptions& opt) {
  if (T < 0.0) throw ConfigError("run_ep: T must be nonnegative");
  EpRun run{initial, {}};
  run.log.snapshots.push_back(diagnose(initial));
  if (T == 0.0) return run;

  StepperConfig cfg = resolve_hyperviscosity(initial, cfg_in);
  const auto [steps, dt] = plan_steps(T, cfg.dt);
  cfg.dt = dt;
  EpStepper stepper(initial.grid(), initial.params, cfg);
  run.log.hyperviscosity = stepper.hyper_nu() > 0.0;
  run.log.hyper_nu = stepper.hyper_nu();

  const double h2_0 = run.log.snapshots.front().norms.at("H2");
  const double guard = opt.blowup_factor * h2_0 + 1e-12;
  const int nsnap = std::max(1, opt.snapshots);
  long next_snap = 1;
  for (long i = 1; i <= steps; ++i) {
    run.state = stepper.step(run.state);
    if (i == steps) run.state.time = initial.time + T;
    RealField q = run.state.n;
    q += -1.0;
    const double h2 = spectral::sobolev_norm(q, 2);
    if (!(h2 <= guard)) {
      throw BlowUpError("EP blow-up guard: ||n-1||_H2 = " + std::to_string(h2) +
                        " at t = " + std::to_string(run.state.time));
    }
    if (i * nsnap >= next_snap * steps) {
      run.log.snapshots.push_back(diagnose(run.state));
      ++next_snap;
    }
  }
  return run;
}

void write_snapshot(const std::filesystem::path& dir, const EPState& s, const std::string& tag) {
  std::filesystem::create_directories(dir);
  spectral::write_fld(dir / ("n_" + tag + ".fld"), s.n, "n");
  for (std::size_t j = 0; j < s.u.size(); ++j) {
    const std::string nm = "u" + std::to_string(j + 1);
    spectral::write_fld(dir / (nm + "_" + tag + ".fld"), s.u[j], nm);
  }
  spectral::write_fld(dir / ("phi_" + tag + ".fld"), s.phi, "phi");
}

}  // namespace disperlim::ep
