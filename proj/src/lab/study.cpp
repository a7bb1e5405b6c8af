#include "disperlim/lab/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "disperlim/diag_guard.hpp"
#include "disperlim/ep/diagnostics.hpp"
#include "disperlim/error.hpp"
#include "disperlim/limit/solvers.hpp"
#include "disperlim/profiles/assemble.hpp"
#include "disperlim/profiles/builders.hpp"

namespace disperlim::lab {

using nlohmann::json;

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct SharedProfiles {
  std::vector<profiles::ProfileHierarchy> h;  // one per sample time
  std::vector<double> times;
};

SharedProfiles build_profiles(const StudyConfig& cfg, std::uint64_t seed) {
  const spectral::Grid g = cfg.grid.build();
  const auto popt = cfg.profile_options();
  const RealField n0 = make_initial(cfg.initial, g, cfg.V(), seed);

  const double dts = cfg.tau0 / cfg.samples;
  const long sub = std::max(1L, static_cast<long>(std::ceil(dts / cfg.limit_dt - 1e-9)));
  limit::LimitConfig lc = cfg.limit_config(cfg.tau0);
  lc.dt = dts / static_cast<double>(sub);
  lc.store_every = static_cast<int>(sub);
  const bool kp = cfg.d == 2;
  limit::Trajectory n1 = kp ? limit::solve_kp2(n0, lc) : limit::solve_zk(n0, lc);
  std::optional<limit::Trajectory> n2;
  if (cfg.truncation_order == 2) {
    const auto src = kp ? profiles::second_order_sources_kp(n1, popt)
                        : profiles::second_order_sources_zk(n1, popt);
    const auto lc2 = profiles::second_order_config(lc);
    n2 = kp ? limit::solve_linearized_kp(src, RealField(g, 0.0), lc2)
            : limit::solve_linearized_zk(src, RealField(g, 0.0), lc2);
  }
  if (n1.size() != static_cast<std::size_t>(cfg.samples) + 1) {
    throw NumericalError("limit trajectory does not align with the sample times");
  }
  SharedProfiles sp;
  for (std::size_t k = 0; k < n1.size(); ++k) {
    const double t = n1.times()[k];
    sp.times.push_back(t);
    if (n2) {
      sp.h.push_back(kp ? profiles::second_order_profiles_kp(n1.field(k), n2->field(k), popt, t)
                        : profiles::second_order_profiles_zk(n1.field(k), n2->field(k), popt, t));
    } else {
      sp.h.push_back(kp ? profiles::first_order_profiles_kp(n1.field(k), popt, t)
                        : profiles::first_order_profiles_zk(n1.field(k), popt, t));
    }
  }
  return sp;
}

struct EpsResult {
  std::vector<StudyRow> rows;
  EpsilonSummary summary;
};

EpsResult run_one(const StudyConfig& cfg, const SharedProfiles& sp, double eps, bool triple) {
  EpsResult res;
  auto& sum = res.summary;
  sum.epsilon = eps;
  json diag;
  diag["epsilon"] = eps;
  diag["samples"] = json::array();
  try {
    const auto p = cfg.params(eps);
    const spectral::Grid& g = sp.h.front().grid();
    auto data = profiles::assemble_initial_data(sp.h.front(), p);
    ep::EPState state = std::move(data.state);
    diag["poisson_discrepancy"] = data.poisson_discrepancy;
    diag["initial_newton_iterations"] = data.newton_iterations;

    ep::StepperConfig sc = cfg.stepper;
    sc.dt = std::min(sc.dt, ep::ep_dt_max(g, p, sc.c_cfl));
    const double dts = cfg.tau0 / cfg.samples;
    const auto [nsub, dt] = ep::plan_steps(dts, sc.dt);
    sc.dt = dt;
    sc = ep::resolve_hyperviscosity(state, sc);
    const ep::EpStepper stepper(g, p, sc);
    sum.dt = dt;
    diag["dt"] = dt;
    diag["hyperviscosity"] = sc.hyperviscosity == ep::HyperviscosityMode::On;
    diag["hyper_nu"] = stepper.hyper_nu();

    const double h2_0 = spectral::sobolev_norm(state.n - RealField(g, 1.0), 2);
    BlowupGuard guard(h2_0, 10.0);
    const RealField one(g, 1.0);
    for (std::size_t k = 0; k < sp.times.size(); ++k) {
      if (k > 0) {
        for (long s = 0; s < nsub; ++s) state = stepper.step(state);
        sum.steps += nsub;
        state.time = sp.times[k];
        guard.check(spectral::sobolev_norm(state.n - one, 2), state.time, "||n - 1||_{H^2}");
      }
      const auto& h = sp.h[k];
      const auto r = compute_remainder(state, h, cfg.truncation_order);
      const auto rep = remainder_norm_report(r, p, cfg.s_prime, triple);
      const double err1 = spectral::sobolev_norm(state.n - one - eps * h.get("n1"), cfg.s_prime);
      res.rows.push_back({eps, state.time, rep.kind, rep.n, rep.u, rep.phi, err1});
      sum.max_remainder = std::max(sum.max_remainder, rep.total);
      sum.max_err1 = std::max(sum.max_err1, err1);
      const auto snap = ep::diagnose(state);
      diag["samples"].push_back({{"time", state.time},
                                 {"mass", snap.mass},
                                 {"min_n", snap.min_n},
                                 {"poisson_residual", snap.poisson_residual},
                                 {"err1", err1},
                                 {"remainder", rep.to_json()}});
      if (rep.resolution_warning && k + 1 == sp.times.size()) {
        spdlog::warn("eps={}: remainder spectral tail {:.2e} at t={}", eps, rep.tail_ratio, state.time);
      }
    }
    sum.ok = true;
    sum.status = "ok";
  } catch (const Error& e) {
    sum.ok = false;
    sum.status = e.what();
    spdlog::error("eps={} failed: {}", eps, e.what());
  }
  diag["status"] = sum.status;
  diag["steps"] = sum.steps;
  diag["max_remainder"] = sum.max_remainder;
  diag["max_err1"] = sum.max_err1;
  sum.diagnostics = std::move(diag);
  return res;
}

}  // namespace

int resolve_threads(std::optional<int> requested) {
  if (requested) {
    if (*requested < 1) throw ConfigError("--threads must be >= 1");
    return *requested;
  }
  if (const char* env = std::getenv("DISPERLIM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) {
      throw ConfigError(std::string("DISPERLIM_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<int>(v);
  }
  return 1;
}

bool ConvergenceTable::err1_order_in(double lo, double hi) const {
  return err1_fit && err1_fit->order >= lo && err1_fit->order <= hi;
}

std::string ConvergenceTable::to_csv() const {
  std::string s = "epsilon,time,norm_kind,n,u,phi,err1\n";
  for (const auto& r : rows) {
    s += g17(r.epsilon) + ',' + g17(r.time) + ',' + r.norm_kind + ',' + g17(r.n) + ',' + g17(r.u) +
         ',' + g17(r.phi) + ',' + g17(r.err1) + '\n';
  }
  return s;
}

json ConvergenceTable::to_json() const {
  json j;
  j["norm_kind"] = norm_kind;
  j["partial"] = partial;
  j["remainder_band"] = remainder_band;
  j["err1_fit"] = err1_fit ? err1_fit->to_json() : json(nullptr);
  if (!fit_note.empty()) j["fit_note"] = fit_note;
  j["epsilons"] = json::array();
  for (const auto& s : summaries) {
    j["epsilons"].push_back({{"epsilon", s.epsilon}, {"ok", s.ok}, {"status", s.status},
                             {"max_remainder", s.max_remainder}, {"max_err1", s.max_err1},
                             {"dt", s.dt}, {"steps", s.steps}});
  }
  j["rows"] = json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"epsilon", r.epsilon}, {"time", r.time}, {"norm_kind", r.norm_kind},
                         {"n", r.n}, {"u", r.u}, {"phi", r.phi}, {"err1", r.err1}});
  }
  return j;
}

ConvergenceTable run_convergence_study(const StudyConfig& cfg, const StudyOptions& opt) {
  cfg.validate_study();
  const bool triple = cfg.T_i == 0.0;
  spdlog::info("study: d={} T_i={} {} epsilons, tau0={}, order {}", cfg.d, cfg.T_i,
               cfg.epsilons.size(), cfg.tau0, cfg.truncation_order);
  const SharedProfiles sp = build_profiles(cfg, opt.seed);

  const std::size_t ne = cfg.epsilons.size();
  std::vector<EpsResult> results(ne);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ne; i = next++) {
      results[i] = run_one(cfg, sp, cfg.epsilons[i], triple);
      spdlog::info("eps={} done: max remainder {:.4e}, max err1 {:.4e}", cfg.epsilons[i],
                   results[i].summary.max_remainder, results[i].summary.max_err1);
    }
  };
  const int nt = std::clamp(opt.threads, 1, static_cast<int>(ne));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ConvergenceTable tab;
  tab.norm_kind = triple ? "triple" : "H" + std::to_string(cfg.s_prime);
  std::vector<std::pair<double, double>> pts;
  double lo = INFINITY, hi = 0.0;
  for (auto& r : results) {
    tab.rows.insert(tab.rows.end(), r.rows.begin(), r.rows.end());
    if (!r.summary.ok) tab.partial = true;
    if (r.summary.ok) {
      pts.emplace_back(r.summary.epsilon, r.summary.max_err1);
      lo = std::min(lo, r.summary.max_remainder);
      hi = std::max(hi, r.summary.max_remainder);
    }
    tab.summaries.push_back(std::move(r.summary));
  }
  tab.remainder_band = lo > 0.0 ? hi / lo : (hi == 0.0 && !pts.empty() ? 1.0 : INFINITY);
  try {
    tab.err1_fit = fit_order(pts);
  } catch (const DomainError& e) {
    tab.fit_note = e.what();
  }

  if (opt.out) {
    const auto& dir = *opt.out;
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "table.csv") << tab.to_csv();
    json j = tab.to_json();
    j["config"] = cfg.to_json();
    j["seed"] = opt.seed;
    std::ofstream(dir / "table.json") << j.dump(2) << '\n';
    for (std::size_t i = 0; i < ne; ++i) {
      const auto sub = dir / ("eps_" + std::to_string(i) + "_" + short_num(cfg.epsilons[i]));
      std::filesystem::create_directories(sub);
      std::ofstream(sub / "diagnostics.json") << tab.summaries[i].diagnostics.dump(2) << '\n';
    }
  }
  return tab;
}

}  // namespace disperlim::lab
