#include "disperlim/lab/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "disperlim/ep/diagnostics.hpp"
#include "disperlim/error.hpp"
#include "disperlim/lab/study.hpp"
#include "disperlim/limit/invariants.hpp"
#include "disperlim/limit/soliton.hpp"
#include "disperlim/limit/solvers.hpp"
#include "disperlim/profiles/assemble.hpp"
#include "disperlim/profiles/builders.hpp"
#include "disperlim/profiles/residuals.hpp"

namespace disperlim::lab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string hierarchy;  // residuals positional
};

StudyConfig load_config(const Globals& g) {
  if (g.config.empty()) return StudyConfig::default_2d();
  if (!fs::exists(g.config)) throw ConfigError("config file not found: " + g.config);
  return StudyConfig::load(g.config);
}

fs::path out_dir(const Globals& g, const std::string& sub) {
  return g.out.empty() ? fs::path("disperlim-" + sub) : fs::path(g.out);
}

void write_json(const fs::path& p, const json& j) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << j.dump(2) << '\n';
}

void require_dim(const StudyConfig& c, int d, const std::string& sub) {
  if (c.d != d) throw ConfigError(sub + " needs d = " + std::to_string(d) + " in the config");
}

limit::LimitConfig stored_limit_config(const StudyConfig& c) {
  limit::LimitConfig lc = c.limit_config(c.limit_T);
  const long steps = static_cast<long>(std::ceil(c.limit_T / c.limit_dt - 1e-9));
  lc.store_every = static_cast<int>(std::max(1L, steps / std::max(1, c.samples)));
  return lc;
}

limit::Trajectory first_order_run(const StudyConfig& c, std::uint64_t seed) {
  const auto g = c.grid.build();
  const auto n0 = make_initial(c.initial, g, c.V(), seed);
  const auto lc = stored_limit_config(c);
  return c.d == 2 ? limit::solve_kp2(n0, lc) : limit::solve_zk(n0, lc);
}

limit::Trajectory second_order_run(const StudyConfig& c, const limit::Trajectory& n1) {
  const auto popt = c.profile_options();
  const auto lc = profiles::second_order_config(stored_limit_config(c));
  const RealField zero(n1.field(0).grid(), 0.0);
  return c.d == 2
             ? limit::solve_linearized_kp(profiles::second_order_sources_kp(n1, popt), zero, lc)
             : limit::solve_linearized_zk(profiles::second_order_sources_zk(n1, popt), zero, lc);
}

int cmd_ep(const Globals& gl) {
  const StudyConfig c = load_config(gl);
  const auto g = c.grid.build();
  const auto p = c.params(c.epsilon);
  const auto popt = c.profile_options();
  const auto n1 = make_initial(c.initial, g, c.V(), gl.seed.value_or(0));
  const auto h = c.d == 2 ? profiles::first_order_profiles_kp(n1, popt)
                          : profiles::first_order_profiles_zk(n1, popt);
  auto data = profiles::assemble_initial_data(h, p);
  ep::StepperConfig sc = c.stepper;
  sc.dt = std::min(sc.dt, ep::ep_dt_max(g, p, sc.c_cfl));
  sc = ep::resolve_hyperviscosity(data.state, sc);
  ep::RunOptions ro;
  ro.snapshots = c.samples;
  const auto run = ep::run_ep(data.state, c.tau0, sc, ro);
  const fs::path dir = out_dir(gl, "ep");
  ep::write_snapshot(dir, run.state, "final");
  json j = run.log.to_json();
  j["config"] = c.to_json();
  j["poisson_discrepancy"] = data.poisson_discrepancy;
  write_json(dir / "diagnostics.json", j);
  const auto& last = run.log.snapshots.back();
  std::cout << "ep: eps=" << c.epsilon << " T=" << c.tau0 << " min n=" << last.min_n
            << " mass=" << last.mass << " -> " << dir.string() << '\n';
  return 0;
}

int cmd_limit(const Globals& gl, int d, const std::string& name) {
  const StudyConfig c = load_config(gl);
  require_dim(c, d, name);
  const auto tr = first_order_run(c, gl.seed.value_or(0));
  const fs::path dir = out_dir(gl, name);
  const auto lc = stored_limit_config(c);
  tr.write(dir, "n1", lc.to_json());
  const auto e = d == 2 ? limit::Equation::KP2 : limit::Equation::ZK;
  const auto q0 = limit::conserved_quantities(tr.field(0), e, lc.coefficients());
  const auto q1 = limit::conserved_quantities(tr.back(), e, lc.coefficients());
  std::cout << name << ": T=" << c.limit_T << " snapshots=" << tr.size()
            << " mass drift=" << std::abs(q1.mass - q0.mass)
            << " L2 drift=" << std::abs(q1.l2 - q0.l2);
  if (q0.hamiltonian && q1.hamiltonian) {
    std::cout << " H drift=" << std::abs(*q1.hamiltonian - *q0.hamiltonian);
  }
  std::cout << " -> " << dir.string() << '\n';
  return 0;
}

int cmd_linearized(const Globals& gl, int d, const std::string& name) {
  const StudyConfig c = load_config(gl);
  require_dim(c, d, name);
  const auto n1 = first_order_run(c, gl.seed.value_or(0));
  const auto n2 = second_order_run(c, n1);
  const fs::path dir = out_dir(gl, name);
  const auto lc = stored_limit_config(c);
  n1.write(dir / "n1", "n1", lc.to_json());
  n2.write(dir / "n2", "n2", profiles::second_order_config(lc).to_json());
  std::cout << name << ": T=" << c.limit_T << " ||n2(T)||_L2=" << spectral::l2_norm(n2.back())
            << " -> " << dir.string() << '\n';
  return 0;
}

void print_report(const profiles::ResidualReport& r) {
  for (const auto& e : r.entries) {
    std::printf("  %-16s L2 %.3e  H2 %.3e\n", e.tag.c_str(), e.l2, e.h2);
  }
  std::printf("tolerance %.3e (1 + ||n1||_H4 = %.4g)\n", r.tolerance, 1.0 + r.n1_h4);
  std::printf("%s (worst %s, %.3e)\n", r.pass ? "PASS" : "FAIL", r.worst.c_str(), r.max_l2);
}

int cmd_profiles(const Globals& gl) {
  const StudyConfig c = load_config(gl);
  const auto popt = c.profile_options();
  const auto n1 = first_order_run(c, gl.seed.value_or(0));
  const double t = n1.times().back();
  profiles::ProfileHierarchy h;
  if (c.truncation_order == 2) {
    const auto n2 = second_order_run(c, n1);
    h = c.d == 2 ? profiles::second_order_profiles_kp(n1.back(), n2.back(), popt, t)
                 : profiles::second_order_profiles_zk(n1.back(), n2.back(), popt, t);
  } else {
    h = c.d == 2 ? profiles::first_order_profiles_kp(n1.back(), popt, t)
                 : profiles::first_order_profiles_zk(n1.back(), popt, t);
  }
  const fs::path dir = out_dir(gl, "profiles");
  h.write(dir);
  const auto r = profiles::residual_order_systems(h, popt);
  std::cout << "profiles: order " << h.order << ", d=" << h.d << ", t=" << t << " -> "
            << dir.string() << '\n';
  print_report(r);
  return r.pass ? 0 : 2;
}

int cmd_residuals(const Globals& gl) {
  std::string path = gl.hierarchy;
  std::optional<StudyConfig> c;
  if (!gl.config.empty()) {
    c = load_config(gl);
    if (path.empty()) path = c->hierarchy;
  }
  if (path.empty()) throw ConfigError("residuals needs a hierarchy directory");
  if (!fs::is_directory(path)) throw ConfigError("hierarchy directory not found: " + path);
  const auto h = profiles::ProfileHierarchy::read(path);
  auto popt = profiles::ProfileOptions::for_speed(h.V);
  if (c) {
    if (!std::isnan(c->zk_nonlinear_coeff)) popt.coef.c_N = c->zk_nonlinear_coeff;
    if (!std::isnan(c->zk_transverse_coeff)) popt.coef.beta = c->zk_transverse_coeff;
    if (!std::isnan(c->lin_coupling)) popt.coef.c_L = c->lin_coupling;
    popt.u1_second_order_coeff = c->u1_second_order_coeff;
  }
  const auto r = profiles::residual_order_systems(h, popt);
  std::cout << "residuals: " << path << " (order " << h.order << ", d=" << h.d << ", V=" << h.V
            << ")\n";
  print_report(r);
  if (!gl.out.empty()) write_json(fs::path(gl.out) / "residuals.json", r.to_json());
  return r.pass ? 0 : 2;
}

int cmd_converge(const Globals& gl) {
  const StudyConfig c = load_config(gl);
  StudyOptions o;
  o.threads = resolve_threads(gl.threads);
  o.seed = gl.seed.value_or(0);
  o.out = out_dir(gl, "converge");
  const auto tab = run_convergence_study(c, o);
  for (const auto& s : tab.summaries) {
    std::printf("eps %-8g max remainder (%s) %.6e  max err1 %.6e  %s\n", s.epsilon,
                tab.norm_kind.c_str(), s.max_remainder, s.max_err1, s.status.c_str());
  }
  if (tab.err1_fit) {
    std::printf("err1 order %.4f  (95%% CI [%.3f, %.3f], r2 %.5f)\n", tab.err1_fit->order,
                tab.err1_fit->ci_low, tab.err1_fit->ci_high, tab.err1_fit->r2);
  } else {
    std::printf("err1 order undefined: %s\n", tab.fit_note.c_str());
  }
  std::printf("remainder band %.4f\n-> %s\n", tab.remainder_band, o.out->string().c_str());
  return tab.partial ? 2 : 0;
}

int cmd_soliton(const Globals& gl) {
  const StudyConfig c = gl.config.empty() ? StudyConfig::default_2d() : load_config(gl);
  const auto r = limit::soliton_crossing_test(c.initial.kappa, c.V());
  std::printf("soliton: kappa %g V %g speed %.6f shift %.4e cell %.4e transverse %.2e\n",
              c.initial.kappa, c.V(), r.expected_speed, r.shift_error, r.cell,
              r.transverse_deviation);
  std::printf("%s\n", r.passed() ? "PASS" : "FAIL");
  return r.passed() ? 0 : 2;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"disperlim: dispersive limits of the Euler-Poisson system", "disperlim"};
  Globals gl;
  app.add_option("--config", gl.config, "JSON configuration (schema_version 1)");
  app.add_option("--out", gl.out, "output directory");
  app.add_option("--seed", gl.seed, "random seed for seeded initial families");
  app.add_option("--threads", gl.threads, "worker threads (fallback: DISPERLIM_THREADS)");
  app.require_subcommand(1);
  app.fallthrough();

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"ep", "integrate Euler-Poisson from well-prepared data"},
                      {"kp", "solve KP-II"},
                      {"zk", "solve Zakharov-Kuznetsov"},
                      {"lin-kp", "solve KP-II and the linearised KP for n2"},
                      {"lin-zk", "solve ZK and the linearised ZK for n2"},
                      {"profiles", "build and write a profile hierarchy"},
                      {"residuals", "check a hierarchy against the order equations"},
                      {"converge", "run an epsilon sweep"},
                      {"soliton-test", "line-soliton crossing check"}};
  for (const auto& s : subs) {
    auto* sc = app.add_subcommand(s.name, s.help);
    if (std::string(s.name) == "residuals") {
      sc->add_option("hierarchy", gl.hierarchy, "hierarchy directory");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  try {
    if (sub == "ep") return cmd_ep(gl);
    if (sub == "kp") return cmd_limit(gl, 2, sub);
    if (sub == "zk") return cmd_limit(gl, 3, sub);
    if (sub == "lin-kp") return cmd_linearized(gl, 2, sub);
    if (sub == "lin-zk") return cmd_linearized(gl, 3, sub);
    if (sub == "profiles") return cmd_profiles(gl);
    if (sub == "residuals") return cmd_residuals(gl);
    if (sub == "converge") return cmd_converge(gl);
    if (sub == "soliton-test") return cmd_soliton(gl);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConstraintError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  std::cerr << app.help();
  return 1;
}

}  // namespace disperlim::lab
