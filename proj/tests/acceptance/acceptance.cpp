// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.
//
//   acceptance [--skip-study] [--skip-3d] [--threads N]

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <spdlog/spdlog.h>

#include "disperlim/ep/diagnostics.hpp"
#include "disperlim/error.hpp"
#include "disperlim/lab/study.hpp"
#include "disperlim/limit/invariants.hpp"
#include "disperlim/limit/soliton.hpp"
#include "disperlim/limit/solvers.hpp"
#include "disperlim/profiles/builders.hpp"
#include "disperlim/profiles/residuals.hpp"

using namespace disperlim;
using spectral::Grid;
using spectral::Point;
using spectral::RealField;
using spectral::ScalingParams;
constexpr double kPi = std::numbers::pi;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [x]");
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

RealField dipole(const Grid& g, double amp, double width) {
  return RealField::sample(g, [&](const Point& x) {
    double r2 = 0.0, s = 0.0;
    for (int a = 0; a < g.rank(); ++a) {
      const double y = x[a] - 0.5 * g.length(a);
      r2 += y * y;
      if (a == 0) s = y;
    }
    return -amp * 2.0 * s / (width * width) * std::exp(-r2 / (width * width));
  });
}

limit::LimitConfig limit_cfg(double V, double T, double dt, int store_every = 1 << 30) {
  limit::LimitConfig c;
  c.V = V;
  c.T = T;
  c.dt = dt;
  c.store_every = store_every;
  return c;
}

// ---- 1 -----------------------------------------------------------------------
void wave_speed(Verdict& v) {
  const double expect[] = {1.0, std::sqrt(2.0), 2.0};
  const double ti[] = {0.0, 1.0, 3.0};
  for (int i = 0; i < 3; ++i) {
    for (int d : {2, 3}) {
      const double V = ScalingParams(0.1, ti[i], d).wave_speed();
      v.require(V == expect[i], "T_i=" + fmt(ti[i]) + " d=" + std::to_string(d) + " V=" + fmt(V));
    }
  }
}

// ---- 2 -----------------------------------------------------------------------
void poisson(Verdict& v) {
  Grid g({128, 128}, {2 * kPi, 2 * kPi});
  const ScalingParams p(0.1, 1.0, 2);
  const RealField n = RealField::sample(g, [](const Point& x) { return 1.0 + 0.1 * std::sin(x[0]); });
  const auto r = ep::solve_poisson(n, p);
  v.require(r.residual <= 1e-11, "residual " + fmt(r.residual));
  v.require(r.newton_iterations <= 8, "newton " + std::to_string(r.newton_iterations));

  const double a = 1e-6;
  const RealField nl = RealField::sample(g, [&](const Point& x) { return 1.0 + a * std::sin(x[0] + 2 * x[1]); });
  const double kb2 = 1.0 + 0.1 * 4.0;
  const RealField expect = RealField::sample(g, [&](const Point& x) {
    return a * std::sin(x[0] + 2 * x[1]) / (1 + 0.1 * kb2);
  });
  const double err = (ep::solve_poisson(nl, p).phi - expect).max_abs() / a;
  v.require(err <= 1e-6, "linear oracle rel err " + fmt(err));
}

// ---- 3 -----------------------------------------------------------------------
ep::MatrixXc expm_eig(const ep::MatrixXc& M, double t) {
  Eigen::ComplexEigenSolver<ep::MatrixXc> es(M);
  const ep::MatrixXc P = es.eigenvectors();
  Eigen::VectorXcd ev = (es.eigenvalues().array() * t).exp();
  return P * ev.asDiagonal() * P.inverse();
}

void ep_fidelity(Verdict& v) {
  double worst_steady = 0.0, worst_lin = 0.0;
  for (int d : {2, 3}) {
    for (double eps : {0.05, 0.2}) {
      const Grid g = d == 2 ? Grid({16, 16}, {4 * kPi, 4 * kPi})
                            : Grid({8, 8, 8}, {4 * kPi, 4 * kPi, 4 * kPi});
      const ScalingParams p(eps, 1.0, d);
      ep::StepperConfig cfg;
      cfg.dt = ep::ep_dt_max(g, p);
      const ep::EPState s0 = ep::EPState::uniform(g, p);
      const ep::EpStepper st(g, p, cfg);
      ep::EPState s = s0;
      for (int i = 0; i < 100; ++i) s = st.step(s);
      double dev = (s.n - s0.n).max_abs() + s.phi.max_abs();
      for (const auto& f : s.u) dev += f.max_abs();
      worst_steady = std::max(worst_steady, dev);

      const double a = 1e-6;
      ep::EPState lin = s0;
      lin.n = RealField::sample(g, [&](const Point& x) { return 1.0 + a * std::cos(0.5 * x[0] + 0.5 * x[1]); });
      lin.phi = ep::solve_poisson(lin.n, p).phi;
      const auto run = ep::run_ep(lin, 1.0, cfg, {});
      const auto U0 = ep::EpStepper::to_spectral(lin);
      const auto Ur = ep::EpStepper::to_spectral(run.state);
      for (int r = 0; r <= d; ++r) {
        spectral::SpectralField ex(g);
        for (std::size_t i = 0; i < g.spectral_size(); ++i) {
          if (std::abs(U0[0][i]) == 0.0) continue;
          std::array<double, 3> kv{};
          for (int ax = 0; ax < d; ++ax) kv[static_cast<std::size_t>(ax)] = g.k(ax)[i];
          const auto E = expm_eig(ep::linearized_symbol(kv, p) / eps, 1.0);
          ex[i] = E(r, 0) * U0[0][i];
        }
        const auto diff = spectral::inverse_transform(Ur[static_cast<std::size_t>(r)] - ex);
        worst_lin = std::max(worst_lin, diff.max_abs());
      }
    }
  }
  v.require(worst_steady <= 1e-12, "steady drift " + fmt(worst_steady));
  v.require(worst_lin <= 1e-8, "linear max err " + fmt(worst_lin) + " (amplitude 1e-6)");
}

// ---- 4 -----------------------------------------------------------------------
void limit_solvers(Verdict& v) {
  const double V = std::sqrt(2.0);
  const auto sc = limit::soliton_crossing_test(0.5, V, 256);
  v.require(sc.passed(), "soliton shift " + fmt(sc.shift_error) + " cell " + fmt(sc.cell));

  {
    Grid g({256, 256}, {40, 40});
    const auto cfg = limit_cfg(V, 1.0, 5e-3);
    const RealField n0 = dipole(g, 1.0, 3.0);
    const auto c = cfg.coefficients();
    const auto q0 = limit::conserved_quantities(n0, limit::Equation::KP2, c);
    const auto q1 = limit::conserved_quantities(limit::solve_kp2(n0, cfg).back(), limit::Equation::KP2, c);
    const double dm = std::abs(q1.mass - q0.mass) / spectral::l2_norm(n0);
    const double dl = std::abs(q1.l2 - q0.l2) / q0.l2;
    v.require(dm <= 1e-8 && dl <= 1e-8, "KP mass " + fmt(dm) + " L2 " + fmt(dl));
  }
  {
    Grid g({64, 64, 64}, {30, 30, 30});
    const auto cfg = limit_cfg(1.0, 1.0, 1e-2);
    const RealField n0 = RealField::sample(g, [](const Point& x) {
      const double r2 = (x[0] - 15) * (x[0] - 15) + (x[1] - 15) * (x[1] - 15) + (x[2] - 15) * (x[2] - 15);
      return 0.8 * std::exp(-r2 / 8);
    });
    const auto c = cfg.coefficients();
    const auto q0 = limit::conserved_quantities(n0, limit::Equation::ZK, c);
    const auto q1 = limit::conserved_quantities(limit::solve_zk(n0, cfg).back(), limit::Equation::ZK, c);
    const double dm = std::abs(q1.mass - q0.mass) / std::abs(q0.mass);
    const double dl = std::abs(q1.l2 - q0.l2) / q0.l2;
    const double dh = std::abs(*q1.hamiltonian - *q0.hamiltonian) / std::abs(*q0.hamiltonian);
    v.require(dm <= 1e-6 && dl <= 1e-6 && dh <= 1e-6,
              "ZK mass " + fmt(dm) + " L2 " + fmt(dl) + " H " + fmt(dh));
  }
}

// ---- 5 -----------------------------------------------------------------------
double corruption_margin(const profiles::ProfileHierarchy& h, const profiles::ProfileOptions& opt) {
  const Grid& g = h.grid();
  RealField bump = dipole(g, 1.0, 4.0);
  bump *= 1e-3 / bump.max_abs();
  double worst = INFINITY;
  for (const auto* m : {&h.fields, &h.aux}) {
    for (const auto& entry : *m) {
      profiles::ProfileHierarchy bad = h;
      bad.mutable_field(entry.first) += bump;
      const auto r = profiles::residual_order_systems(bad, opt);
      worst = std::min(worst, r.max_l2 / r.tolerance);
    }
  }
  return worst;
}

void hierarchy(Verdict& v) {
  {
    const double V = std::sqrt(2.0);
    Grid g({64, 64}, {40, 40});
    const auto opt = profiles::ProfileOptions::for_speed(V);
    auto cfg = limit_cfg(V, 0.5, 0.01, 10);
    cfg.equation = limit::Equation::KP2;
    const auto n1 = limit::solve_kp2(dipole(g, 1.0, 3.0), cfg);
    const auto n2 = limit::solve_linearized_kp(profiles::second_order_sources_kp(n1, opt),
                                               RealField(g, 0.0), profiles::second_order_config(cfg));
    const auto r1 = profiles::residual_order_systems(profiles::first_order_profiles_kp(n1.back(), opt, 0.5), opt);
    const auto h2 = profiles::second_order_profiles_kp(n1, n2, opt, 0.5);
    const auto r2 = profiles::residual_order_systems(h2, opt);
    v.require(r1.pass && r2.pass, "KP worst " + fmt(r1.max_l2 / r1.tolerance) + ", " +
                                      fmt(r2.max_l2 / r2.tolerance) + " x tol");
    const double m = corruption_margin(h2, opt);
    v.require(m >= 100.0, "KP corruption >= " + fmt(m) + " x tol");
  }
  {
    Grid g({40, 40, 40}, {30, 30, 30});
    const auto opt = profiles::ProfileOptions::for_speed(1.0);
    auto cfg = limit_cfg(1.0, 0.2, 0.01, 10);
    cfg.equation = limit::Equation::ZK;
    const auto n1 = limit::solve_zk(dipole(g, 0.5, 3.0), cfg);
    const auto n2 = limit::solve_linearized_zk(profiles::second_order_sources_zk(n1, opt),
                                               RealField(g, 0.0), profiles::second_order_config(cfg));
    const auto r1 = profiles::residual_order_systems(profiles::first_order_profiles_zk(n1.back(), opt, 0.2), opt);
    const auto h2 = profiles::second_order_profiles_zk(n1, n2, opt, 0.2);
    const auto r2 = profiles::residual_order_systems(h2, opt);
    v.require(r1.pass && r2.pass, "ZK worst " + fmt(r1.max_l2 / r1.tolerance) + ", " +
                                      fmt(r2.max_l2 / r2.tolerance) + " x tol");
    const double m = corruption_margin(h2, opt);
    v.require(m >= 100.0, "ZK corruption >= " + fmt(m) + " x tol");
  }
}

// ---- 6 -----------------------------------------------------------------------
struct Manufactured {
  double c = 0.3, w = 4.0, cx = 10, cy = 10;
  int d = 2;
  static double sq(double v) { return v * v; }
  double r2(const Point& x, double s) const {
    return s * s + sq(x[1] - cy) + (d == 3 ? sq(x[2] - cy) : 0.0);
  }
  RealField m(const Grid& g, double t) const {
    return RealField::sample(g, [&](const Point& x) {
      const double s = x[0] - cx - c * t;
      return (1 + 0.5 * std::sin(t)) * (-2 * s / w) * std::exp(-r2(x, s) / w);
    });
  }
  RealField m_t(const Grid& g, double t) const {
    return RealField::sample(g, [&](const Point& x) {
      const double s = x[0] - cx - c * t;
      const double E = std::exp(-r2(x, s) / w);
      const double gs = (-2 / w) * E + sq(2 * s / w) * E;
      return 0.5 * std::cos(t) * (-2 * s / w) * E - (1 + 0.5 * std::sin(t)) * c * gs;
    });
  }
  RealField n1(const Grid& g, double t) const {
    return RealField::sample(g, [&](const Point& x) {
      const double s = x[0] - cx - 0.5 * t;
      return 0.8 * std::exp(-r2(x, s) / 6);
    });
  }
};

double mms_error(int nx, int d) {
  Manufactured mf;
  mf.d = d;
  const Grid g = d == 2 ? Grid({nx, nx}, {20, 20}) : Grid({nx, nx, nx}, {20, 20, 20});
  const auto cfg = limit_cfg(std::sqrt(2.0), 1.0, 0.01);
  const auto coef = cfg.coefficients();
  const auto eq = d == 2 ? limit::Equation::LinKP : limit::Equation::LinZK;
  limit::LinearizedSource src;
  src.background = [&](double t) { return mf.n1(g, t); };
  src.G = [&](double t) { return limit::linearized_operator(mf.m(g, t), mf.m_t(g, t), mf.n1(g, t), eq, coef); };
  const auto tr = d == 2 ? limit::solve_linearized_kp(src, mf.m(g, 0), cfg)
                         : limit::solve_linearized_zk(src, mf.m(g, 0), cfg);
  const RealField ex = mf.m(g, cfg.T);
  return spectral::l2_norm(tr.back() - ex) / spectral::l2_norm(ex);
}

void manufactured(Verdict& v) {
  const double kc = mms_error(32, 2), kf = mms_error(64, 2);
  v.require(kf <= 1e-6 && kc >= 10 * kf, "lin-KP " + fmt(kc) + " -> " + fmt(kf));
  const double zc = mms_error(24, 3), zf = mms_error(48, 3);
  v.require(zf <= 1e-6 && zc >= 10 * zf, "lin-ZK " + fmt(zc) + " -> " + fmt(zf));
}

// ---- 7 -----------------------------------------------------------------------
void study(Verdict& v, const lab::StudyConfig& cfg, int threads, double budget_min, const char* tag) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto tab = lab::run_convergence_study(cfg, {threads, 0, std::nullopt});
  const double minutes = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 60.0;
  const std::string order = tab.err1_fit ? fmt(tab.err1_fit->order) : "undefined";
  v.require(!tab.partial, std::string(tag) + " complete");
  v.require(tab.err1_order_in(1.7, 2.3), std::string(tag) + " err1 order " + order);
  v.require(tab.remainder_band <= 3.0, std::string(tag) + " " + tab.norm_kind + " band " + fmt(tab.remainder_band));
  v.require(minutes <= budget_min, std::string(tag) + " " + fmt(minutes) + " min");
}

// ---- 8 -----------------------------------------------------------------------
void determinism(Verdict& v) {
  lab::StudyConfig c = lab::StudyConfig::default_2d();
  c.grid.n = {32, 32};
  c.epsilons = {0.2, 0.1, 0.05};
  c.tau0 = 0.05;
  const auto a = lab::run_convergence_study(c, {1, 3, std::nullopt}).to_csv();
  const auto b = lab::run_convergence_study(c, {3, 3, std::nullopt}).to_csv();
  v.require(a == b, "CSV identical across runs (" + std::to_string(a.size()) + " bytes)");
}

}  // namespace

int main(int argc, char** argv) {
  bool skip_study = false, skip_3d = false;
  std::optional<int> threads;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--skip-study")) skip_study = true;
    else if (!std::strcmp(argv[i], "--skip-3d")) skip_3d = true;
    else if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) threads = std::atoi(argv[++i]);
    else {
      std::fprintf(stderr, "usage: acceptance [--skip-study] [--skip-3d] [--threads N]\n");
      return 1;
    }
  }
  spdlog::set_level(spdlog::level::err);
  const int nthreads = threads || std::getenv("DISPERLIM_THREADS")
                           ? lab::resolve_threads(threads)
                           : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  const std::pair<int, std::function<void(Verdict&)>> crit[] = {
      {1, wave_speed},
      {2, poisson},
      {3, ep_fidelity},
      {4, limit_solvers},
      {5, hierarchy},
      {6, manufactured},
      {7, [&](Verdict& v) {
         study(v, lab::StudyConfig::default_2d(), nthreads, 20.0, "2D");
         if (!skip_3d) study(v, lab::StudyConfig::default_3d(), nthreads, 60.0, "3D");
       }},
      {8, determinism},
  };
  int failed = 0;
  for (const auto& [id, fn] : crit) {
    if (id == 7 && skip_study) {
      std::printf("criterion 7: SKIP (--skip-study)\n");
      continue;
    }
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s (%s) [%.1f s]\n", id, v.pass ? "PASS" : "FAIL", v.detail.str().c_str(), s);
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  if (skip_3d && !skip_study) std::printf("note: 3D study skipped (--skip-3d)\n");
  return failed == 0 ? 0 : 1;
}
