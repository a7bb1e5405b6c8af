#include "disperlim/limit/solvers.hpp"

#include <cmath>
#include <string>

#include "disperlim/diag_guard.hpp"
#include "disperlim/error.hpp"
#include "disperlim/limit/etd.hpp"

namespace disperlim::limit {

using spectral::derivative;
using spectral::forward_transform;
using spectral::inverse_transform;

std::function<RealField(double)> background_from(const Trajectory& tr) {
  return [&tr](double t) { return tr.at(t); };
}

double kp_constraint_violation(const RealField& f) {
  const SpectralField F = forward_transform(f);
  const double all = spectral::x1_mean_content(F);
  const double mean = std::abs(F[0]) * std::sqrt(f.grid().volume());
  const double c = std::sqrt(std::max(0.0, all * all - mean * mean));
  const double norm = spectral::l2_norm(f);
  return norm > 0.0 ? c / norm : 0.0;
}

namespace {

void require_kp_admissible(const RealField& f, const char* what) {
  const double v = kp_constraint_violation(f);
  if (v > 1e-10) {
    throw ConstraintError(std::string(what) + ": k1=0 content (relative " + std::to_string(v) +
                              ") violates the KP constraint",
                          v);
  }
}

struct Driver {
  const LimitConfig& cfg;
  Equation eq;
  LimitCoefficients coef;

  template <class Rhs, class Nonlinear>
  Trajectory run(const RealField& u0, Nonlinear N, Rhs rhs, bool kp_project) const {
    cfg.validate();
    Trajectory tr;
    tr.push(0.0, u0, rhs(u0, 0.0));
    if (cfg.T == 0.0) return tr;
    const long steps = static_cast<long>(std::ceil(cfg.T / cfg.dt - 1e-9));
    const double dt = cfg.T / static_cast<double>(steps);
    const DiagonalEtdrk4 etd(u0.grid(), linear_symbol_table(u0.grid(), eq, coef), dt);
    const BlowupGuard guard(spectral::sobolev_norm(u0, 2), cfg.blowup_factor);

    SpectralField U = forward_transform(u0);
    for (long i = 1; i <= steps; ++i) {
      const double t = (i - 1) * dt;
      U = etd.step(U, t, N);
      if (kp_project) spectral::project_zero_x1_mean(U, true);
      const bool last = i == steps;
      const double tn = last ? cfg.T : i * dt;
      guard.check(spectral::sobolev_norm(U, 2), tn, equation_name(eq));
      if (last || i % cfg.store_every == 0) {
        RealField u = inverse_transform(U);
        RealField r = rhs(u, tn);
        tr.push(tn, std::move(u), std::move(r));
      }
    }
    return tr;
  }
};

SpectralField source_term(const LinearizedSource& src, double t, bool kp) {
  const RealField G = src.G(t);
  SpectralField Gh = forward_transform(G);
  if (!kp) return Gh;
  const double ztol = 1e-10 * spectral::l2_norm(G) + 1e-300;
  return spectral::antiderivative_x1(Gh, ztol);
}

Trajectory solve_linearized(const LinearizedSource& src, const RealField& m0,
                            const LimitConfig& cfg, Equation eq) {
  const bool kp = eq == Equation::LinKP;
  if (kp) require_kp_admissible(m0, "linearized KP initial data");
  const LimitCoefficients c = cfg.coefficients();
  const spectral::Grid& g = m0.grid();
  auto background = [&](double t) { return src.background ? src.background(t) : RealField(g); };

  auto N = [&](const SpectralField& M, double t) {
    SpectralField out(g);
    if (src.background) {
      const RealField P = background(t) * inverse_transform(M);
      out = (-c.c_L) * derivative(spectral::dealias(forward_transform(P)), 0, 1);
    }
    if (src.G) {
      try {
        out += source_term(src, t, kp);
      } catch (const ConstraintError& e) {
        throw ConstraintError("linearized KP source at t = " + std::to_string(t) + ": " + e.what(),
                              e.norm());
      }
    }
    return out;
  };
  auto rhs = [&](const RealField& m, double t) {
    RealField r = linearized_rhs(m, background(t), eq, c);
    if (src.G) r += inverse_transform(source_term(src, t, kp));
    return r;
  };
  return Driver{cfg, eq, c}.run(m0, N, rhs, kp);
}

}  // namespace

Trajectory solve_kp2(const RealField& n0, const LimitConfig& cfg_in) {
  LimitConfig cfg = cfg_in;
  cfg.equation = Equation::KP2;
  require_kp_admissible(n0, "KP-II initial data");
  const LimitCoefficients c = cfg.coefficients();
  auto N = [&](const SpectralField& U, double) { return burgers_term(U, c.V); };
  auto rhs = [&](const RealField& n, double) { return kp2_rhs(n, c); };
  return Driver{cfg, Equation::KP2, c}.run(n0, N, rhs, true);
}

Trajectory solve_zk(const RealField& n0, const LimitConfig& cfg_in) {
  LimitConfig cfg = cfg_in;
  cfg.equation = Equation::ZK;
  const LimitCoefficients c = cfg.coefficients();
  auto N = [&](const SpectralField& U, double) { return burgers_term(U, c.c_N); };
  auto rhs = [&](const RealField& n, double) { return zk_rhs(n, c); };
  return Driver{cfg, Equation::ZK, c}.run(n0, N, rhs, false);
}

Trajectory solve_linearized_kp(const LinearizedSource& src, const RealField& m0,
                               const LimitConfig& cfg) {
  return solve_linearized(src, m0, cfg, Equation::LinKP);
}

Trajectory solve_linearized_zk(const LinearizedSource& src, const RealField& m0,
                               const LimitConfig& cfg) {
  return solve_linearized(src, m0, cfg, Equation::LinZK);
}

}  // namespace disperlim::limit
