#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "disperlim/ep/diagnostics.hpp"
#include "disperlim/error.hpp"

using namespace disperlim;
using namespace disperlim::ep;
using spectral::Grid;
using spectral::Point;
using spectral::ScalingParams;
constexpr double kPi = std::numbers::pi;

namespace {

// exp(t M) by eigendecomposition, independent of the stepper's augmented-matrix route.
MatrixXc expm_eig(const MatrixXc& M, double t) {
  Eigen::ComplexEigenSolver<MatrixXc> es(M);
  const MatrixXc P = es.eigenvectors();
  Eigen::VectorXcd ev = (es.eigenvalues().array() * t).exp();
  return P * ev.asDiagonal() * P.inverse();
}

Grid grid_for(int d) {
  return d == 2 ? Grid({16, 16}, {4 * kPi, 4 * kPi}) : Grid({8, 8, 8}, {4 * kPi, 4 * kPi, 4 * kPi});
}

}  // namespace

TEST_CASE("Poisson: constant densities") {
  Grid g({16, 16}, {10.0, 10.0});
  const ScalingParams p(0.1, 1.0, 2);
  CHECK(solve_poisson(RealField(g, 1.0), p).phi.max_abs() == 0.0);
  const auto r = solve_poisson(RealField(g, std::exp(0.3)), p);
  CHECK((r.phi - RealField(g, 0.3)).max_abs() < 1e-14);
  RealField bad(g, 1.0);
  bad[5] = -0.1;
  CHECK_THROWS_AS(solve_poisson(bad, p), DomainError);
}

TEST_CASE("Poisson: linearised oracle and Newton convergence") {
  Grid g({128, 128}, {2 * kPi, 2 * kPi});
  const ScalingParams p(0.1, 1.0, 2);
  const double a = 1e-6;
  const RealField n = RealField::sample(g, [&](const Point& x) { return 1.0 + a * std::sin(x[0] + 2 * x[1]); });
  const auto r = solve_poisson(n, p);
  // phi_k = n_k / (1 + eps |kbar|^2), |kbar|^2 = 1 + eps * 4
  const double kb2 = 1.0 + 0.1 * 4.0;
  const RealField expect = RealField::sample(g, [&](const Point& x) { return a * std::sin(x[0] + 2 * x[1]) / (1 + 0.1 * kb2); });
  CHECK((r.phi - expect).max_abs() / a < 1e-6);

  const RealField n2 = RealField::sample(g, [](const Point& x) { return 1.0 + 0.1 * std::sin(x[0]); });
  const auto r2 = solve_poisson(n2, p);
  CHECK(r2.residual <= 1e-11);
  CHECK(r2.newton_iterations <= 8);
  CHECK(std::isfinite(r2.quadratic_constant));
  CHECK(spectral::l2_norm(poisson_residual(n2, r2.phi, p)) / spectral::l2_norm(n2) <= 1e-11);
}

TEST_CASE("linearised symbol") {
  const ScalingParams p2(0.1, 0.0, 2);
  const MatrixXc L0 = linearized_symbol({0, 0, 0}, p2);
  CHECK(L0.norm() == 0.0);

  // 1-D acoustic branch: eigenvalues of L/eps are i k (V +- 1/sqrt(1+eps k^2)) / eps.
  const double k = 0.7;
  const MatrixXc L = linearized_symbol({k, 0, 0}, p2) / 0.1;
  Eigen::ComplexEigenSolver<MatrixXc> es(L);
  std::vector<double> im;
  for (int i = 0; i < 3; ++i) im.push_back(es.eigenvalues()(i).imag());
  std::sort(im.begin(), im.end());
  const double c = 1.0 / std::sqrt(1.0 + 0.1 * k * k);
  CHECK(im[0] == doctest::Approx(k * (1 - c) / 0.1).epsilon(1e-12));
  CHECK(im[1] == doctest::Approx(k / 0.1).epsilon(1e-12));
  CHECK(im[2] == doctest::Approx(k * (1 + c) / 0.1).epsilon(1e-12));

  const ScalingParams p3(0.05, 0.0, 3);
  Eigen::ComplexEigenSolver<MatrixXc> e3(linearized_symbol({0, 0, 0}, p3));
  std::vector<double> g;
  for (int i = 0; i < 4; ++i) g.push_back(e3.eigenvalues()(i).imag());
  std::sort(g.begin(), g.end());
  CHECK(g[0] == doctest::Approx(-1 / std::sqrt(0.05)));
  CHECK(g[3] == doctest::Approx(1 / std::sqrt(0.05)));
}

TEST_CASE("ep_rhs: steady state and linear action") {
  for (int d : {2, 3}) {
    const Grid g = grid_for(d);
    const ScalingParams p(0.1, 1.0, d);
    const EPState s0 = EPState::uniform(g, p);
    const Tendency t0 = ep_rhs(s0);
    CHECK(t0.dn.max_abs() == 0.0);
    for (const auto& f : t0.du) CHECK(f.max_abs() == 0.0);

    // Small single mode: tendency equals (L/eps) applied to the mode.
    const double a = 1e-6;
    const std::array<double, 3> kv{0.5, d == 2 ? 1.0 : 0.5, 1.0};
    EPState s = s0;
    auto mode = [&](double amp, double phase) {
      return RealField::sample(g, [&](const Point& x) {
        double th = kv[0] * x[0] + kv[1] * x[1] + (d == 3 ? kv[2] * x[2] : 0.0);
        return amp * std::cos(th + phase);
      });
    };
    s.n = mode(a, 0.0);
    s.n += 1.0;
    s.u[0] = mode(0.5 * a, 0.3);
    s.u[1] = mode(0.2 * a, 1.1);
    if (d == 3) s.u[2] = mode(0.7 * a, -0.4);
    s.phi = solve_poisson(s.n, p).phi;
    const Tendency t = ep_rhs(s);

    // Compare the e^{i theta} coefficients.
    const MatrixXc L = linearized_symbol(kv, p) / p.epsilon();
    Eigen::VectorXcd U(d + 1);
    const std::complex<double> I(0, 1);
    U(0) = a * 0.5;
    U(1) = 0.5 * a * 0.5 * std::exp(I * 0.3);
    U(2) = 0.2 * a * 0.5 * std::exp(I * 1.1);
    if (d == 3) U(3) = 0.7 * a * 0.5 * std::exp(-I * 0.4);
    const Eigen::VectorXcd LU = L * U;

    std::size_t idx = 0;
    for (std::size_t i = 0; i < g.spectral_size(); ++i) {
      bool hit = std::abs(g.k(0)[i] - kv[0]) < 1e-12 && std::abs(g.k(1)[i] - kv[1]) < 1e-12;
      if (d == 3) hit = hit && std::abs(g.k(2)[i] - kv[2]) < 1e-12;
      if (hit) idx = i;
    }
    REQUIRE(idx != 0);
    std::vector<RealField> comps{t.dn};
    for (const auto& f : t.du) comps.push_back(f);
    for (int r = 0; r <= d; ++r) {
      const auto F = spectral::forward_transform(comps[static_cast<std::size_t>(r)]);
      CHECK(std::abs(F[idx] - LU(r)) < 1e-10);
    }
  }
}

TEST_CASE("stepper: nonlinear split is consistent with ep_rhs") {
  const Grid g = grid_for(2);
  const ScalingParams p(0.2, 1.0, 2);
  StepperConfig cfg;
  cfg.dt = 0.01;
  const EpStepper st(g, p, cfg);
  EPState s = EPState::uniform(g, p);
  s.n = RealField::sample(g, [](const Point& x) { return 1.0 + 0.05 * std::sin(x[0]) * std::cos(0.5 * x[1]); });
  s.u[0] = RealField::sample(g, [](const Point& x) { return 0.03 * std::cos(0.5 * x[0] + x[1]); });
  s.u[1] = RealField::sample(g, [](const Point& x) { return 0.02 * std::sin(x[1]); });
  s.phi = solve_poisson(s.n, p).phi;
  const auto U = EpStepper::to_spectral(s);
  RealField warm = s.phi;
  const auto N = st.nonlinear(U, warm);
  const auto LU = st.linear_apply(U);
  const Tendency t = ep_rhs(s);
  std::vector<RealField> comps{t.dn, t.du[0], t.du[1]};
  for (std::size_t r = 0; r < 3; ++r) {
    const auto T = spectral::forward_transform(comps[r]);
    const auto S = spectral::dealias(LU[r] + N[r]);
    // The two paths differ only in how the pressure term aliases
    // (grad n / n versus grad log n).
    const auto Td = spectral::dealias(T);
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < T.size(); ++i) {
      worst = std::max(worst, std::abs(Td[i] - S[i]));
      scale = std::max(scale, std::abs(Td[i]));
    }
    CHECK(worst < 1e-8 * scale);
  }
}

TEST_CASE("stepper: CFL guard") {
  const Grid g = grid_for(2);
  const ScalingParams p(0.1, 1.0, 2);
  StepperConfig cfg;
  cfg.dt = 2.0 * ep_dt_max(g, p);
  CHECK_THROWS_AS(EpStepper(g, p, cfg), ConfigError);
}

TEST_CASE("stepper: steady state, mass and linear fidelity") {
  for (int d : {2, 3}) {
    for (double eps : {0.05, 0.2}) {
      const Grid g = grid_for(d);
      const ScalingParams p(eps, 1.0, d);
      StepperConfig cfg;
      cfg.dt = ep_dt_max(g, p);

      const EPState s0 = EPState::uniform(g, p);
      const EpStepper st(g, p, cfg);
      EPState s = s0;
      for (int i = 0; i < 100; ++i) s = st.step(s);
      double dev = (s.n - s0.n).max_abs() + s.phi.max_abs();
      for (const auto& f : s.u) dev += f.max_abs();
      CHECK(dev <= 1e-12);

      // Linear regime: compare with the per-mode exponential.
      const double a = 1e-6;
      EPState lin = s0;
      lin.n = RealField::sample(g, [&](const Point& x) { return 1.0 + a * std::cos(0.5 * x[0] + 0.5 * x[1]); });
      lin.phi = solve_poisson(lin.n, p).phi;
      const double mass0 = (lin.n - s0.n).integral();
      const auto run = run_ep(lin, 1.0, cfg, {});
      CHECK(std::abs((run.state.n - s0.n).integral() - mass0) <= 1e-10 * g.volume());

      const auto U0 = EpStepper::to_spectral(lin);
      std::vector<spectral::SpectralField> Uex;
      for (int r = 0; r <= d; ++r) Uex.emplace_back(g);
      for (std::size_t i = 0; i < g.spectral_size(); ++i) {
        if (std::abs(U0[0][i]) == 0.0) continue;
        std::array<double, 3> kv{};
        for (int ax = 0; ax < d; ++ax) kv[static_cast<std::size_t>(ax)] = g.k(ax)[i];
        const MatrixXc E = expm_eig(linearized_symbol(kv, p) / eps, 1.0);
        for (int r = 0; r <= d; ++r) Uex[static_cast<std::size_t>(r)][i] = E(r, 0) * U0[0][i];
      }
      const auto Ur = EpStepper::to_spectral(run.state);
      double err = 0.0;
      for (int r = 0; r <= d; ++r) {
        const auto diff = spectral::inverse_transform(Ur[static_cast<std::size_t>(r)] - Uex[static_cast<std::size_t>(r)]);
        err = std::max(err, diff.max_abs());
      }
      CHECK(err <= 1e-8);
    }
  }
}

TEST_CASE("run_ep: zero horizon and blow-up guard fields") {
  const Grid g = grid_for(2);
  const ScalingParams p(0.1, 1.0, 2);
  EPState s = EPState::uniform(g, p);
  StepperConfig cfg;
  cfg.dt = ep_dt_max(g, p);
  const auto r = run_ep(s, 0.0, cfg);
  CHECK(r.state.time == 0.0);
  CHECK(r.log.snapshots.size() == 1);
  const auto j = r.log.to_json();
  CHECK(j["snapshots"][0].contains("poisson_residual"));
}
