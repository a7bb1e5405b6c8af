#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "disperlim/error.hpp"
#include "disperlim/limit/etd.hpp"
#include "disperlim/limit/invariants.hpp"
#include "disperlim/limit/soliton.hpp"
#include "disperlim/limit/solvers.hpp"

using namespace disperlim;
using namespace disperlim::limit;
using spectral::Grid;
using spectral::Point;
constexpr double kPi = std::numbers::pi;

namespace {

RealField bump2(const Grid& g, double amp, double cx, double cy, double w) {
  // x1-derivative of a Gaussian: zero x1-mean by construction.
  return RealField::sample(g, [=](const Point& x) {
    const double s = x[0] - cx, y = x[1] - cy;
    return -amp * s * std::exp(-(s * s + y * y) / w);
  });
}

double rel_err(const RealField& a, const RealField& b) {
  return spectral::l2_norm(a - b) / spectral::l2_norm(b);
}

}  // namespace

TEST_CASE("phi functions: contour and closed forms agree") {
  for (cplx z : {cplx(1e-8, 0), cplx(0, 0.3), cplx(-0.9, 0.2), cplx(0, 1.2), cplx(-3, 0), cplx(0, 40)}) {
    const PhiValues p = phi_functions(z);
    // Taylor reference for small |z|, closed form for large.
    cplx t1 = 0, t2 = 0, t3 = 0, term = 1;
    double f = 1;
    if (std::abs(z) < 2) {
      for (int k = 0; k < 40; ++k) {
        t1 += term / (f * (k + 1));
        t2 += term / (f * (k + 1) * (k + 2));
        t3 += term / (f * (k + 1) * (k + 2) * (k + 3));
        term *= z;
        f *= (k + 1);
      }
    } else {
      t1 = (std::exp(z) - 1.0) / z;
      t2 = (t1 - 1.0) / z;
      t3 = (t2 - 0.5) / z;
    }
    CHECK(std::abs(p.phi1 - t1) < 1e-13);
    CHECK(std::abs(p.phi2 - t2) < 1e-13);
    CHECK(std::abs(p.phi3 - t3) < 1e-13);
  }
}

TEST_CASE("KP-II symbol") {
  CHECK(kp2_linear_symbol(1, 0, 1) == cplx(0, 0.5));
  CHECK(kp2_linear_symbol(1, 1, 1) == cplx(0, 0.0));
  CHECK(kp2_linear_symbol(2, 2, 1) == cplx(0, 4.0 - 1.0));
  CHECK(kp2_linear_symbol(0, 3, 1) == cplx(0, 0));
  CHECK(kp2_linear_symbol(0.7, 1.3, 1.4).real() == 0.0);
}

TEST_CASE("zero data stays zero") {
  LimitConfig cfg;
  cfg.T = 0.1;
  cfg.dt = 0.01;
  Grid g2({16, 16}, {10, 10});
  const auto a = solve_kp2(RealField(g2), cfg);
  CHECK(a.back().max_abs() == 0.0);
  Grid g3({8, 8, 8}, {10, 10, 10});
  CHECK(solve_zk(RealField(g3), cfg).back().max_abs() == 0.0);
  CHECK(solve_linearized_kp({}, RealField(g2), cfg).back().max_abs() == 0.0);
  CHECK(solve_linearized_zk({}, RealField(g3), cfg).back().max_abs() == 0.0);
}

TEST_CASE("KP-II rejects constrained input") {
  Grid g({16, 16}, {2 * kPi, 2 * kPi});
  LimitConfig cfg;
  const RealField bad = RealField::sample(g, [](const Point& x) { return std::sin(x[1]); });
  CHECK_THROWS_AS(solve_kp2(bad, cfg), ConstraintError);
}

TEST_CASE("linear flow matches the symbol exponential") {
  Grid g({32, 32}, {20, 20});
  LimitConfig cfg;
  cfg.V = std::sqrt(2.0);
  cfg.T = 1.0;
  cfg.dt = 0.05;
  const RealField m0 = bump2(g, 1.0, 10, 10, 4);
  const auto tr = solve_linearized_kp({}, m0, cfg);
  const auto sym = linear_symbol_table(g, Equation::LinKP, cfg.coefficients());
  auto M = spectral::forward_transform(m0);
  for (std::size_t i = 0; i < M.size(); ++i) M[i] *= std::exp(sym[i] * cfg.T);
  const RealField ex = spectral::inverse_transform(M);
  CHECK((tr.back() - ex).max_abs() < 1e-10);
  CHECK(std::abs(spectral::l2_norm(tr.back()) - spectral::l2_norm(m0)) < 1e-12 * spectral::l2_norm(m0));
}

TEST_CASE("soliton substitution and propagation") {
  const double V = 1.0, kappa = 0.5;
  Grid g({256, 8}, {50, 10});
  const LineSoliton s = kdv_line_soliton(kappa, V, g);
  CHECK(s.speed == doctest::Approx(2 * kappa * kappa / V));
  CHECK(kdv_line_soliton(0.0, V, g).field.max_abs() == 0.0);
  CHECK_THROWS_AS(kdv_line_soliton(0.1, V, g), ConfigError);

  // Substitution into u_t + V u u_1 + (1/2V) u_111 with u_t = -c u_1, using
  // closed-form derivatives of S = sech^2(y): dS = -2ST, d3S = -2ST(4 - 12S).
  {
    const double A = s.amplitude, c = s.speed;
    double r2 = 0.0;
    for (int i = 0; i < 256; ++i) {
      const double y = kappa * (i * g.spacing(0) - s.x0);
      const double S = 1 / (std::cosh(y) * std::cosh(y)), T = std::tanh(y);
      const double u = A * S, us = A * kappa * (-2 * S * T);
      const double usss = A * kappa * kappa * kappa * (-2 * S * T * (4 - 12 * S));
      const double r = -c * us + V * u * us + usss / (2 * V);
      r2 += r * r * g.spacing(0) * 10.0;
    }
    CHECK(std::sqrt(r2) < 1e-10);
  }
  // Spectral derivatives see the periodic wrap of the tail, hence the looser bound.
  const RealField u1 = spectral::spectral_derivative(s.field, 0);
  const RealField res = (-s.speed) * u1 + V * (s.field * u1) +
                        (1 / (2 * V)) * spectral::spectral_derivative(s.field, 0, 3);
  CHECK(spectral::l2_norm(res) < 1e-7);

  LimitConfig cfg;
  cfg.V = V;
  cfg.T = 50.0 / s.speed;  // one crossing
  cfg.dt = 0.02;
  cfg.store_every = 1000000;
  const auto tr = solve_kp2(s.field, cfg);
  const RealField& fin = tr.back();
  std::size_t imax = 0;
  for (std::size_t i = 0; i < 256; ++i) {
    if (fin[i * 8] > fin[imax * 8]) imax = i;
  }
  const double xpeak = imax * g.spacing(0);
  double dx = std::fmod(xpeak - s.x0, 50.0);
  if (dx > 25) dx -= 50;
  if (dx < -25) dx += 50;
  CHECK(std::abs(dx) <= g.spacing(0));
  // y-independence is kept.
  double ydev = 0.0;
  for (std::size_t i = 0; i < 256; ++i) {
    for (std::size_t j = 1; j < 8; ++j) ydev = std::max(ydev, std::abs(fin[i * 8 + j] - fin[i * 8]));
  }
  CHECK(ydev < 1e-12);
}

TEST_CASE("KP-II invariants") {
  Grid g({64, 64}, {40, 40});
  LimitConfig cfg;
  cfg.V = std::sqrt(2.0);
  cfg.T = 1.0;
  cfg.dt = 1e-2;
  const RealField n0 = bump2(g, 0.6, 20, 20, 9);
  const auto tr = solve_kp2(n0, cfg);
  const auto c = cfg.coefficients();
  const auto q0 = conserved_quantities(n0, Equation::KP2, c);
  const auto q1 = conserved_quantities(tr.back(), Equation::KP2, c);
  CHECK(std::abs(q1.mass - q0.mass) <= 1e-8 * spectral::l2_norm(n0));
  CHECK(std::abs(q1.l2 - q0.l2) <= 1e-8 * q0.l2);
  CHECK(kp_constraint_violation(tr.back()) < 1e-10);
}

TEST_CASE("ZK invariants and Hamiltonian two ways") {
  Grid g({32, 32, 32}, {30, 30, 30});
  LimitConfig cfg;
  cfg.V = 1.0;
  cfg.T = 0.5;
  cfg.dt = 1e-2;
  const RealField n0 = RealField::sample(g, [](const Point& x) {
    const double r2 = (x[0] - 15) * (x[0] - 15) + (x[1] - 15) * (x[1] - 15) + (x[2] - 15) * (x[2] - 15);
    return 0.8 * std::exp(-r2 / 8);
  });
  const auto c = cfg.coefficients();
  const auto q0 = conserved_quantities(n0, Equation::ZK, c);

  // Parseval path for the quadratic part of H.
  const auto F = spectral::forward_transform(n0);
  std::vector<double> w(F.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double k1 = g.k(0)[i], k2 = g.k(1)[i], k3 = g.k(2)[i];
    w[i] = 0.5 * c.a * k1 * k1 + 0.5 * c.beta * (k2 * k2 + k3 * k3);
  }
  double cubic = 0.0;
  for (double v : n0.values()) cubic += v * v * v;
  cubic *= g.cell_volume() * c.c_N / 6.0;
  const double H2 = F.weighted_energy(w) * g.volume() - cubic;
  CHECK(*q0.hamiltonian == doctest::Approx(H2).epsilon(1e-12));

  const auto tr = solve_zk(n0, cfg);
  const auto q1 = conserved_quantities(tr.back(), Equation::ZK, c);
  CHECK(std::abs(q1.mass - q0.mass) <= 1e-6 * std::abs(q0.mass));
  CHECK(std::abs(q1.l2 - q0.l2) <= 1e-6 * q0.l2);
  CHECK(std::abs(*q1.hamiltonian - *q0.hamiltonian) <= 1e-6 * std::abs(*q0.hamiltonian));

  Grid g1({16, 16, 16}, {2 * kPi, 2 * kPi, 2 * kPi});
  const RealField s = RealField::sample(g1, [](const Point& x) { return std::sin(x[0]); });
  const auto qs = conserved_quantities(s, Equation::ZK, c);
  CHECK(std::abs(qs.mass) < 1e-12);
  CHECK(qs.l2 == doctest::Approx(std::pow(2 * kPi, 3) / 2).epsilon(1e-12));
}

TEST_CASE("ZK reduces to KdV for transversely constant data") {
  const double V = 1.0;
  Grid g3({64, 8, 8}, {50, 10, 10});
  Grid g2({64, 8}, {50, 10});
  const auto s3 = kdv_line_soliton(0.6, V, g3);
  const auto s2 = kdv_line_soliton(0.6, V, g2);
  LimitConfig cfg;
  cfg.V = V;
  cfg.T = 2.0;
  cfg.dt = 0.01;
  const RealField a = solve_zk(s3.field, cfg).back();
  const RealField b = solve_kp2(s2.field, cfg).back();
  double d = 0.0;
  for (std::size_t i = 0; i < 64; ++i) d = std::max(d, std::abs(a[i * 64] - b[i * 8]));
  CHECK(d < 1e-8);
}

namespace {

// Travelling, breathing x1-derivative of a Gaussian, with its exact time derivative.
struct Manufactured {
  double c = 0.3, w = 4.0, cx = 10, cy = 10;
  int d = 2;
  RealField m(const Grid& g, double t) const {
    return RealField::sample(g, [&](const Point& x) {
      const double s = x[0] - cx - c * t;
      const double r2 = s * s + sq(x[1] - cy) + (d == 3 ? sq(x[2] - cy) : 0.0);
      return (1 + 0.5 * std::sin(t)) * (-2 * s / w) * std::exp(-r2 / w);
    });
  }
  RealField m_t(const Grid& g, double t) const {
    return RealField::sample(g, [&](const Point& x) {
      const double s = x[0] - cx - c * t;
      const double r2 = s * s + sq(x[1] - cy) + (d == 3 ? sq(x[2] - cy) : 0.0);
      const double E = std::exp(-r2 / w);
      const double gval = (-2 * s / w) * E;
      // d/dt of g(s), ds/dt = -c
      const double gs = (-2 / w) * E + (-2 * s / w) * (-2 * s / w) * E;
      return 0.5 * std::cos(t) * gval + (1 + 0.5 * std::sin(t)) * (-c) * gs;
    });
  }
  RealField n1(const Grid& g, double t) const {
    return RealField::sample(g, [&](const Point& x) {
      const double s = x[0] - cx - 0.5 * t;
      const double r2 = s * s + sq(x[1] - cy) + (d == 3 ? sq(x[2] - cy) : 0.0);
      return 0.8 * std::exp(-r2 / 6);
    });
  }
  static double sq(double v) { return v * v; }
};

double mms_error(int nx, int d) {
  Manufactured mf;
  mf.d = d;
  const Grid g = d == 2 ? Grid({nx, nx}, {20, 20}) : Grid({nx, nx, nx}, {20, 20, 20});
  LimitConfig cfg;
  cfg.V = std::sqrt(2.0);
  cfg.T = 1.0;
  cfg.dt = 0.01;
  cfg.store_every = 1000000;
  const auto coef = cfg.coefficients();
  const Equation eq = d == 2 ? Equation::LinKP : Equation::LinZK;
  LinearizedSource src;
  src.background = [&](double t) { return mf.n1(g, t); };
  src.G = [&](double t) { return linearized_operator(mf.m(g, t), mf.m_t(g, t), mf.n1(g, t), eq, coef); };
  const auto tr = d == 2 ? solve_linearized_kp(src, mf.m(g, 0), cfg)
                         : solve_linearized_zk(src, mf.m(g, 0), cfg);
  return rel_err(tr.back(), mf.m(g, cfg.T));
}

}  // namespace

TEST_CASE("manufactured solution: linearised KP") {
  const double coarse = mms_error(32, 2);
  const double fine = mms_error(64, 2);
  MESSAGE("lin-KP MMS errors: " << coarse << " -> " << fine);
  CHECK(fine <= 1e-6);
  CHECK(coarse >= 10 * fine);
}

TEST_CASE("manufactured solution: linearised ZK") {
  const double coarse = mms_error(24, 3);
  const double fine = mms_error(48, 3);
  MESSAGE("lin-ZK MMS errors: " << coarse << " -> " << fine);
  CHECK(fine <= 1e-6);
  CHECK(coarse >= 10 * fine);
}

TEST_CASE("trajectory interpolation and storage") {
  Grid g({8, 8}, {1, 1});
  Trajectory tr;
  // f(t) = t^3 with exact rates: cubic Hermite is exact.
  for (double t : {0.0, 0.5, 1.0}) tr.push(t, RealField(g, t * t * t), RealField(g, 3 * t * t));
  CHECK(tr.at(0.3)[0] == doctest::Approx(0.027).epsilon(1e-14));
  CHECK(tr.rate_at(0.7)[0] == doctest::Approx(3 * 0.49).epsilon(1e-14));
  CHECK_THROWS_AS(tr.at(1.5), ConfigError);
  const auto dir = std::filesystem::temp_directory_path() / "disperlim_traj_test";
  tr.write(dir, "n", {{"equation", "test"}});
  const Trajectory back = Trajectory::read(dir);
  CHECK(back.size() == 3);
  CHECK(back.at(0.3)[5] == doctest::Approx(0.027).epsilon(1e-14));
  std::filesystem::remove_all(dir);
}
