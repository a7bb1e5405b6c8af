#include "disperlim/limit/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "disperlim/error.hpp"
#include "disperlim/limit/solvers.hpp"

namespace disperlim::limit {

namespace {

double sech2(double x) {
  const double c = std::cosh(x);
  return 1.0 / (c * c);
}

}  // namespace

RealField kdv_line_soliton_at(double kappa, double V, const spectral::Grid& g, double x0,
                              double t) {
  const double A = 6.0 * kappa * kappa / (V * V);
  const double c = 2.0 * kappa * kappa / V;
  const double L = g.length(0);
  return RealField::sample(g, [&](const spectral::Point& x) {
    // Distance to the (periodically wrapped) centre in [-L/2, L/2).
    double s = std::fmod(x[0] - x0 - c * t, L);
    if (s < -0.5 * L) s += L;
    if (s >= 0.5 * L) s -= L;
    return A * sech2(kappa * s);
  });
}

LineSoliton kdv_line_soliton(double kappa, double V, const spectral::Grid& g, double x0) {
  if (kappa < 0.0) throw ConfigError("soliton: kappa must be nonnegative");
  if (!(V > 0.0)) throw ConfigError("soliton: V must be positive");
  LineSoliton s;
  s.x0 = std::isnan(x0) ? 0.5 * g.length(0) : x0;
  if (kappa == 0.0) {
    s.field = RealField(g);
    return s;
  }
  const double tail = sech2(0.5 * kappa * g.length(0));
  if (tail > 1e-10) {
    throw ConfigError("soliton: tail " + std::to_string(tail) +
                      " at half a period exceeds 1e-10; enlarge the x1 period or kappa");
  }
  s.amplitude = 6.0 * kappa * kappa / (V * V);
  s.speed = 2.0 * kappa * kappa / V;
  s.field = kdv_line_soliton_at(kappa, V, g, s.x0, 0.0);
  return s;
}

SolitonCrossing soliton_crossing_test(double kappa, double V, int nx, double L, double dt) {
  const int ny = 8;
  const spectral::Grid g({nx, ny}, {L, 10.0});
  const LineSoliton s = kdv_line_soliton(kappa, V, g);
  SolitonCrossing out;
  out.expected_speed = s.speed;
  out.cell = g.spacing(0);
  if (!(s.speed > 0.0)) throw ConfigError("soliton test needs kappa > 0");

  LimitConfig cfg;
  cfg.equation = Equation::KP2;
  cfg.V = V;
  cfg.T = L / s.speed;
  cfg.dt = dt;
  cfg.store_every = 1 << 30;
  const RealField fin = solve_kp2(s.field, cfg).back();

  const auto at = [&](int i, int j) { return fin[static_cast<std::size_t>(i) * ny + j]; };
  int imax = 0;
  for (int i = 1; i < nx; ++i) {
    if (at(i, 0) > at(imax, 0)) imax = i;
  }
  double dx = std::remainder(imax * g.spacing(0) - s.x0, L);
  out.shift_error = dx;
  for (int i = 0; i < nx; ++i) {
    for (int j = 1; j < ny; ++j) {
      out.transverse_deviation = std::max(out.transverse_deviation, std::abs(at(i, j) - at(i, 0)));
    }
  }
  return out;
}

}  // namespace disperlim::limit
