#pragma once

#include "disperlim/limit/equations.hpp"

namespace disperlim::limit {

struct LineSoliton {
  RealField field;
  double speed = 0.0;
  double amplitude = 0.0;
  double x0 = 0.0;
};

/// u = (6 kappa^2 / V^2) sech^2(kappa (x1 - x0)) with speed 2 kappa^2 / V,
/// the travelling wave of u_t + V u u_1 + (1/2V) u_111 = 0, constant in the
/// transverse directions. x0 defaults to mid-domain. Throws ConfigError if
/// the tail at half a period exceeds 1e-10 of the peak.
LineSoliton kdv_line_soliton(double kappa, double V, const spectral::Grid& g,
                             double x0 = std::nan(""));

/// Same profile translated to time t on the periodic x1 axis.
RealField kdv_line_soliton_at(double kappa, double V, const spectral::Grid& g, double x0, double t);

struct SolitonCrossing {
  double expected_speed = 0.0;
  double shift_error = 0.0;  // peak offset after one crossing, periodic, signed
  double cell = 0.0;
  double transverse_deviation = 0.0;
  bool passed() const { return std::abs(shift_error) <= cell; }
};

/// Propagates the line soliton once across an nx-point periodic box of
/// length L (8 transverse points) with KP-II and locates the grid peak.
SolitonCrossing soliton_crossing_test(double kappa, double V, int nx = 256, double L = 50.0,
                                      double dt = 0.02);

}  // namespace disperlim::limit
