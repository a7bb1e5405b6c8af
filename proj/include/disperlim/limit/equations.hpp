#pragma once
// Coefficients, linear symbols and right-hand sides of the limit models.
//
//   KP-II:  n_t = -V n n_1 - a n_111 - (V/2) d1^-1 n_22
//   ZK:     n_t = -c_N n n_1 - a n_111 - beta d1 (n_22 + n_33)
//   lin-KP: m_t = -c_L d1(n1 m) - a m_111 - (V/2) d1^-1 m_22 + d1^-1 G
//   lin-ZK: m_t = -c_L d1(n1 m) - a m_111 - beta d1 lap_perp m + G
// with a = 1/(2V).

#include <cmath>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "disperlim/spectral/ops.hpp"

namespace disperlim::limit {

using spectral::cplx;
using spectral::RealField;
using spectral::SpectralField;

enum class Equation { KP2, ZK, LinKP, LinZK };
Equation parse_equation(std::string_view name);
std::string_view equation_name(Equation e);

struct LimitCoefficients {
  double V = 1.0;
  double a = 0.5;       // d1^3
  double c_N = 1.0;     // ZK nonlinearity
  double beta = 1.0;    // ZK d1 lap_perp
  double c_L = 1.0;     // background coupling in the linearised equations
  double kp_transverse = 0.5;  // (V/2) on d1^-1 d2^2

  /// Derived defaults: a = 1/(2V), c_N = V, beta = 1/(2V) + V^3/2, c_L = V.
  static LimitCoefficients from_speed(double V);
};

struct LimitConfig {
  Equation equation = Equation::KP2;
  double V = 1.0;
  double dt = 1e-3;
  double T = 1.0;
  // NaN selects the derived default.
  double zk_nonlinear_coeff = std::nan("");
  double zk_transverse_coeff = std::nan("");
  double lin_coupling = std::nan("");
  int store_every = 1;
  double blowup_factor = 10.0;

  LimitCoefficients coefficients() const;
  void validate() const;
  nlohmann::json to_json() const;
};

/// i[(1/2V) k1^3 - (V/2) k2^2 / k1], zero on the k1 = 0 plane.
cplx kp2_linear_symbol(double k1, double k2, double V);
/// i[a k1^3 + beta k1 |k_perp|^2].
cplx zk_linear_symbol(double k1, double kperp2, double a, double beta);

/// Per-mode linear symbol for the grid; k1-Nyquist entries are zero.
std::vector<cplx> linear_symbol_table(const spectral::Grid& g, Equation e,
                                      const LimitCoefficients& c);

/// Nonlinear part of the KP-II / ZK tendency: -coef * d1(n^2 / 2), dealiased.
SpectralField burgers_term(const SpectralField& N, double coef);

/// Full tendencies, consistent with the solvers' discrete dynamics.
RealField kp2_rhs(const RealField& n, const LimitCoefficients& c);
RealField zk_rhs(const RealField& n, const LimitCoefficients& c);
/// Homogeneous part of the linearised tendency (without the source).
RealField linearized_rhs(const RealField& m, const RealField& n1, Equation e,
                         const LimitCoefficients& c);

/// Residual of the linearised equation in the source's own form:
/// lin-KP: d1(m_t + c_L d1(n1 m) + a m_111) + (V/2) m_22, lin-ZK: m_t + c_L d1(n1 m) + a m_111 + beta d1 lap_perp m.
RealField linearized_operator(const RealField& m, const RealField& m_t, const RealField& n1,
                              Equation e, const LimitCoefficients& c);

}  // namespace disperlim::limit
