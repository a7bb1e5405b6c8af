#include "disperlim/limit/equations.hpp"

#include <string>

#include "disperlim/error.hpp"

namespace disperlim::limit {

using spectral::derivative;
using spectral::forward_transform;
using spectral::inverse_transform;

Equation parse_equation(std::string_view name) {
  if (name == "KP2" || name == "kp") return Equation::KP2;
  if (name == "ZK" || name == "zk") return Equation::ZK;
  if (name == "LinKP" || name == "lin-kp") return Equation::LinKP;
  if (name == "LinZK" || name == "lin-zk") return Equation::LinZK;
  throw ConfigError("unknown equation '" + std::string(name) + "'");
}

std::string_view equation_name(Equation e) {
  switch (e) {
    case Equation::KP2: return "KP2";
    case Equation::ZK: return "ZK";
    case Equation::LinKP: return "LinKP";
    case Equation::LinZK: return "LinZK";
  }
  return "?";
}

LimitCoefficients LimitCoefficients::from_speed(double V) {
  LimitCoefficients c;
  c.V = V;
  c.a = 1.0 / (2.0 * V);
  c.c_N = V;
  c.beta = 1.0 / (2.0 * V) + 0.5 * V * V * V;
  c.c_L = V;
  c.kp_transverse = 0.5 * V;
  return c;
}

LimitCoefficients LimitConfig::coefficients() const {
  LimitCoefficients c = LimitCoefficients::from_speed(V);
  if (!std::isnan(zk_nonlinear_coeff)) c.c_N = zk_nonlinear_coeff;
  if (!std::isnan(zk_transverse_coeff)) c.beta = zk_transverse_coeff;
  if (!std::isnan(lin_coupling)) c.c_L = lin_coupling;
  return c;
}

void LimitConfig::validate() const {
  if (!(V > 0.0)) throw ConfigError("limit solver: V must be positive");
  if (!(dt > 0.0)) throw ConfigError("limit solver: dt must be positive");
  if (!(T >= 0.0)) throw ConfigError("limit solver: T must be nonnegative");
  if (store_every < 1) throw ConfigError("limit solver: store_every must be >= 1");
}

nlohmann::json LimitConfig::to_json() const {
  const LimitCoefficients c = coefficients();
  return {{"equation", equation_name(equation)},
          {"V", V},
          {"dt", dt},
          {"T", T},
          {"coefficients",
           {{"a", c.a}, {"c_N", c.c_N}, {"beta", c.beta}, {"c_L", c.c_L}, {"kp_transverse", c.kp_transverse}}},
          {"store_every", store_every}};
}

cplx kp2_linear_symbol(double k1, double k2, double V) {
  if (k1 == 0.0) return {0.0, 0.0};
  return {0.0, k1 * k1 * k1 / (2.0 * V) - 0.5 * V * k2 * k2 / k1};
}

cplx zk_linear_symbol(double k1, double kperp2, double a, double beta) {
  return {0.0, a * k1 * k1 * k1 + beta * k1 * kperp2};
}

std::vector<cplx> linear_symbol_table(const spectral::Grid& g, Equation e,
                                      const LimitCoefficients& c) {
  const bool kp = e == Equation::KP2 || e == Equation::LinKP;
  if (kp && g.rank() != 2) throw ConfigError("KP solvers need a 2-D grid");
  if (!kp && g.rank() != 3) throw ConfigError("ZK solvers need a 3-D grid");
  std::vector<cplx> sym(g.spectral_size());
  const int nyq = -g.dim(0) / 2;
  for (std::size_t i = 0; i < sym.size(); ++i) {
    // Every term is odd in k1, so the k1-Nyquist plane carries no dynamics.
    if (g.mode(0)[i] == nyq) continue;
    const double k1 = g.k(0)[i];
    if (kp) {
      const double k2 = g.k(1)[i];
      sym[i] = k1 == 0.0 ? cplx(0.0, 0.0)
                         : cplx(0.0, c.a * k1 * k1 * k1 - c.kp_transverse * k2 * k2 / k1);
    } else {
      const double kp2 = g.k(1)[i] * g.k(1)[i] + g.k(2)[i] * g.k(2)[i];
      sym[i] = zk_linear_symbol(k1, kp2, c.a, c.beta);
    }
  }
  return sym;
}

SpectralField burgers_term(const SpectralField& N, double coef) {
  const RealField n = inverse_transform(N);
  SpectralField sq = spectral::dealias(forward_transform(n * n));
  return (-0.5 * coef) * derivative(sq, 0, 1);
}

namespace {

RealField apply_linear(const RealField& n, Equation e, const LimitCoefficients& c) {
  const auto sym = linear_symbol_table(n.grid(), e, c);
  SpectralField N = forward_transform(n);
  return inverse_transform(N.scale(sym));
}

}  // namespace

RealField kp2_rhs(const RealField& n, const LimitCoefficients& c) {
  const SpectralField N = forward_transform(n);
  return apply_linear(n, Equation::KP2, c) + inverse_transform(burgers_term(N, c.V));
}

RealField zk_rhs(const RealField& n, const LimitCoefficients& c) {
  const SpectralField N = forward_transform(n);
  return apply_linear(n, Equation::ZK, c) + inverse_transform(burgers_term(N, c.c_N));
}

RealField linearized_rhs(const RealField& m, const RealField& n1, Equation e,
                         const LimitCoefficients& c) {
  const SpectralField P = spectral::dealias(forward_transform(n1 * m));
  return apply_linear(m, e, c) + inverse_transform((-c.c_L) * derivative(P, 0, 1));
}

RealField linearized_operator(const RealField& m, const RealField& m_t, const RealField& n1,
                              Equation e, const LimitCoefficients& c) {
  using spectral::spectral_derivative;
  RealField inner = m_t + c.c_L * spectral_derivative(n1 * m, 0) + c.a * spectral_derivative(m, 0, 3);
  if (e == Equation::LinKP) {
    return spectral_derivative(inner, 0) + c.kp_transverse * spectral_derivative(m, 1, 2);
  }
  return inner + c.beta * spectral_derivative(spectral::transverse_laplacian(m), 0);
}

}  // namespace disperlim::limit
