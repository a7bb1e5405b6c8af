#include "disperlim/error.hpp"
#include "disperlim/profiles/builders.hpp"
#include "disperlim/spectral/ops.hpp"
#include "internal.hpp"

namespace disperlim::profiles {

namespace {

using spectral::dealiased_product;
using spectral::forward_transform;
using spectral::inverse_transform;

RealField D(const RealField& f, int axis, int order = 1) {
  return spectral::spectral_derivative(f, axis, order);
}
RealField P(const RealField& a, const RealField& b) { return dealiased_product(a, b); }
RealField Dinv1(const RealField& f) {
  return inverse_transform(spectral::inverse_dx1_unchecked(forward_transform(f)));
}

}  // namespace

RealField second_order_source_kp(const RealField& n1, const ProfileOptions& opt) {
  return detail::source_kp(detail::kp_base(n1, opt), opt);
}

RealField second_order_source_zk(const RealField& n1, const ProfileOptions& opt) {
  return detail::source_zk(detail::zk_base(n1, opt), opt);
}

// The eps^3 combination with n2 = 0, after eliminating d_t^2 n1 through the
// linearised KP-II flow and collecting terms by hand.
RealField second_order_source_kp_closed_form(const RealField& a, const ProfileOptions& opt) {
  if (a.grid().rank() != 2) throw ConfigError("KP source needs a 2-D grid");
  const double V = opt.coef.V, Ti = V * V - 1.0;
  const RealField T = limit::kp2_rhs(a, opt.coef);
  const RealField a1 = D(a, 0), a2 = D(a, 1), a22 = D(a, 1, 2);
  const RealField w = Dinv1(a2);
  const RealField U = Dinv1(-1.0 * T - (2.0 * V) * P(a, a1) - V * Dinv1(a22));
  const RealField Phi = D(a, 0, 2) - 0.5 * P(a, a);
  const RealField aa = P(a, a);

  RealField S = (2.0 * V) * D(P(a, U), 0, 2);
  S += (V * V) * D(D(P(a, w), 1), 0);
  S += (V * V) * D(P(w, a2), 0);
  S += D(P(a, a2), 1);
  S += D(Phi, 1, 2);
  S += Ti * D(P(aa, a1), 0);
  S += D(a22 + D(Phi, 0, 2) - P(a, Phi) - (1.0 / 6.0) * P(aa, a), 0, 2);
  S -= V * D(P(a, T), 0);
  S += (0.5 / V) * D(T, 0, 3);
  S += (0.5 * V) * Dinv1(D(T, 1, 2));
  return (-0.5 / V) * S;
}

namespace {
limit::LinearizedSource sampled(const limit::Trajectory& n1,
                                std::function<RealField(const RealField&)> g) {
  limit::LinearizedSource s;
  auto bg = limit::background_from(n1);
  s.background = bg;
  s.G = [bg, g](double t) { return g(bg(t)); };
  return s;
}
}  // namespace

limit::LinearizedSource second_order_sources_kp(const limit::Trajectory& n1,
                                                const ProfileOptions& opt) {
  return sampled(n1, [opt](const RealField& f) { return second_order_source_kp(f, opt); });
}

limit::LinearizedSource second_order_sources_zk(const limit::Trajectory& n1,
                                                const ProfileOptions& opt) {
  return sampled(n1, [opt](const RealField& f) { return second_order_source_zk(f, opt); });
}

limit::LimitConfig second_order_config(const limit::LimitConfig& first) {
  limit::LimitConfig c = first;
  if (first.equation == limit::Equation::KP2) c.equation = limit::Equation::LinKP;
  else if (first.equation == limit::Equation::ZK) c.equation = limit::Equation::LinZK;
  else throw ConfigError("second-order run needs a nonlinear first-order equation");
  return c;
}

}  // namespace disperlim::profiles
