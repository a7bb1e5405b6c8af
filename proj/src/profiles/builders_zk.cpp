#include "disperlim/error.hpp"
#include "disperlim/profiles/builders.hpp"
#include "disperlim/spectral/ops.hpp"
#include "internal.hpp"

namespace disperlim::profiles {

namespace detail {

using spectral::dealiased_product;
using spectral::spectral_derivative;

FieldMap zk_base(const RealField& n1, const ProfileOptions& opt) {
  if (n1.grid().rank() != 3) throw ConfigError("ZK profiles need a 3-D grid");
  const double V = opt.coef.V;
  FieldMap f;
  f["n1"] = n1;
  f["n1_t"] = limit::zk_rhs(n1, opt.coef);
  f["u1_1"] = V * n1;
  f["phi1"] = n1;
  f["u2_1"] = (-V * V) * spectral_derivative(n1, 2);
  f["u3_1"] = (V * V) * spectral_derivative(n1, 1);
  f["u2_2"] = V * spectral_derivative(f["u3_1"], 0);
  f["u3_2"] = -V * spectral_derivative(f["u2_1"], 0);
  RealField rhs = -1.0 * f["n1_t"] - spectral_derivative(dealiased_product(n1, f["u1_1"]), 0) -
                  spectral_derivative(f["u2_2"], 1) - spectral_derivative(f["u3_2"], 2);
  f["U"] = spectral::inverse_transform(
      spectral::inverse_dx1_unchecked(spectral::forward_transform(rhs)));
  f["Phi"] = spectral::laplacian(n1) - 0.5 * dealiased_product(n1, n1);
  const RealField zero(n1.grid(), 0.0);
  zk_perp3(f, zero, f["Phi"], V);
  return f;
}

void zk_perp3(FieldMap& f, const RealField& n2, const RealField& phi2, double V) {
  const double Ti = V * V - 1.0;
  const RealField& n1 = f.at("n1");
  f["u3_3"] = -V * spectral_derivative(f.at("u2_2"), 0) +
              Ti * (spectral_derivative(n2, 1) - dealiased_product(n1, spectral_derivative(n1, 1))) +
              spectral_derivative(phi2, 1);
  f["u2_3"] = V * spectral_derivative(f.at("u3_2"), 0) -
              Ti * (spectral_derivative(n2, 2) - dealiased_product(n1, spectral_derivative(n1, 2))) -
              spectral_derivative(phi2, 2);
}

void zk_complete(FieldMap& f, const RealField& n2, const RealField& n2_t,
                 const ProfileOptions& opt) {
  const double V = opt.coef.V;
  const RealField& n1 = f.at("n1");
  limit::LimitCoefficients fr = opt.coef;
  fr.c_L = opt.coef.c_N;  // derivative of the ZK flux
  f["n1_tt"] = limit::linearized_rhs(f.at("n1_t"), n1, limit::Equation::LinZK, fr);
  f["n2"] = n2;
  f["n2_t"] = n2_t;
  f["u1_2"] = opt.u1_coeff() * n2 + f.at("U");
  f["phi2"] = n2 + f.at("Phi");
  add_velocity_rates(f, context(3, opt));
  zk_perp3(f, n2, f.at("phi2"), V);
  const RealField& u11 = f.at("u1_1");
  f["u3_4"] = f.at("u2_1_t") - V * spectral_derivative(f.at("u2_3"), 0) +
              dealiased_product(u11, spectral_derivative(f.at("u2_1"), 0));
  f["u2_4"] = -1.0 * (f.at("u3_1_t") - V * spectral_derivative(f.at("u3_3"), 0) +
                      dealiased_product(u11, spectral_derivative(f.at("u3_1"), 0)));
}

RealField source_zk(FieldMap f, const ProfileOptions& opt) {
  const RealField zero(f.at("n1").grid(), 0.0);
  zk_complete(f, zero, zero, opt);
  return (-0.5 / opt.coef.V) * eps3_combination(f, context(3, opt));
}

}  // namespace detail

ProfileHierarchy first_order_profiles_zk(const RealField& n1, const ProfileOptions& opt,
                                         double time) {
  return detail::to_hierarchy(detail::zk_base(n1, opt), 3, 1, opt.coef.V, time);
}

ProfileHierarchy second_order_profiles_zk(const RealField& n1, const RealField& n2,
                                          const ProfileOptions& opt, double time) {
  FieldMap f = detail::zk_base(n1, opt);
  RealField G = detail::source_zk(f, opt);
  RealField n2_t = limit::linearized_rhs(n2, n1, limit::Equation::LinZK, opt.coef) + G;
  detail::zk_complete(f, n2, n2_t, opt);
  f["G2"] = std::move(G);
  return detail::to_hierarchy(std::move(f), 3, 2, opt.coef.V, time);
}

ProfileHierarchy second_order_profiles_zk(const limit::Trajectory& n1, const limit::Trajectory& n2,
                                          const ProfileOptions& opt, double t) {
  return second_order_profiles_zk(n1.at(t), n2.at(t), opt, t);
}

}  // namespace disperlim::profiles
