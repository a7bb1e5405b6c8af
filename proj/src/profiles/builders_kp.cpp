#include <algorithm>

#include "disperlim/error.hpp"
#include "disperlim/profiles/builders.hpp"
#include "disperlim/spectral/ops.hpp"
#include "internal.hpp"

namespace disperlim::profiles {

namespace detail {

using spectral::dealiased_product;
using spectral::forward_transform;
using spectral::inverse_transform;
using spectral::spectral_derivative;

namespace {
RealField dinv1(const RealField& f) {
  return inverse_transform(spectral::inverse_dx1_unchecked(forward_transform(f)));
}
}  // namespace

OrderContext context(int d, const ProfileOptions& opt) {
  return OrderContext{d, opt.coef.V, opt.u1_coeff()};
}

FieldMap kp_base(const RealField& n1, const ProfileOptions& opt) {
  if (n1.grid().rank() != 2) throw ConfigError("KP profiles need a 2-D grid");
  const double V = opt.coef.V;
  FieldMap f;
  f["n1"] = n1;
  f["n1_t"] = limit::kp2_rhs(n1, opt.coef);
  f["u1_1"] = V * n1;
  f["phi1"] = n1;
  f["u2_1"] = V * spectral::antiderivative_x1(spectral_derivative(n1, 1));
  RealField flux = spectral_derivative(dealiased_product(n1, f["u1_1"]), 0);
  f["U"] = dinv1(-1.0 * f["n1_t"] - flux - spectral_derivative(f["u2_1"], 1));
  f["Phi"] = spectral_derivative(n1, 0, 2) - 0.5 * dealiased_product(n1, n1);
  return f;
}

void kp_complete(FieldMap& f, const RealField& n2, const RealField& n2_t,
                 const ProfileOptions& opt) {
  const double V = opt.coef.V, Ti = V * V - 1.0;
  const RealField& n1 = f.at("n1");
  limit::LimitCoefficients fr = opt.coef;
  fr.c_L = V;  // derivative of the KP-II flux
  f["n1_tt"] = limit::linearized_rhs(f.at("n1_t"), n1, limit::Equation::LinKP, fr);
  f["n2"] = n2;
  f["n2_t"] = n2_t;
  f["u1_2"] = opt.u1_coeff() * n2 + f.at("U");
  f["phi2"] = n2 + f.at("Phi");
  add_velocity_rates(f, context(2, opt));
  RealField rhs = f.at("u2_1_t") +
                  V * dealiased_product(n1, spectral_derivative(f.at("u2_1"), 0)) -
                  Ti * dealiased_product(n1, spectral_derivative(n1, 1)) +
                  Ti * spectral_derivative(n2, 1) + spectral_derivative(f.at("phi2"), 1);
  f["u2_2"] = (1.0 / V) * dinv1(rhs);
}

RealField source_kp(FieldMap f, const ProfileOptions& opt) {
  const RealField zero(f.at("n1").grid(), 0.0);
  kp_complete(f, zero, zero, opt);
  return (-0.5 / opt.coef.V) * eps3_combination(f, context(2, opt));
}

ProfileHierarchy to_hierarchy(FieldMap f, int d, int order, double V, double time) {
  ProfileHierarchy h;
  h.order = order;
  h.d = d;
  h.V = V;
  h.time = time;
  const auto names = primary_field_names(d, order);
  for (auto& [k, v] : f) {
    if (std::find(names.begin(), names.end(), k) != names.end()) {
      h.fields.emplace(k, std::move(v));
    } else if (k == "U" || k == "Phi" || k == "G2" || k == "n1_t" || k == "n1_tt" || k == "n2_t") {
      h.aux.emplace(k, std::move(v));
    }
  }
  return h;
}

}  // namespace detail

ProfileHierarchy first_order_profiles_kp(const RealField& n1, const ProfileOptions& opt,
                                         double time) {
  return detail::to_hierarchy(detail::kp_base(n1, opt), 2, 1, opt.coef.V, time);
}

ProfileHierarchy second_order_profiles_kp(const RealField& n1, const RealField& n2,
                                          const ProfileOptions& opt, double time) {
  if (limit::kp_constraint_violation(n2) > 1e-8) {
    throw ConstraintError("n2 violates the zero x1-mean constraint", limit::kp_constraint_violation(n2));
  }
  FieldMap f = detail::kp_base(n1, opt);
  RealField G = detail::source_kp(f, opt);
  limit::LimitCoefficients c = opt.coef;
  RealField n2_t = limit::linearized_rhs(n2, n1, limit::Equation::LinKP, c) +
                   inverse_transform(spectral::inverse_dx1_unchecked(spectral::forward_transform(G)));
  detail::kp_complete(f, n2, n2_t, opt);
  f["G2"] = std::move(G);
  return detail::to_hierarchy(std::move(f), 2, 2, opt.coef.V, time);
}

ProfileHierarchy second_order_profiles_kp(const limit::Trajectory& n1, const limit::Trajectory& n2,
                                          const ProfileOptions& opt, double t) {
  return second_order_profiles_kp(n1.at(t), n2.at(t), opt, t);
}

}  // namespace disperlim::profiles
