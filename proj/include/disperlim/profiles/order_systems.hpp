#pragma once
// Term-by-term evaluation of the equations collected at each power of eps.
// Products are truncated to the 2/3 band, matching the limit solvers, so a
// consistent hierarchy cancels to rounding level.

#include <map>
#include <string>

#include "disperlim/spectral/field.hpp"

namespace disperlim::profiles {

using spectral::RealField;
using FieldMap = std::map<std::string, RealField>;

struct OrderContext {
  int d = 2;
  double V = 1.0;
  double kappa = 1.0;  // u1_2 = kappa n2 + U
  double Ti() const { return V * V - 1.0; }
};

/// Adds the time derivatives of the velocity profiles implied by their
/// definitions (u1_1_t, u2_1_t, [u3_1_t, u2_2_t, u3_2_t], and with n1_tt
/// present U_t and u1_2_t). Needs n1 and n1_t; absent n2_t reads as zero.
void add_velocity_rates(FieldMap& f, const OrderContext& ctx);

/// Residual of every equation up to eps^{max_power / 2}. Keys look like
/// "eps1.n", "eps3/2.u2", "eps2.phi"; absent fields read as zero. The eps^3
/// entry is the combination V*(density) + (x1-momentum) with n3 = u1_3 = 0
/// and phi3 eliminated through the Poisson equation; in 2-D it is
/// differentiated once in x1 so that it is local.
std::map<std::string, RealField> order_equations(const FieldMap& f, const OrderContext& ctx,
                                                 int max_power);

RealField eps3_combination(const FieldMap& f, const OrderContext& ctx);

}  // namespace disperlim::profiles
