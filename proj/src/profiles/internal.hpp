#pragma once
// Shared steps of the hierarchy builders and source evaluators.

#include "disperlim/profiles/hierarchy.hpp"
#include "disperlim/profiles/order_systems.hpp"

namespace disperlim::profiles::detail {

OrderContext context(int d, const ProfileOptions& opt);

/// Order-1 fields, U, Phi and n1_t (plus u_perp^(2) in 3-D).
FieldMap kp_base(const RealField& n1, const ProfileOptions& opt);
FieldMap zk_base(const RealField& n1, const ProfileOptions& opt);

/// Adds n1_tt, n2, n2_t, u1_2, phi2, the velocity rates and the
/// n2-dependent transverse velocities.
void kp_complete(FieldMap& f, const RealField& n2, const RealField& n2_t, const ProfileOptions& opt);
void zk_complete(FieldMap& f, const RealField& n2, const RealField& n2_t, const ProfileOptions& opt);

/// Order-1 transverse velocities u_perp^(3) for a given n2 and phi2.
void zk_perp3(FieldMap& f, const RealField& n2, const RealField& phi2, double V);

RealField source_kp(FieldMap f, const ProfileOptions& opt);
RealField source_zk(FieldMap f, const ProfileOptions& opt);

ProfileHierarchy to_hierarchy(FieldMap f, int d, int order, double V, double time);

}  // namespace disperlim::profiles::detail
