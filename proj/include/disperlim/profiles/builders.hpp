#pragma once
// Construction of the profile hierarchy from solutions of the limit models.

#include "disperlim/limit/solvers.hpp"
#include "disperlim/profiles/hierarchy.hpp"

namespace disperlim::profiles {

// ---- 2-D (KP-II) -----------------------------------------------------------
/// u1_1 = V n1, phi1 = n1, u2_1 = V d1^-1 d2 n1, plus the corrections U and Phi
/// that complete the eps^2 system with n2 = 0. Throws ConstraintError if n1
/// has x1-mean content.
ProfileHierarchy first_order_profiles_kp(const RealField& n1, const ProfileOptions& opt,
                                         double time = 0.0);
ProfileHierarchy second_order_profiles_kp(const RealField& n1, const RealField& n2,
                                          const ProfileOptions& opt, double time = 0.0);
/// Samples both trajectories at t.
ProfileHierarchy second_order_profiles_kp(const limit::Trajectory& n1, const limit::Trajectory& n2,
                                          const ProfileOptions& opt, double t);

// ---- 3-D (ZK) --------------------------------------------------------------
/// u_perp^(1) = V^2 (-d3 n1, d2 n1), u_perp^(2) = V d1 (u3_1, -u2_1), and
/// u_perp^(3) with n2 = 0.
ProfileHierarchy first_order_profiles_zk(const RealField& n1, const ProfileOptions& opt,
                                         double time = 0.0);
ProfileHierarchy second_order_profiles_zk(const RealField& n1, const RealField& n2,
                                          const ProfileOptions& opt, double time = 0.0);
ProfileHierarchy second_order_profiles_zk(const limit::Trajectory& n1, const limit::Trajectory& n2,
                                          const ProfileOptions& opt, double t);

// ---- sources of the n2 equations ------------------------------------------
/// Source G of  d1(m_t + V d1(n1 m) + a m_111) + (V/2) m_22 = G, obtained by
/// evaluating the eps^3 equations term by term with n2 = 0.
RealField second_order_source_kp(const RealField& n1, const ProfileOptions& opt);
/// Same source from its hand-reduced closed form in n1, d_t n1 and d1^-1.
RealField second_order_source_kp_closed_form(const RealField& n1, const ProfileOptions& opt);
/// Source G of  m_t + c_L d1(n1 m) + a m_111 + beta d1 lap_perp m = G.
RealField second_order_source_zk(const RealField& n1, const ProfileOptions& opt);

/// Source and background for the linearised solvers, sampled from the
/// first-order trajectory.
limit::LinearizedSource second_order_sources_kp(const limit::Trajectory& n1,
                                                const ProfileOptions& opt);
limit::LinearizedSource second_order_sources_zk(const limit::Trajectory& n1,
                                                const ProfileOptions& opt);

/// Solver configuration for n2 matching the first-order run.
limit::LimitConfig second_order_config(const limit::LimitConfig& first);

}  // namespace disperlim::profiles
