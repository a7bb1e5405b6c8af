#pragma once

#include <functional>

#include "disperlim/limit/equations.hpp"
#include "disperlim/limit/trajectory.hpp"

namespace disperlim::limit {

/// Inhomogeneity and background for the linearised equations, evaluable at
/// any stage time. An empty G means no source; an empty background means n1 = 0.
struct LinearizedSource {
  std::function<RealField(double)> G;
  std::function<RealField(double)> background;
};

/// Background sampled from a stored trajectory (Hermite when it carries rates).
std::function<RealField(double)> background_from(const Trajectory& tr);

/// Each solver integrates from t = 0 to cfg.T with the largest step <= cfg.dt
/// dividing T, storing every cfg.store_every steps (and the final state)
/// together with the tendency at that time.

/// KP-II. The k1 = 0 plane (apart from the global mean) must be empty on
/// input and is re-projected after every step. Throws ConstraintError on bad
/// input and BlowUpError past the H^2 guard.
Trajectory solve_kp2(const RealField& n0, const LimitConfig& cfg);
Trajectory solve_zk(const RealField& n0, const LimitConfig& cfg);
Trajectory solve_linearized_kp(const LinearizedSource& src, const RealField& m0,
                               const LimitConfig& cfg);
Trajectory solve_linearized_zk(const LinearizedSource& src, const RealField& m0,
                               const LimitConfig& cfg);

/// Relative size of the k1 = 0 plane without the global mean.
double kp_constraint_violation(const RealField& f);

}  // namespace disperlim::limit
