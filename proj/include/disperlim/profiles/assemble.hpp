#pragma once
// Euler-Poisson data built from a profile hierarchy.

#include "disperlim/ep/poisson.hpp"
#include "disperlim/ep/state.hpp"
#include "disperlim/profiles/hierarchy.hpp"

namespace disperlim::profiles {

/// Truncated expansion at the requested order (<= h.order) with the
/// eps-weights of each profile; phi is the truncated potential.
ep::EPState truncated_expansion(const ProfileHierarchy& h, const spectral::ScalingParams& p,
                                int order);

struct AssembledData {
  ep::EPState state;  // phi solves the Poisson equation for state.n
  /// ||phi_poisson - phi_truncated||_L2 / eps^2: the potential mismatch that
  /// the truncation leaves, in remainder units.
  double poisson_discrepancy = 0.0;
  int newton_iterations = 0;
};

/// n and u from the truncated expansion, phi from the Poisson equation.
/// Throws ConfigError if the hierarchy and parameters disagree and
/// DomainError if n is not positive.
AssembledData assemble_initial_data(const ProfileHierarchy& h, const spectral::ScalingParams& p,
                                    const ep::PoissonOptions& opt = {});

}  // namespace disperlim::profiles
