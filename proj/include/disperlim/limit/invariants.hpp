#pragma once

#include <optional>

#include "disperlim/limit/equations.hpp"

namespace disperlim::limit {

struct ConservedQuantities {
  double mass = 0.0;  // integral of f
  double l2 = 0.0;    // integral of f^2
  std::optional<double> hamiltonian;  // ZK only
};

/// For ZK, H = int [ (a f_1^2 + beta |grad_perp f|^2) / 2 - c_N f^3 / 6 ].
ConservedQuantities conserved_quantities(const RealField& f, Equation e,
                                         const LimitCoefficients& c);

}  // namespace disperlim::limit
