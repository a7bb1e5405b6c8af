#pragma once

#include <Eigen/Dense>
#include <array>

#include "disperlim/spectral/scaling.hpp"

namespace disperlim::ep {

using MatrixXc = Eigen::MatrixXcd;

/// L(k) with eps d/dt (n, u) = L(k) (n, u) for the linearisation about
/// (1, 0, 0); phi is eliminated through phi_k = n_k / (1 + eps|kbar|^2).
/// Unused trailing entries of kvec are ignored.
MatrixXc linearized_symbol(const std::array<double, 3>& kvec, const spectral::ScalingParams& p);

}  // namespace disperlim::ep
