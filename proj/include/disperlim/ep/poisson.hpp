#pragma once

#include <optional>

#include "disperlim/spectral/ops.hpp"

namespace disperlim::ep {

using spectral::RealField;
using spectral::ScalingParams;

struct PoissonOptions {
  double tol = 1e-11;      // on ||eps*Lbar(phi) - e^phi + n|| / ||n||
  int max_newton = 25;
  int max_inner = 200;     // PCG iterations per Newton step
};

struct PoissonResult {
  RealField phi;
  int newton_iterations = 0;
  int inner_iterations = 0;
  double residual = 0.0;   // relative, as in PoissonOptions::tol
  /// max_j r_{j+1} / r_j^2 over the steps that started below 1e-2 (0 if none).
  double quadratic_constant = 0.0;
};

/// Residual eps*Lbar(phi) - e^phi + n.
RealField poisson_residual(const RealField& n, const RealField& phi, const ScalingParams& p);

/// Newton iteration on eps*Lbar(phi) = e^phi - n. Each linear step solves
/// (e^phi - eps*Lbar) delta = F by conjugate gradients preconditioned with
/// the constant-coefficient symbol (m + eps|kbar|^2)^-1, m = mean(e^phi).
/// Throws DomainError if min n <= 0 and ConvergenceError on stagnation.
PoissonResult solve_poisson(const RealField& n, const ScalingParams& p,
                            const PoissonOptions& opt = {},
                            const std::optional<RealField>& warm_start = std::nullopt);

}  // namespace disperlim::ep
