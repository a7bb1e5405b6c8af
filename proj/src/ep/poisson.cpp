#include "disperlim/ep/poisson.hpp"

#include <cmath>
#include <string>

#include "disperlim/error.hpp"

namespace disperlim::ep {

using spectral::forward_transform;
using spectral::inverse_transform;
using spectral::SpectralField;

RealField poisson_residual(const RealField& n, const RealField& phi, const ScalingParams& p) {
  RealField r = p.epsilon() * spectral::weighted_laplacian(phi, p);
  r -= phi.map([](double v) { return std::exp(v); });
  r += n;
  return r;
}

namespace {

// (e^phi - eps*Lbar) x
RealField apply_jacobian(const RealField& x, const RealField& ephi,
                         const std::vector<double>& eps_kbar2) {
  SpectralField X = forward_transform(x);
  X.scale(eps_kbar2);
  RealField out = ephi * x;
  out += inverse_transform(X);
  return out;
}

RealField apply_preconditioner(const RealField& r, const std::vector<double>& inv_symbol) {
  SpectralField R = forward_transform(r);
  return inverse_transform(R.scale(inv_symbol));
}

}  // namespace

PoissonResult solve_poisson(const RealField& n, const ScalingParams& p, const PoissonOptions& opt,
                            const std::optional<RealField>& warm_start) {
  if (n.grid().rank() != p.dim()) throw ConfigError("solve_poisson: grid rank mismatch");
  if (!(n.min() > 0.0)) {
    throw DomainError("solve_poisson: density must be positive (min n = " +
                      std::to_string(n.min()) + ")");
  }
  const double eps = p.epsilon();
  const double nnorm = spectral::l2_norm(n);

  std::vector<double> eps_kbar2 = p.kbar2(n.grid());
  for (double& v : eps_kbar2) v *= eps;

  PoissonResult res;
  res.phi = warm_start ? *warm_start : RealField(n.grid(), std::log(n.mean()));
  RealField F = poisson_residual(n, res.phi, p);
  double rnorm = spectral::l2_norm(F) / nnorm;
  double prev = rnorm;

  while (rnorm > opt.tol) {
    if (res.newton_iterations >= opt.max_newton) {
      throw ConvergenceError("Poisson Newton did not converge in " +
                                 std::to_string(opt.max_newton) + " iterations (residual " +
                                 std::to_string(rnorm) + ")",
                             rnorm);
    }
    const RealField ephi = res.phi.map([](double v) { return std::exp(v); });
    const double m = ephi.mean();
    std::vector<double> inv_symbol(eps_kbar2.size());
    for (std::size_t i = 0; i < inv_symbol.size(); ++i) inv_symbol[i] = 1.0 / (m + eps_kbar2[i]);

    // PCG on (e^phi - eps Lbar) delta = F; inexact-Newton forcing keeps
    // the outer iteration quadratic.
    const double Fnorm = spectral::l2_norm(F);
    const double inner_tol = std::min(0.1, rnorm) * Fnorm;
    RealField delta(n.grid());
    RealField r = F;
    RealField z = apply_preconditioner(r, inv_symbol);
    RealField d = z;
    double rz = spectral::inner(r, z);
    for (int it = 0; it < opt.max_inner; ++it) {
      if (spectral::l2_norm(r) <= inner_tol) break;
      const RealField Ad = apply_jacobian(d, ephi, eps_kbar2);
      const double alpha = rz / spectral::inner(d, Ad);
      delta = spectral::axpby(1.0, delta, alpha, d);
      r = spectral::axpby(1.0, r, -alpha, Ad);
      z = apply_preconditioner(r, inv_symbol);
      const double rz_new = spectral::inner(r, z);
      d = spectral::axpby(1.0, z, rz_new / rz, d);
      rz = rz_new;
      ++res.inner_iterations;
    }

    res.phi += delta;
    if (!res.phi.all_finite()) throw ConvergenceError("Poisson Newton diverged", rnorm);
    F = poisson_residual(n, res.phi, p);
    prev = rnorm;
    rnorm = spectral::l2_norm(F) / nnorm;
    ++res.newton_iterations;
    if (prev < 1e-2 && prev > 0.0) {
      res.quadratic_constant = std::max(res.quadratic_constant, rnorm / (prev * prev));
    }
  }
  res.residual = rnorm;
  return res;
}

}  // namespace disperlim::ep
