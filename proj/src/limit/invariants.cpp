#include "disperlim/limit/invariants.hpp"

#include "disperlim/error.hpp"

namespace disperlim::limit {

ConservedQuantities conserved_quantities(const RealField& f, Equation e,
                                         const LimitCoefficients& c) {
  if (e != Equation::KP2 && e != Equation::ZK) {
    throw ConfigError("conserved quantities are defined for KP2 and ZK only");
  }
  ConservedQuantities q;
  q.mass = f.integral();
  q.l2 = spectral::inner(f, f);
  if (e == Equation::ZK) {
    if (f.grid().rank() != 3) throw ConfigError("ZK invariants need a 3-D grid");
    const RealField f1 = spectral::spectral_derivative(f, 0);
    const RealField f2 = spectral::spectral_derivative(f, 1);
    const RealField f3 = spectral::spectral_derivative(f, 2);
    RealField dens = 0.5 * c.a * (f1 * f1) + 0.5 * c.beta * (f2 * f2 + f3 * f3);
    dens -= (c.c_N / 6.0) * (f * f * f);
    q.hamiltonian = dens.integral();
  }
  return q;
}

}  // namespace disperlim::limit
