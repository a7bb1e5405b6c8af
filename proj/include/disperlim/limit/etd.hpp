#pragma once
// Diagonal ETDRK4 (Cox-Matthews) for u' = c(k) u + N(u, t).

#include <functional>
#include <vector>

#include "disperlim/spectral/field.hpp"

namespace disperlim::limit {

using spectral::cplx;
using spectral::SpectralField;

/// phi_1..phi_3 at z. Contour mean over a radius-2 circle for |z| < 1,
/// closed forms otherwise.
struct PhiValues {
  cplx e, phi1, phi2, phi3;
};
PhiValues phi_functions(cplx z);

class DiagonalEtdrk4 {
 public:
  using Nonlinear = std::function<SpectralField(const SpectralField&, double)>;

  DiagonalEtdrk4(const spectral::Grid& g, std::vector<cplx> symbol, double dt);

  SpectralField step(const SpectralField& u, double t, const Nonlinear& N) const;
  double dt() const { return dt_; }
  const std::vector<cplx>& symbol() const { return symbol_; }

 private:
  spectral::Grid grid_;
  std::vector<cplx> symbol_;
  double dt_;
  std::vector<cplx> e_, e2_, q_, f1_, f2_, f3_;
};

}  // namespace disperlim::limit
