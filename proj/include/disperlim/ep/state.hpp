#pragma once

#include <vector>

#include "disperlim/spectral/ops.hpp"

namespace disperlim::ep {

using spectral::RealField;
using spectral::ScalingParams;

/// Full Euler-Poisson state in the rescaled frame.
struct EPState {
  RealField n;
  std::vector<RealField> u;  // d components
  RealField phi;
  double time = 0.0;
  ScalingParams params;

  /// Uniform state (1, 0, 0) at t = 0.
  static EPState uniform(const spectral::Grid& g, const ScalingParams& p);
  const spectral::Grid& grid() const { return n.grid(); }
};

enum class HyperviscosityMode { Off, On, Auto };

struct StepperConfig {
  double dt = 1e-3;
  double poisson_tol = 1e-11;
  int max_newton = 25;
  double c_cfl = 0.5;
  HyperviscosityMode hyperviscosity = HyperviscosityMode::Off;
  /// nu for |k|^4 damping; <= 0 picks 1/(kmax/2)^4 (last octave damped by e^-1 per unit time).
  double hyper_nu = 0.0;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

}  // namespace disperlim::ep
