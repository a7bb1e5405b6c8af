#pragma once

#include <vector>

#include "disperlim/spectral/grid.hpp"

namespace disperlim::spectral {

/// Knobs of the rescaled systems. V^2 = T_i + 1 holds by construction;
/// the magnetic flag is tied to the dimension (b = 0 in 2D, 1 in 3D).
class ScalingParams {
 public:
  /// Throws ConfigError unless epsilon in (0,1), T_i >= 0 and dim in {2,3}.
  ScalingParams(double epsilon, double ion_temperature, int dim);

  double epsilon() const { return epsilon_; }
  double sqrt_epsilon() const { return sqrt_eps_; }
  double ion_temperature() const { return ti_; }
  double wave_speed() const { return v_; }
  int dim() const { return dim_; }
  int magnetic() const { return dim_ == 3 ? 1 : 0; }

  /// Factor multiplying d/dx_axis in the weighted gradient: sqrt(eps) on x2 in 2D, else 1.
  double gradient_weight(int axis) const;
  /// Per-mode |kbar|^2 on the given grid.
  std::vector<double> kbar2(const Grid& g) const;

 private:
  double epsilon_;
  double sqrt_eps_;
  double ti_;
  double v_;
  int dim_;
};

}  // namespace disperlim::spectral
