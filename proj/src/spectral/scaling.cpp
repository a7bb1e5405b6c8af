#include "disperlim/spectral/scaling.hpp"

#include <cmath>

#include "disperlim/error.hpp"

namespace disperlim::spectral {

ScalingParams::ScalingParams(double epsilon, double ion_temperature, int dim)
    : epsilon_(epsilon),
      sqrt_eps_(std::sqrt(epsilon)),
      ti_(ion_temperature),
      v_(std::sqrt(ion_temperature + 1.0)),
      dim_(dim) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0,1)");
  if (!(ion_temperature >= 0.0) || !std::isfinite(ion_temperature)) {
    throw ConfigError("ion temperature must be finite and >= 0");
  }
  if (dim != 2 && dim != 3) throw ConfigError("dimension must be 2 or 3");
}

double ScalingParams::gradient_weight(int axis) const {
  return (dim_ == 2 && axis == 1) ? sqrt_eps_ : 1.0;
}

std::vector<double> ScalingParams::kbar2(const Grid& g) const {
  if (g.rank() != dim_) throw ConfigError("grid rank does not match the scaling dimension");
  std::vector<double> out(g.spectral_size(), 0.0);
  for (int a = 0; a < dim_; ++a) {
    const double w2 = gradient_weight(a) * gradient_weight(a);
    const std::vector<double>& k = g.k(a);
    for (std::size_t s = 0; s < out.size(); ++s) out[s] += w2 * k[s] * k[s];
  }
  return out;
}

}  // namespace disperlim::spectral
