#include "disperlim/ep/linear_symbol.hpp"

namespace disperlim::ep {

MatrixXc linearized_symbol(const std::array<double, 3>& kvec, const spectral::ScalingParams& p) {
  const int d = p.dim();
  const double eps = p.epsilon();
  const std::complex<double> I(0.0, 1.0);

  double kb[3] = {0.0, 0.0, 0.0};
  double kbar2 = 0.0;
  for (int j = 0; j < d; ++j) {
    kb[j] = p.gradient_weight(j) * kvec[static_cast<std::size_t>(j)];
    kbar2 += kb[j] * kb[j];
  }
  // Pressure plus Boltzmann-Poisson response.
  const double c = p.ion_temperature() + 1.0 / (1.0 + eps * kbar2);

  MatrixXc L = MatrixXc::Zero(d + 1, d + 1);
  const std::complex<double> transport = I * p.wave_speed() * kvec[0];
  for (int r = 0; r <= d; ++r) L(r, r) = transport;
  for (int j = 0; j < d; ++j) {
    L(0, j + 1) = -I * kb[j];
    L(j + 1, 0) = -I * kb[j] * c;
  }
  if (p.magnetic()) {
    const double w = 1.0 / p.sqrt_epsilon();
    L(2, 3) += w;
    L(3, 2) -= w;
  }
  return L;
}

}  // namespace disperlim::ep
