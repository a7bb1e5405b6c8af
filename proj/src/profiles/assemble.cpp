#include "disperlim/profiles/assemble.hpp"

#include <cmath>
#include <spdlog/spdlog.h>

#include "disperlim/error.hpp"

namespace disperlim::profiles {

ep::EPState truncated_expansion(const ProfileHierarchy& h, const spectral::ScalingParams& p,
                                int order) {
  if (p.dim() != h.d) throw ConfigError("hierarchy dimension does not match the parameters");
  if (std::abs(p.ion_temperature() - h.ion_temperature()) > 1e-12 * (1.0 + p.ion_temperature())) {
    throw ConfigError("hierarchy speed does not match the ion temperature");
  }
  if (order < 1 || order > h.order) throw ConfigError("truncation order exceeds hierarchy order");
  const double e = p.epsilon(), se = p.sqrt_epsilon();
  const spectral::Grid& g = h.grid();
  ep::EPState s = ep::EPState::uniform(g, p);
  s.time = 0.0;
  s.n += e * h.get("n1");
  s.u[0] = e * h.get("u1_1");
  s.phi = e * h.get("phi1");
  s.u[1] = (e * se) * h.get("u2_1");
  if (h.d == 3) {
    s.u[2] = (e * se) * h.get("u3_1");
    s.u[1] += (e * e) * h.get("u2_2");
    s.u[2] += (e * e) * h.get("u3_2");
  }
  if (order >= 2) {
    s.n += (e * e) * h.get("n2");
    s.u[0] += (e * e) * h.get("u1_2");
    s.phi += (e * e) * h.get("phi2");
    if (h.d == 2) {
      s.u[1] += (e * e * se) * h.get("u2_2");
    } else {
      s.u[1] += (e * e * se) * h.get("u2_3") + (e * e * e) * h.get("u2_4");
      s.u[2] += (e * e * se) * h.get("u3_3") + (e * e * e) * h.get("u3_4");
    }
  }
  return s;
}

AssembledData assemble_initial_data(const ProfileHierarchy& h, const spectral::ScalingParams& p,
                                    const ep::PoissonOptions& opt) {
  AssembledData out{truncated_expansion(h, p, h.order)};
  const RealField phi_trunc = out.state.phi;
  auto sol = ep::solve_poisson(out.state.n, p, opt, phi_trunc);
  out.newton_iterations = sol.newton_iterations;
  out.poisson_discrepancy = spectral::l2_norm(sol.phi - phi_trunc) / (p.epsilon() * p.epsilon());
  out.state.phi = std::move(sol.phi);
  spdlog::info("initial data: eps={} Poisson discrepancy {:.3e} (remainder units), {} Newton steps",
               p.epsilon(), out.poisson_discrepancy, out.newton_iterations);
  return out;
}

}  // namespace disperlim::profiles
