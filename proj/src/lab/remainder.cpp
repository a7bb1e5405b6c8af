#include "disperlim/lab/remainder.hpp"

#include <algorithm>
#include <cmath>

#include "disperlim/error.hpp"
#include "disperlim/profiles/assemble.hpp"
#include "disperlim/spectral/ops.hpp"

namespace disperlim::lab {

RemainderState compute_remainder(const ep::EPState& full, const profiles::ProfileHierarchy& h,
                                 int truncation_order) {
  if (std::abs(full.time - h.time) > 1e-9 * std::max(1.0, std::abs(full.time))) {
    throw ConfigError("remainder: state time " + std::to_string(full.time) +
                      " differs from hierarchy time " + std::to_string(h.time));
  }
  const auto& p = full.params;
  const ep::EPState tr = profiles::truncated_expansion(h, p, truncation_order);
  const double inv = 1.0 / (p.epsilon() * p.epsilon());
  RemainderState r;
  r.epsilon = p.epsilon();
  r.time = full.time;
  r.n_R = inv * (full.n - tr.n);
  for (std::size_t j = 0; j < full.u.size(); ++j) r.u_R.push_back(inv * (full.u[j] - tr.u[j]));
  r.phi_R = inv * (full.phi - tr.phi);
  return r;
}

nlohmann::json NormReport::to_json() const {
  return {{"kind", kind}, {"n", n}, {"u", u}, {"phi", phi}, {"total", total},
          {"hs_n", hs_n}, {"hs_u", hs_u}, {"hs_phi", hs_phi}, {"hs_total", hs_total},
          {"tail_ratio", tail_ratio}, {"resolution_warning", resolution_warning}};
}

NormReport remainder_norm_report(const RemainderState& r, const spectral::ScalingParams& p, int s,
                                 bool triple) {
  using spectral::NormRole;
  NormReport rep;
  auto tail = [&](const RealField& f) {
    rep.tail_ratio = std::max(rep.tail_ratio, spectral::spectral_tail_ratio(spectral::forward_transform(f)));
  };
  rep.hs_n = spectral::sobolev_norm(r.n_R, s);
  rep.hs_phi = spectral::sobolev_norm(r.phi_R, s);
  double su = 0.0;
  for (const auto& c : r.u_R) {
    const double v = spectral::sobolev_norm(c, s);
    su += v * v;
    tail(c);
  }
  rep.hs_u = std::sqrt(su);
  tail(r.n_R);
  tail(r.phi_R);
  rep.hs_total = std::sqrt(rep.hs_n * rep.hs_n + su + rep.hs_phi * rep.hs_phi);

  if (triple) {
    rep.kind = "triple";
    rep.n = spectral::triple_norm(r.n_R, NormRole::Density, p, s);
    rep.phi = spectral::triple_norm(r.phi_R, NormRole::Potential, p, s);
    double tu = 0.0;
    for (const auto& c : r.u_R) {
      const double v = spectral::triple_norm(c, NormRole::Velocity, p, s);
      tu += v * v;
    }
    rep.u = std::sqrt(tu);
  } else {
    rep.kind = "H" + std::to_string(s);
    rep.n = rep.hs_n;
    rep.u = rep.hs_u;
    rep.phi = rep.hs_phi;
  }
  rep.total = std::sqrt(rep.n * rep.n + rep.u * rep.u + rep.phi * rep.phi);
  rep.resolution_warning = rep.tail_ratio > 1e-6;
  return rep;
}

}  // namespace disperlim::lab
