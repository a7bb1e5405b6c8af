#pragma once
// Remainders (n_R, u_R, phi_R) defined by
//   (n, u, phi) = (1, 0, 0) + truncated expansion + eps^2 (n_R, u_R, phi_R).

#include <string>
#include <vector>

#include <json.hpp>

#include "disperlim/ep/state.hpp"
#include "disperlim/profiles/hierarchy.hpp"

namespace disperlim::lab {

using spectral::RealField;

struct RemainderState {
  RealField n_R;
  std::vector<RealField> u_R;
  RealField phi_R;
  double epsilon = 0.0;
  double time = 0.0;
};

/// Throws ConfigError if the hierarchy time differs from the state time.
RemainderState compute_remainder(const ep::EPState& full, const profiles::ProfileHierarchy& h,
                                 int truncation_order);

struct NormReport {
  std::string kind;  // "H<s>" or "triple"
  double n = 0.0, u = 0.0, phi = 0.0;
  double total = 0.0;  // sqrt(n^2 + u^2 + phi^2)
  // Plain H^s values, always filled.
  double hs_n = 0.0, hs_u = 0.0, hs_phi = 0.0, hs_total = 0.0;
  double tail_ratio = 0.0;
  bool resolution_warning = false;

  nlohmann::json to_json() const;
};

/// H^s norms of every component; with `triple` the role-weighted triple
/// norms are reported as the primary values. A spectral tail above 1e-6
/// attaches a resolution warning.
NormReport remainder_norm_report(const RemainderState& r, const spectral::ScalingParams& p, int s,
                                 bool triple);

}  // namespace disperlim::lab
