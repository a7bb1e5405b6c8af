#pragma once
// Verification that a hierarchy satisfies the equations at each order.

#include <string>
#include <vector>

#include <json.hpp>

#include "disperlim/profiles/hierarchy.hpp"

namespace disperlim::profiles {

struct EquationResidual {
  std::string tag;
  double l2 = 0.0;
  double h2 = 0.0;
};

struct ResidualReport {
  std::vector<EquationResidual> entries;
  double n1_h4 = 0.0;
  double tolerance = 0.0;  // rel_tol * (1 + ||n1||_{H^4})
  double max_l2 = 0.0;
  std::string worst;
  bool pass = false;

  nlohmann::json to_json() const;
};

/// Evaluates every equation through eps^2 (order 1, with n2 = 0) or eps^3
/// (order 2), plus the consistency of the stored time derivatives with the
/// limit equations. PASS when each L2 residual is <= tolerance.
ResidualReport residual_order_systems(const ProfileHierarchy& h, const ProfileOptions& opt,
                                      double rel_tol = 1e-8);

}  // namespace disperlim::profiles
