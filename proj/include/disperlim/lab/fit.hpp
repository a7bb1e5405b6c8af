#pragma once
// Least-squares convergence order in log-log coordinates.

#include <span>
#include <utility>

#include <json.hpp>

namespace disperlim::lab {

struct OrderFit {
  double order = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double ci_low = 0.0, ci_high = 0.0;  // 95 % interval on the order
  std::size_t points = 0;

  nlohmann::json to_json() const;
};

/// Slope of log(error) against log(epsilon). Needs at least 3 points with
/// positive epsilon and error; throws DomainError otherwise.
OrderFit fit_order(std::span<const std::pair<double, double>> points);

}  // namespace disperlim::lab
