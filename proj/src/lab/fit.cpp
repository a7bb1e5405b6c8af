#include "disperlim/lab/fit.hpp"

#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "disperlim/error.hpp"

namespace disperlim::lab {

nlohmann::json OrderFit::to_json() const {
  return {{"order", order}, {"intercept", intercept}, {"r2", r2},
          {"ci95", {ci_low, ci_high}}, {"points", points}};
}

OrderFit fit_order(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw DomainError("order fit needs at least 3 points");
  std::vector<double> x, y;
  for (const auto& [e, err] : points) {
    if (!(e > 0.0) || !(err > 0.0) || !std::isfinite(err)) {
      throw DomainError("order fit undefined: non-positive epsilon or error");
    }
    x.push_back(std::log(e));
    y.push_back(std::log(err));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw DomainError("order fit undefined: all epsilons equal");

  OrderFit f;
  f.points = x.size();
  f.order = sxy / sxx;
  f.intercept = my - f.order * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.order * x[i]);
    sse += r * r;
  }
  f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  const double se = std::sqrt(sse / (n - 2.0) / sxx);
  const boost::math::students_t dist(n - 2.0);
  const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
  f.ci_low = f.order - q * se;
  f.ci_high = f.order + q * se;
  return f;
}

}  // namespace disperlim::lab
