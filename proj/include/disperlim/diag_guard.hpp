#pragma once

#include <string>
#include <string_view>

#include "disperlim/error.hpp"

namespace disperlim {

/// Aborts a run once a monitored norm exceeds `factor` times its initial
/// value. Inactive when the initial value is zero.
class BlowupGuard {
 public:
  BlowupGuard(double initial, double factor) : limit_(initial > 0.0 ? factor * initial : 0.0) {}
  void check(double value, double t, std::string_view what) const {
    if (limit_ > 0.0 && !(value <= limit_)) {
      throw BlowUpError(std::string(what) + " blow-up guard tripped at t = " + std::to_string(t) +
                        " (H2 norm " + std::to_string(value) + ")");
    }
  }

 private:
  double limit_;
};

}  // namespace disperlim
