#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include <json.hpp>

#include "disperlim/spectral/field.hpp"

namespace disperlim::limit {

using spectral::RealField;

/// Time-ordered snapshots of one field. When time derivatives are stored
/// alongside, interpolation is cubic Hermite; otherwise linear.
class Trajectory {
 public:
  void push(double t, RealField f, std::optional<RealField> dfdt = std::nullopt);

  std::size_t size() const { return times_.size(); }
  bool empty() const { return times_.empty(); }
  const std::vector<double>& times() const { return times_; }
  const RealField& field(std::size_t i) const { return fields_.at(i); }
  const RealField& back() const { return fields_.back(); }
  bool has_derivatives() const { return !derivs_.empty() && derivs_.size() == fields_.size(); }
  const RealField& derivative(std::size_t i) const { return derivs_.at(i); }

  /// Index of a stored time within 1e-12 relative, if any.
  std::optional<std::size_t> find(double t) const;
  /// Interpolated value; throws ConfigError outside [t_0, t_end].
  RealField at(double t) const;
  /// Interpolated time derivative (requires stored derivatives).
  RealField rate_at(double t) const;

  /// Directory of FLD1 snapshots plus index.json {times, files, config}.
  void write(const std::filesystem::path& dir, const std::string& name,
             const nlohmann::json& config) const;
  static Trajectory read(const std::filesystem::path& dir);

 private:
  std::size_t bracket(double t) const;
  std::vector<double> times_;
  std::vector<RealField> fields_;
  std::vector<RealField> derivs_;
};

}  // namespace disperlim::limit
