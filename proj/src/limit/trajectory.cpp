#include "disperlim/limit/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "disperlim/error.hpp"
#include "disperlim/spectral/fld_io.hpp"

namespace disperlim::limit {

void Trajectory::push(double t, RealField f, std::optional<RealField> dfdt) {
  if (!times_.empty() && !(t > times_.back())) {
    throw ConfigError("trajectory times must increase");
  }
  if (dfdt && derivs_.size() != fields_.size()) {
    throw ConfigError("trajectory: derivatives must be stored for every snapshot or none");
  }
  times_.push_back(t);
  fields_.push_back(std::move(f));
  if (dfdt) derivs_.push_back(std::move(*dfdt));
}

std::optional<std::size_t> Trajectory::find(double t) const {
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (std::abs(times_[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return i;
  }
  return std::nullopt;
}

std::size_t Trajectory::bracket(double t) const {
  if (times_.empty()) throw ConfigError("empty trajectory");
  const double tol = 1e-12 * std::max(1.0, std::abs(t));
  if (t < times_.front() - tol || t > times_.back() + tol) {
    throw ConfigError("time " + std::to_string(t) + " outside the stored trajectory");
  }
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t i = static_cast<std::size_t>(it - times_.begin());
  if (i == 0) i = 1;
  if (i >= times_.size()) i = times_.size() - 1;
  return i - 1;
}

RealField Trajectory::at(double t) const {
  if (auto i = find(t)) return fields_[*i];
  if (times_.size() == 1) throw ConfigError("time outside the stored trajectory");
  const std::size_t i = bracket(t);
  const double h = times_[i + 1] - times_[i];
  const double s = (t - times_[i]) / h;
  if (!has_derivatives()) return spectral::axpby(1.0 - s, fields_[i], s, fields_[i + 1]);
  const double h00 = 2 * s * s * s - 3 * s * s + 1;
  const double h10 = s * s * s - 2 * s * s + s;
  const double h01 = -2 * s * s * s + 3 * s * s;
  const double h11 = s * s * s - s * s;
  RealField out = spectral::axpby(h00, fields_[i], h01, fields_[i + 1]);
  out += spectral::axpby(h10 * h, derivs_[i], h11 * h, derivs_[i + 1]);
  return out;
}

RealField Trajectory::rate_at(double t) const {
  if (!has_derivatives()) throw ConfigError("trajectory stores no time derivatives");
  if (auto i = find(t)) return derivs_[*i];
  const std::size_t i = bracket(t);
  const double h = times_[i + 1] - times_[i];
  const double s = (t - times_[i]) / h;
  const double d00 = (6 * s * s - 6 * s) / h;
  const double d10 = 3 * s * s - 4 * s + 1;
  const double d01 = (-6 * s * s + 6 * s) / h;
  const double d11 = 3 * s * s - 2 * s;
  RealField out = spectral::axpby(d00, fields_[i], d01, fields_[i + 1]);
  out += spectral::axpby(d10, derivs_[i], d11, derivs_[i + 1]);
  return out;
}

void Trajectory::write(const std::filesystem::path& dir, const std::string& name,
                       const nlohmann::json& config) const {
  std::filesystem::create_directories(dir);
  nlohmann::json index;
  index["times"] = times_;
  index["files"] = nlohmann::json::array();
  index["config"] = config;
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%05zu.fld", name.c_str(), i);
    spectral::write_fld(dir / buf, fields_[i], name);
    index["files"].push_back(buf);
  }
  if (has_derivatives()) {
    index["rate_files"] = nlohmann::json::array();
    for (std::size_t i = 0; i < derivs_.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s_t_%05zu.fld", name.c_str(), i);
      spectral::write_fld(dir / buf, derivs_[i], name + "_t");
      index["rate_files"].push_back(buf);
    }
  }
  std::ofstream(dir / "index.json") << index.dump(2) << '\n';
}

Trajectory Trajectory::read(const std::filesystem::path& dir) {
  std::ifstream in(dir / "index.json");
  if (!in) throw ConfigError("missing trajectory index '" + (dir / "index.json").string() + "'");
  nlohmann::json index;
  try {
    in >> index;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad trajectory index: " + std::string(e.what()));
  }
  const auto times = index.at("times").get<std::vector<double>>();
  const auto files = index.at("files").get<std::vector<std::string>>();
  if (times.size() != files.size()) throw ConfigError("trajectory index: times/files size mismatch");
  std::vector<std::string> rates;
  if (index.contains("rate_files")) rates = index["rate_files"].get<std::vector<std::string>>();
  Trajectory tr;
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::optional<RealField> r;
    if (!rates.empty()) r = spectral::read_fld(dir / rates.at(i)).field;
    tr.push(times[i], spectral::read_fld(dir / files[i]).field, std::move(r));
  }
  return tr;
}

}  // namespace disperlim::limit
