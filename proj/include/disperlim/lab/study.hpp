#pragma once
// Epsilon sweeps: Euler-Poisson runs from well-prepared data compared with
// the profile expansion at common sample times.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "disperlim/lab/config.hpp"
#include "disperlim/lab/fit.hpp"
#include "disperlim/lab/remainder.hpp"

namespace disperlim::lab {

struct StudyRow {
  double epsilon = 0.0;
  double time = 0.0;
  std::string norm_kind;
  double n = 0.0, u = 0.0, phi = 0.0;
  double err1 = 0.0;  // ||n - 1 - eps n1||_{H^{s'}}
};

struct EpsilonSummary {
  double epsilon = 0.0;
  bool ok = false;
  std::string status;
  double max_remainder = 0.0;  // sup over samples of the combined remainder norm
  double max_err1 = 0.0;
  double dt = 0.0;
  long steps = 0;
  nlohmann::json diagnostics;
};

struct ConvergenceTable {
  std::vector<StudyRow> rows;  // epsilon descending, then time ascending
  std::vector<EpsilonSummary> summaries;
  std::string norm_kind;
  std::optional<OrderFit> err1_fit;  // empty when undefined (e.g. zero data)
  std::string fit_note;
  double remainder_band = 0.0;  // max / min over epsilon of max_remainder
  bool partial = false;

  bool err1_order_in(double lo, double hi) const;
  nlohmann::json to_json() const;
  /// Header epsilon,time,norm_kind,n,u,phi,err1; 17 significant digits.
  std::string to_csv() const;
};

struct StudyOptions {
  int threads = 1;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out;  // table.csv, table.json, eps_*/diagnostics.json
};

/// Throws ConfigError for an invalid configuration. Failures of individual
/// epsilon runs are recorded in their summaries and flag the table partial.
ConvergenceTable run_convergence_study(const StudyConfig& cfg, const StudyOptions& opt = {});

/// Threads from the option value, falling back to DISPERLIM_THREADS, then 1.
int resolve_threads(std::optional<int> requested);

}  // namespace disperlim::lab
