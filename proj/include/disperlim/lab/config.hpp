#pragma once
// JSON run configuration shared by every subcommand (schema_version 1).
//
// {
//   "schema_version": 1,
//   "d": 2, "T_i": 1.0,
//   "epsilons": [0.2, 0.141, 0.1, 0.071, 0.05], "epsilon": 0.1,
//   "tau0": 0.5, "s_prime": 4, "truncation_order": 2, "samples": 10,
//   "grid": {"n": [128, 128], "L": [40.0, 40.0]},
//   "stepper": {"dt": 5e-4, "c_cfl": 0.5, "poisson_tol": 1e-11, "max_newton": 25,
//               "hyperviscosity": "off", "hyper_nu": 0.0},
//   "limit": {"dt": 1e-3, "T": 1.0, "zk_nonlinear_coeff": null,
//             "zk_transverse_coeff": null, "lin_coupling": null,
//             "u1_second_order_coeff": null},
//   "initial": {"family": "gaussian_zero_mean", "amplitude": 0.5, "width": 3.0,
//               "x1_derivatives": 1, "kappa": 0.5, "k0": 0.6},
//   "hierarchy": "path/to/hierarchy"
// }
// Every key is optional; absent keys take the defaults of the 2-D study.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "disperlim/ep/state.hpp"
#include "disperlim/limit/equations.hpp"
#include "disperlim/profiles/hierarchy.hpp"

namespace disperlim::lab {

struct GridSpec {
  std::vector<int> n{128, 128};
  std::vector<double> L{40.0, 40.0};
  spectral::Grid build() const;
};

struct InitialSpec {
  std::string family = "gaussian_zero_mean";  // | mode_packet | kdv_soliton
  double amplitude = 0.5;                     // sup norm of n1
  double width = 3.0;
  int x1_derivatives = 1;  // gaussian_zero_mean: n1 = d1^m of a Gaussian
  double kappa = 0.5;  // kdv_soliton
  double k0 = 0.6;     // mode_packet carrier wavenumber
};

/// n1 at t = 0. mode_packet draws its phase and tilt from `seed`.
spectral::RealField make_initial(const InitialSpec& s, const spectral::Grid& g, double V,
                                 std::uint64_t seed);

struct StudyConfig {
  int schema_version = 1;
  int d = 2;
  double T_i = 1.0;
  std::vector<double> epsilons{0.2, 0.141, 0.1, 0.071, 0.05};
  double epsilon = 0.1;  // single EP runs
  double tau0 = 0.5;
  int s_prime = 4;
  int truncation_order = 2;
  int samples = 10;
  GridSpec grid;
  ep::StepperConfig stepper{5e-4};
  double limit_dt = 1e-3;
  double limit_T = 1.0;  // standalone limit runs
  double zk_nonlinear_coeff = std::nan("");
  double zk_transverse_coeff = std::nan("");
  double lin_coupling = std::nan("");
  double u1_second_order_coeff = std::nan("");
  InitialSpec initial;
  std::string hierarchy;

  double V() const { return std::sqrt(T_i + 1.0); }
  limit::LimitConfig limit_config(double T) const;
  profiles::ProfileOptions profile_options() const;
  spectral::ScalingParams params(double eps) const;

  /// Field ranges and grid/dimension agreement. Throws ConfigError.
  void validate() const;
  /// Additional study invariants: T_i = 0 only in 3-D, >= 3 descending
  /// epsilons in (0, 0.5].
  void validate_study() const;

  static StudyConfig from_json(const nlohmann::json& j);
  static StudyConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  static StudyConfig default_2d();
  /// 48^3 on [0,20]^3, T_i = 0, eps in {0.2, 0.1, 0.05}, tau0 = 0.25.
  static StudyConfig default_3d();
};

}  // namespace disperlim::lab
