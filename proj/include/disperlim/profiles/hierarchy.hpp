#pragma once
// Profile hierarchy of the expansion
//   n = 1 + eps n1 + eps^2 n2,  u1 = eps u1_1 + eps^2 u1_2,  phi = eps phi1 + eps^2 phi2,
// with transverse velocities
//   2-D: u2 = eps^{3/2} u2_1 + eps^{5/2} u2_2
//   3-D: u_perp = eps^{3/2} u_perp^(1) + eps^2 u_perp^(2) + eps^{5/2} u_perp^(3) + eps^3 u_perp^(4).
//
// Field names: n1 u1_1 u2_1 [u3_1] phi1, 3-D u2_2 u3_2 u2_3 u3_3 [u2_4 u3_4],
// order 2: n2 u1_2 phi2 (2-D also u2_2). Auxiliary entries: U (x1-velocity
// correction), Phi (potential correction), G2 (source of the n2 equation) and
// the time derivatives n1_t, n1_tt, n2_t taken from the governing equations.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "disperlim/limit/equations.hpp"
#include "disperlim/spectral/field.hpp"

namespace disperlim::profiles {

using spectral::RealField;

struct ProfileOptions {
  limit::LimitCoefficients coef;
  /// Coefficient k in u1_2 = k n2 + U; NaN selects V.
  double u1_second_order_coeff = std::nan("");

  static ProfileOptions for_speed(double V);
  double u1_coeff() const { return std::isnan(u1_second_order_coeff) ? coef.V : u1_second_order_coeff; }
};

struct ProfileHierarchy {
  int order = 1;
  int d = 2;
  double V = 1.0;
  double time = 0.0;
  std::map<std::string, RealField> fields;
  std::map<std::string, RealField> aux;

  double ion_temperature() const { return V * V - 1.0; }
  bool has(const std::string& name) const;
  /// Looks in fields, then aux. Throws ConfigError if absent.
  const RealField& get(const std::string& name) const;
  RealField& mutable_field(const std::string& name);
  const spectral::Grid& grid() const { return get("n1").grid(); }

  /// Directory of FLD1 files plus manifest.json
  /// {order, d, V, "epsilon-independent": true, fields{name: file}, time}.
  void write(const std::filesystem::path& dir) const;
  static ProfileHierarchy read(const std::filesystem::path& dir);
};

/// Names of the primary fields for a given dimension and order.
std::vector<std::string> primary_field_names(int d, int order);

}  // namespace disperlim::profiles
