#include "disperlim/lab/config.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include "disperlim/error.hpp"
#include "disperlim/limit/soliton.hpp"
#include "disperlim/spectral/ops.hpp"

namespace disperlim::lab {

using nlohmann::json;
using spectral::RealField;

spectral::Grid GridSpec::build() const {
  if (n.size() != L.size()) throw ConfigError("grid: n and L differ in length");
  return spectral::Grid(n, L);
}

namespace {

RealField initial_field(const InitialSpec& s, const spectral::Grid& g, double V,
                        std::uint64_t seed) {
  const int d = g.rank();
  std::array<double, 3> c{};
  for (int a = 0; a < d; ++a) c[a] = 0.5 * g.length(a);

  if (s.family == "kdv_soliton") {
    RealField f = limit::kdv_line_soliton(s.kappa, V, g).field;
    return s.amplitude == 0.0 ? RealField(g, 0.0) : f;
  }
  if (s.family == "gaussian_zero_mean") {
    const double w = s.width;
    const auto r2_at = [&](const spectral::Point& x) {
      double r2 = 0.0;
      for (int a = 0; a < d; ++a) r2 += (x[a] - c[a]) * (x[a] - c[a]);
      return r2;
    };
    if (s.x1_derivatives == 1) {
      // -A sqrt(2e) (y1/w) exp(-|y|^2/w^2): the x1-derivative of a Gaussian, sup norm A.
      const double A = s.amplitude * std::sqrt(2.0 * std::exp(1.0));
      return RealField::sample(g, [&](const spectral::Point& x) {
        return -A * (x[0] - c[0]) / w * std::exp(-r2_at(x) / (w * w));
      });
    }
    // d1^m exp(-|y|^2/w^2) = (-1/w)^m H_m(y1/w) exp(-|y|^2/w^2), rescaled to sup norm A.
    // Each extra derivative adds a zero of the spectrum at k1 = 0.
    const unsigned m = static_cast<unsigned>(s.x1_derivatives);
    RealField f = RealField::sample(g, [&](const spectral::Point& x) {
      return std::hermite(m, (x[0] - c[0]) / w) * std::exp(-r2_at(x) / (w * w));
    });
    const double peak = f.max_abs();
    if (peak > 0.0) f *= s.amplitude / peak;
    return f;
  }
  if (s.family == "mode_packet") {
    // x1-derivative of a Gaussian-modulated carrier with random phase and tilt.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double theta = 2.0 * M_PI * unit(rng);
    std::array<double, 3> k{s.k0, 0.0, 0.0};
    for (int a = 1; a < d; ++a) k[a] = 0.25 * s.k0 * (2.0 * unit(rng) - 1.0);
    const double w = s.width;
    RealField f = RealField::sample(g, [&](const spectral::Point& x) {
      double r2 = 0.0, ph = theta, dph = k[0];
      for (int a = 0; a < d; ++a) {
        r2 += (x[a] - c[a]) * (x[a] - c[a]);
        ph += k[a] * (x[a] - c[a]);
      }
      const double env = std::exp(-r2 / (w * w));
      const double denv = -2.0 * (x[0] - c[0]) / (w * w) * env;
      return denv * std::cos(ph) - env * dph * std::sin(ph);
    });
    const double m = f.max_abs();
    if (m > 0.0) f *= s.amplitude / m;
    return f;
  }
  throw ConfigError("unknown initial family '" + s.family + "'");
}

}  // namespace

RealField make_initial(const InitialSpec& s, const spectral::Grid& g, double V,
                       std::uint64_t seed) {
  RealField f = initial_field(s, g, V, seed);
  spectral::check_boundary_decay(f, "initial n1");
  return f;
}

limit::LimitConfig StudyConfig::limit_config(double T) const {
  limit::LimitConfig c;
  c.equation = d == 2 ? limit::Equation::KP2 : limit::Equation::ZK;
  c.V = V();
  c.dt = limit_dt;
  c.T = T;
  c.zk_nonlinear_coeff = zk_nonlinear_coeff;
  c.zk_transverse_coeff = zk_transverse_coeff;
  c.lin_coupling = lin_coupling;
  return c;
}

profiles::ProfileOptions StudyConfig::profile_options() const {
  profiles::ProfileOptions o;
  o.coef = limit_config(1.0).coefficients();
  o.u1_second_order_coeff = u1_second_order_coeff;
  return o;
}

spectral::ScalingParams StudyConfig::params(double eps) const {
  return spectral::ScalingParams(eps, T_i, d);
}

void StudyConfig::validate() const {
  if (schema_version != 1) throw ConfigError("unsupported schema_version " + std::to_string(schema_version));
  if (d != 2 && d != 3) throw ConfigError("d must be 2 or 3");
  if (!(T_i >= 0.0)) throw ConfigError("T_i must be nonnegative");
  if (static_cast<int>(grid.n.size()) != d) throw ConfigError("grid rank differs from d");
  if (!(tau0 > 0.0)) throw ConfigError("tau0 must be positive");
  if (s_prime < 0) throw ConfigError("s_prime must be nonnegative");
  if (truncation_order != 1 && truncation_order != 2) throw ConfigError("truncation_order must be 1 or 2");
  if (samples < 1) throw ConfigError("samples must be positive");
  if (!(limit_dt > 0.0)) throw ConfigError("limit dt must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  if (!(initial.amplitude >= 0.0) || !(initial.width > 0.0)) {
    throw ConfigError("initial amplitude must be >= 0 and width > 0");
  }
  if (initial.x1_derivatives < 1 || initial.x1_derivatives > 8) {
    throw ConfigError("initial x1_derivatives must be in [1, 8]");
  }
  stepper.validate();
  grid.build();
  limit_config(1.0).validate();
}

void StudyConfig::validate_study() const {
  validate();
  if (T_i == 0.0 && d != 3) throw ConfigError("T_i = 0 is covered only in 3-D");
  if (epsilons.size() < 3) throw ConfigError("a study needs at least 3 epsilons");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] > 0.0 && epsilons[i] <= 0.5)) throw ConfigError("epsilons must lie in (0, 0.5]");
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) throw ConfigError("epsilons must be strictly descending");
  }
  if (s_prime < 4) throw ConfigError("s_prime must be >= 4");
  if (samples < 10) throw ConfigError("a study needs at least 10 samples");
}

namespace {

double opt_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  return j[key].get<double>();
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

ep::HyperviscosityMode parse_hyper(const std::string& s) {
  if (s == "off") return ep::HyperviscosityMode::Off;
  if (s == "on") return ep::HyperviscosityMode::On;
  if (s == "auto") return ep::HyperviscosityMode::Auto;
  throw ConfigError("hyperviscosity must be off, on or auto");
}

const char* hyper_name(ep::HyperviscosityMode m) {
  switch (m) {
    case ep::HyperviscosityMode::On: return "on";
    case ep::HyperviscosityMode::Auto: return "auto";
    default: return "off";
  }
}

json nullable(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

}  // namespace

StudyConfig StudyConfig::from_json(const json& j) {
  StudyConfig c;
  try {
    check_keys(j, {"schema_version", "d", "T_i", "epsilons", "epsilon", "tau0", "s_prime",
                   "truncation_order", "samples", "grid", "stepper", "limit", "initial",
                   "hierarchy", "description"},
               "config");
    if (!j.contains("schema_version")) throw ConfigError("config lacks schema_version");
    c.schema_version = j["schema_version"].get<int>();
    c.d = j.value("d", c.d);
    if (c.d == 3 && !j.contains("grid")) {
      c.grid = default_3d().grid;
    }
    c.T_i = j.value("T_i", c.T_i);
    if (j.contains("epsilons")) c.epsilons = j["epsilons"].get<std::vector<double>>();
    c.epsilon = j.value("epsilon", c.epsilon);
    c.tau0 = j.value("tau0", c.tau0);
    c.s_prime = j.value("s_prime", c.s_prime);
    c.truncation_order = j.value("truncation_order", c.truncation_order);
    c.samples = j.value("samples", c.samples);
    c.hierarchy = j.value("hierarchy", c.hierarchy);
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      check_keys(g, {"n", "L"}, "grid");
      c.grid.n = g.at("n").get<std::vector<int>>();
      c.grid.L = g.at("L").get<std::vector<double>>();
    }
    if (j.contains("stepper")) {
      const auto& s = j["stepper"];
      check_keys(s, {"dt", "c_cfl", "poisson_tol", "max_newton", "hyperviscosity", "hyper_nu"}, "stepper");
      c.stepper.dt = s.value("dt", c.stepper.dt);
      c.stepper.c_cfl = s.value("c_cfl", c.stepper.c_cfl);
      c.stepper.poisson_tol = s.value("poisson_tol", c.stepper.poisson_tol);
      c.stepper.max_newton = s.value("max_newton", c.stepper.max_newton);
      c.stepper.hyperviscosity = parse_hyper(s.value("hyperviscosity", std::string("off")));
      c.stepper.hyper_nu = s.value("hyper_nu", c.stepper.hyper_nu);
    }
    if (j.contains("limit")) {
      const auto& l = j["limit"];
      check_keys(l, {"dt", "T", "zk_nonlinear_coeff", "zk_transverse_coeff", "lin_coupling",
                     "u1_second_order_coeff"}, "limit");
      c.limit_dt = l.value("dt", c.limit_dt);
      c.limit_T = l.value("T", c.limit_T);
      c.zk_nonlinear_coeff = opt_number(l, "zk_nonlinear_coeff", c.zk_nonlinear_coeff);
      c.zk_transverse_coeff = opt_number(l, "zk_transverse_coeff", c.zk_transverse_coeff);
      c.lin_coupling = opt_number(l, "lin_coupling", c.lin_coupling);
      c.u1_second_order_coeff = opt_number(l, "u1_second_order_coeff", c.u1_second_order_coeff);
    }
    if (j.contains("initial")) {
      const auto& i = j["initial"];
      check_keys(i, {"family", "amplitude", "width", "x1_derivatives", "kappa", "k0"}, "initial");
      c.initial.family = i.value("family", c.initial.family);
      c.initial.amplitude = i.value("amplitude", c.initial.amplitude);
      c.initial.width = i.value("width", c.initial.width);
      c.initial.x1_derivatives = i.value("x1_derivatives", c.initial.x1_derivatives);
      c.initial.kappa = i.value("kappa", c.initial.kappa);
      c.initial.k0 = i.value("k0", c.initial.k0);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

StudyConfig StudyConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

json StudyConfig::to_json() const {
  json j;
  j["schema_version"] = schema_version;
  j["d"] = d;
  j["T_i"] = T_i;
  j["epsilons"] = epsilons;
  j["epsilon"] = epsilon;
  j["tau0"] = tau0;
  j["s_prime"] = s_prime;
  j["truncation_order"] = truncation_order;
  j["samples"] = samples;
  j["grid"] = {{"n", grid.n}, {"L", grid.L}};
  j["stepper"] = {{"dt", stepper.dt}, {"c_cfl", stepper.c_cfl}, {"poisson_tol", stepper.poisson_tol},
                  {"max_newton", stepper.max_newton},
                  {"hyperviscosity", hyper_name(stepper.hyperviscosity)},
                  {"hyper_nu", stepper.hyper_nu}};
  j["limit"] = {{"dt", limit_dt}, {"T", limit_T},
                {"zk_nonlinear_coeff", nullable(zk_nonlinear_coeff)},
                {"zk_transverse_coeff", nullable(zk_transverse_coeff)},
                {"lin_coupling", nullable(lin_coupling)},
                {"u1_second_order_coeff", nullable(u1_second_order_coeff)}};
  j["initial"] = {{"family", initial.family}, {"amplitude", initial.amplitude},
                  {"width", initial.width}, {"x1_derivatives", initial.x1_derivatives}, {"kappa", initial.kappa}, {"k0", initial.k0}};
  if (!hierarchy.empty()) j["hierarchy"] = hierarchy;
  return j;
}

StudyConfig StudyConfig::default_2d() { return StudyConfig{}; }

StudyConfig StudyConfig::default_3d() {
  StudyConfig c;
  c.d = 3;
  c.T_i = 0.0;
  c.epsilons = {0.2, 0.1, 0.05};
  c.tau0 = 0.25;
  c.grid.n = {48, 48, 48};
  c.grid.L = {20.0, 20.0, 20.0};
  c.initial.width = 2.2;
  c.initial.amplitude = 0.5;
  return c;
}

}  // namespace disperlim::lab
