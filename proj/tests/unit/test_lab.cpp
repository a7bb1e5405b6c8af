#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "disperlim/error.hpp"
#include "disperlim/lab/config.hpp"
#include "disperlim/lab/fit.hpp"
#include "disperlim/lab/remainder.hpp"
#include "disperlim/lab/study.hpp"
#include "disperlim/profiles/assemble.hpp"
#include "disperlim/profiles/builders.hpp"
#include "disperlim/spectral/fft.hpp"
#include "disperlim/spectral/ops.hpp"

using namespace disperlim;
using namespace disperlim::lab;
using spectral::Grid;
using spectral::RealField;

namespace {

std::vector<std::pair<double, double>> power_law(double c, double p, double noise = 0.0) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd(0.0, noise);
  std::vector<std::pair<double, double>> pts;
  for (double e : {0.2, 0.141, 0.1, 0.071, 0.05}) {
    pts.emplace_back(e, c * std::pow(e, p) * (1.0 + (noise > 0.0 ? nd(rng) : 0.0)));
  }
  return pts;
}

RealField bump(const Grid& g, double amp, double width, double shift = 0.0) {
  return RealField::sample(g, [&](const spectral::Point& x) {
    double r2 = 0.0, s = 0.0;
    for (int a = 0; a < g.rank(); ++a) {
      const double y = x[a] - 0.5 * g.length(a) - (a == 1 ? shift : 0.0);
      r2 += y * y;
      if (a == 0) s = y;
    }
    return -amp * s / width * std::exp(-r2 / (width * width));
  });
}

StudyConfig tiny_study() {
  StudyConfig c = StudyConfig::default_2d();
  c.grid.n = {32, 32};
  c.epsilons = {0.2, 0.1, 0.05};
  c.tau0 = 0.04;
  c.stepper.dt = 2e-3;
  return c;
}

}  // namespace

TEST_CASE("order fit on synthetic power laws") {
  auto exact = power_law(3.0, 2.0);
  OrderFit f = fit_order(exact);
  CHECK(f.order == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.r2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(f.points == 5);

  OrderFit flat = fit_order(power_law(0.5, 0.0));
  CHECK(std::abs(flat.order) < 1e-12);

  OrderFit noisy = fit_order(power_law(1.0, 1.5, 0.01));
  CHECK(noisy.order == doctest::Approx(1.5).epsilon(0.03));
  CHECK(noisy.ci_low < noisy.order);
  CHECK(noisy.ci_high > noisy.order);
  CHECK(noisy.ci_low < 1.5);
  CHECK(noisy.ci_high > 1.5);

  std::vector<std::pair<double, double>> two{{0.1, 1.0}, {0.05, 0.25}};
  CHECK_THROWS_AS(fit_order(two), DomainError);
  std::vector<std::pair<double, double>> zero{{0.2, 0.0}, {0.1, 0.0}, {0.05, 0.0}};
  CHECK_THROWS_AS(fit_order(zero), DomainError);
}

TEST_CASE("remainder inverts the truncated expansion") {
  const double V = std::sqrt(2.0), eps = 0.1;
  Grid g({64, 64}, {40.0, 40.0});
  const auto opt = profiles::ProfileOptions::for_speed(V);
  const auto h = profiles::first_order_profiles_kp(bump(g, 0.7, 3.0), opt, 0.0);
  const spectral::ScalingParams p(eps, 1.0, 2);

  ep::EPState s = profiles::truncated_expansion(h, p, 1);
  RemainderState r0 = compute_remainder(s, h, 1);
  CHECK(spectral::l2_norm(r0.n_R) < 1e-12);
  CHECK(spectral::l2_norm(r0.u_R[0]) < 1e-12);
  CHECK(spectral::l2_norm(r0.phi_R) < 1e-12);

  const RealField gn = bump(g, 1.0, 4.0, 3.0);
  s.n += (eps * eps) * gn;
  s.u[1] += (eps * eps) * gn;
  RemainderState r = compute_remainder(s, h, 1);
  CHECK(spectral::l2_norm(r.n_R - gn) < 1e-10);
  CHECK(spectral::l2_norm(r.u_R[1] - gn) < 1e-10);
  CHECK(spectral::l2_norm(r.u_R[0]) < 1e-10);

  s.time = 0.3;
  CHECK_THROWS_AS(compute_remainder(s, h, 1), ConfigError);
}

TEST_CASE("norm report of a single mode") {
  Grid g({32, 32}, {2.0 * M_PI, 2.0 * M_PI});
  const spectral::ScalingParams p(0.1, 1.0, 2);
  RemainderState r;
  r.n_R = RealField::sample(g, [](const spectral::Point& x) { return std::cos(3.0 * x[0]); });
  r.u_R = {RealField(g, 0.0), RealField(g, 0.0)};
  r.phi_R = RealField(g, 0.0);
  const NormReport h = remainder_norm_report(r, p, 2, false);
  // ||cos(3x)||_{L2} on (2 pi)^2 is sqrt(2) pi; the H^2 multiplier is (1 + 9)^2.
  CHECK(h.kind == "H2");
  CHECK(h.n == doctest::Approx(std::sqrt(2.0) * M_PI * 10.0).epsilon(1e-12));
  CHECK(h.total == doctest::Approx(h.n));
  CHECK_FALSE(h.resolution_warning);

  r.u_R[0] = r.n_R;
  r.phi_R = r.n_R;
  const NormReport t = remainder_norm_report(r, p, 2, true);
  CHECK(t.kind == "triple");
  CHECK(t.n == doctest::Approx(h.n));
  CHECK(t.u >= t.hs_u);
  CHECK(t.phi >= t.hs_phi);
  CHECK(t.total >= t.hs_total);

  r.n_R = RealField::sample(g, [](const spectral::Point& x) { return std::cos(8.0 * x[0]); });
  CHECK(remainder_norm_report(r, p, 2, false).resolution_warning);
}

TEST_CASE("study configuration parsing") {
  const StudyConfig d2 = StudyConfig::default_2d();
  CHECK(d2.V() == doctest::Approx(std::sqrt(2.0)));
  CHECK(d2.epsilons.size() == 5);
  const StudyConfig back = StudyConfig::from_json(d2.to_json());
  CHECK(back.to_json() == d2.to_json());
  const StudyConfig d3 = StudyConfig::default_3d();
  CHECK(d3.d == 3);
  CHECK(d3.grid.n == std::vector<int>{48, 48, 48});

  auto j = d2.to_json();
  j["bogus"] = 1;
  CHECK_THROWS_AS(StudyConfig::from_json(j), ConfigError);
  j = d2.to_json();
  j["schema_version"] = 2;
  CHECK_THROWS_AS(StudyConfig::from_json(j).validate(), ConfigError);
  j = d2.to_json();
  j["T_i"] = -1.0;
  CHECK_THROWS_AS(StudyConfig::from_json(j).validate(), ConfigError);
  j = d2.to_json();
  j["epsilons"] = {0.2, 0.9};
  CHECK_THROWS_AS(StudyConfig::from_json(j).validate_study(), ConfigError);

  const auto missing = std::filesystem::temp_directory_path() / "disperlim-no-such-config.json";
  try {
    StudyConfig::load(missing);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find(missing.string()) != std::string::npos);
  }
}

TEST_CASE("thread count fallback") {
  CHECK(resolve_threads(3) == 3);
  ::setenv("DISPERLIM_THREADS", "4", 1);
  CHECK(resolve_threads(std::nullopt) == 4);
  ::unsetenv("DISPERLIM_THREADS");
  CHECK(resolve_threads(std::nullopt) == 1);
}

TEST_CASE("study tables are deterministic and thread independent") {
  const StudyConfig c = tiny_study();
  const auto dir = std::filesystem::temp_directory_path() / "disperlim-test-study";
  std::filesystem::remove_all(dir);
  const ConvergenceTable a = run_convergence_study(c, {1, 11, dir});
  const ConvergenceTable b = run_convergence_study(c, {3, 11, std::nullopt});
  CHECK_FALSE(a.partial);
  CHECK(a.rows.size() == 3 * static_cast<std::size_t>(c.samples + 1));
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_csv().rfind("epsilon,time,norm_kind,n,u,phi,err1\n", 0) == 0);
  CHECK(std::filesystem::exists(dir / "table.csv"));
  CHECK(std::filesystem::exists(dir / "table.json"));
  CHECK(std::filesystem::exists(dir / "eps_1_0.1" / "diagnostics.json"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("zero initial data leaves the order fit undefined") {
  StudyConfig c = tiny_study();
  c.initial.amplitude = 0.0;
  const ConvergenceTable t = run_convergence_study(c);
  CHECK_FALSE(t.partial);
  CHECK_FALSE(t.err1_fit.has_value());
  CHECK_FALSE(t.fit_note.empty());
  for (const auto& r : t.rows) CHECK(r.err1 == 0.0);
}

TEST_CASE("gaussian family with extra x1 derivatives") {
  Grid g({64, 64}, {40.0, 40.0});
  InitialSpec s;
  s.amplitude = 0.7;
  const RealField f1 = make_initial(s, g, std::sqrt(2.0), 0);
  s.x1_derivatives = 2;
  const RealField f2 = make_initial(s, g, std::sqrt(2.0), 0);
  CHECK(f2.max_abs() == doctest::Approx(0.7).epsilon(1e-14));
  // Same direction as the spectral derivative of the first-derivative field.
  RealField d1 = spectral::spectral_derivative(f1, 0, 1);
  d1 *= 0.7 / d1.max_abs();
  CHECK(spectral::l2_norm(d1 - f2) < 1e-10 * spectral::l2_norm(f2));
  s.x1_derivatives = 3;
  CHECK(spectral::x1_mean_content(spectral::forward_transform(make_initial(s, g, 1.0, 0))) < 1e-14);
  s.x1_derivatives = 0;
  StudyConfig c;
  c.initial = s;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}
