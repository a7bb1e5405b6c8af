#include "disperlim/ep/stepper.hpp"

#include <cmath>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "disperlim/error.hpp"
#include "disperlim/simd/kernels.hpp"

namespace disperlim::ep {

using spectral::cplx;
using spectral::forward_transform;
using spectral::inverse_transform;

EPState EPState::uniform(const spectral::Grid& g, const ScalingParams& p) {
  if (g.rank() != p.dim()) throw ConfigError("grid rank does not match the scaling dimension");
  EPState s{RealField(g, 1.0), {}, RealField(g, 0.0), 0.0, p};
  for (int j = 0; j < p.dim(); ++j) s.u.emplace_back(g, 0.0);
  return s;
}

void StepperConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("stepper dt must be positive");
  if (!(poisson_tol > 0.0 && poisson_tol <= 1e-6)) {
    throw ConfigError("poisson_tol must lie in (0, 1e-6]");
  }
  if (max_newton < 3) throw ConfigError("max_newton must be >= 3");
  if (!(c_cfl > 0.0)) throw ConfigError("c_cfl must be positive");
}

double ep_dt_max(const spectral::Grid& g, const ScalingParams& p, double c_cfl) {
  return c_cfl * p.epsilon() * g.min_spacing();
}

double default_hyper_nu(const spectral::Grid& g) {
  double kmax = 0.0;
  for (int a = 0; a < g.rank(); ++a) {
    kmax = std::max(kmax, 2.0 * M_PI * (g.dim(a) / 3) / g.length(a));
  }
  const double kc = 0.5 * kmax;
  return 1.0 / (kc * kc * kc * kc);
}

namespace {

void check_positive(const RealField& n) {
  const double m = n.min();
  if (!(m > 0.1)) {
    throw DomainError("density positivity lost (min n = " + std::to_string(m) + ")");
  }
}

PoissonOptions poisson_options(const StepperConfig& cfg) {
  PoissonOptions o;
  o.tol = cfg.poisson_tol;
  o.max_newton = cfg.max_newton;
  return o;
}

std::vector<SpectralField> lincomb(double a, const std::vector<SpectralField>& x, double b,
                                   const std::vector<SpectralField>& y) {
  std::vector<SpectralField> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(a * x[i] + b * y[i]);
  return out;
}

std::vector<SpectralField> zeros_like(const std::vector<SpectralField>& x) {
  std::vector<SpectralField> out;
  for (const auto& f : x) out.emplace_back(f.grid());
  return out;
}

}  // namespace

Tendency ep_rhs(const EPState& s) {
  const ScalingParams& p = s.params;
  const int d = p.dim();
  const double eps = p.epsilon();
  const double V = p.wave_speed();
  check_positive(s.n);

  const auto grad_n = spectral::weighted_gradient(s.n, p);
  const auto grad_phi = spectral::weighted_gradient(s.phi, p);
  std::vector<RealField> flux;
  for (int j = 0; j < d; ++j) flux.push_back(spectral::dealiased_product(s.n, s.u[static_cast<std::size_t>(j)]));

  Tendency t;
  t.dn = (1.0 / eps) * (V * spectral::spectral_derivative(s.n, 0) -
                        spectral::weighted_divergence(flux, p));
  const RealField inv_n = s.n.map([](double v) { return 1.0 / v; });
  for (int j = 0; j < d; ++j) {
    const RealField& uj = s.u[static_cast<std::size_t>(j)];
    const auto grad_uj = spectral::weighted_gradient(uj, p);
    RealField adv(s.n.grid());
    for (int l = 0; l < d; ++l) {
      adv += spectral::dealiased_product(s.u[static_cast<std::size_t>(l)], grad_uj[static_cast<std::size_t>(l)]);
    }
    RealField r = V * spectral::spectral_derivative(uj, 0) - adv -
                  p.ion_temperature() * spectral::dealiased_product(grad_n[static_cast<std::size_t>(j)], inv_n) -
                  grad_phi[static_cast<std::size_t>(j)];
    if (p.magnetic()) {
      // b (u x e1) / sqrt(eps), u x e1 = (0, u3, -u2)
      if (j == 1) r += (1.0 / p.sqrt_epsilon()) * s.u[2];
      if (j == 2) r -= (1.0 / p.sqrt_epsilon()) * s.u[1];
    }
    t.du.push_back((1.0 / eps) * r);
  }
  return t;
}

ModeMatrices::ModeMatrices(int m, std::size_t modes)
    : m_(m), e_(static_cast<std::size_t>(m * m), std::vector<cplx>(modes, cplx(0.0, 0.0))) {}

void ModeMatrices::apply_acc(const std::vector<SpectralField>& x,
                             std::vector<SpectralField>& out) const {
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < m_; ++j) {
      simd::mul_acc_complex(entry(i, j), x[static_cast<std::size_t>(j)].coeffs(),
                            out[static_cast<std::size_t>(i)].coeffs());
    }
  }
}

EpStepper::EpStepper(const spectral::Grid& g, const ScalingParams& p, const StepperConfig& cfg)
    : grid_(g), params_(p), cfg_(cfg), dt_(cfg.dt) {
  cfg.validate();
  if (g.rank() != p.dim()) throw ConfigError("grid rank does not match the scaling dimension");
  const double dt_max = ep_dt_max(g, p, cfg.c_cfl);
  if (dt_ > dt_max * (1.0 + 1e-12)) {
    throw ConfigError("dt = " + std::to_string(dt_) + " exceeds the stability bound " +
                      std::to_string(dt_max) + " (c_cfl * eps * min_spacing)");
  }
  if (cfg.hyperviscosity == HyperviscosityMode::On) {
    nu_ = cfg.hyper_nu > 0.0 ? cfg.hyper_nu : default_hyper_nu(g);
  }
  kbar2_ = p.kbar2(g);

  const int d = p.dim();
  const int m = d + 1;
  const std::size_t ns = g.spectral_size();
  const double eps = p.epsilon();
  const double h = dt_;
  lin_ = ModeMatrices(m, ns);
  e_full_ = e_half_ = q_half_ = f1_ = f2_ = f3_ = ModeMatrices(m, ns);

  const std::vector<double>& k2 = g.k2();
  MatrixXc big = MatrixXc::Zero(4 * m, 4 * m);
  MatrixXc small = MatrixXc::Zero(2 * m, 2 * m);
  for (int b = 0; b < 3; ++b) big.block(b * m, (b + 1) * m, m, m).setIdentity();
  small.block(0, m, m, m).setIdentity();

  for (std::size_t s = 0; s < ns; ++s) {
    bool nyquist = false;
    std::array<double, 3> kv{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) {
      kv[static_cast<std::size_t>(a)] = g.k(a)[s];
      if (g.mode(a)[s] == -g.dim(a) / 2) nyquist = true;
    }
    // Self-conjugate Nyquist planes cannot carry a non-real evolution; drop them.
    if (nyquist) continue;
    const MatrixXc L0 = linearized_symbol(kv, p) / eps;
    MatrixXc A = L0;
    if (nu_ > 0.0) A -= MatrixXc::Identity(m, m) * (nu_ * k2[s] * k2[s]);

    big.block(0, 0, m, m) = h * A;
    const MatrixXc X = big.exp();
    small.block(0, 0, m, m) = (0.5 * h) * A;
    const MatrixXc Y = small.exp();

    const MatrixXc phi1 = X.block(0, m, m, m);
    const MatrixXc phi2 = X.block(0, 2 * m, m, m);
    const MatrixXc phi3 = X.block(0, 3 * m, m, m);
    const MatrixXc F1 = h * (phi1 - 3.0 * phi2 + 4.0 * phi3);
    const MatrixXc F2 = 2.0 * h * (phi2 - 2.0 * phi3);
    const MatrixXc F3 = h * (4.0 * phi3 - phi2);
    const MatrixXc Q = (0.5 * h) * Y.block(0, m, m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        lin_.entry(i, j)[s] = L0(i, j);
        e_full_.entry(i, j)[s] = X(i, j);
        e_half_.entry(i, j)[s] = Y(i, j);
        q_half_.entry(i, j)[s] = Q(i, j);
        f1_.entry(i, j)[s] = F1(i, j);
        f2_.entry(i, j)[s] = F2(i, j);
        f3_.entry(i, j)[s] = F3(i, j);
      }
    }
  }
}

std::vector<SpectralField> EpStepper::to_spectral(const EPState& s) {
  std::vector<SpectralField> U;
  RealField q = s.n;
  q += -1.0;
  U.push_back(forward_transform(q));
  for (const auto& uj : s.u) U.push_back(forward_transform(uj));
  return U;
}

std::vector<SpectralField> EpStepper::linear_apply(const std::vector<SpectralField>& U) const {
  std::vector<SpectralField> out = zeros_like(U);
  lin_.apply_acc(U, out);
  return out;
}

std::vector<SpectralField> EpStepper::nonlinear(const std::vector<SpectralField>& U,
                                                RealField& phi_warm) const {
  const ScalingParams& p = params_;
  const int d = p.dim();
  const double eps = p.epsilon();
  const double Ti = p.ion_temperature();

  const RealField q = inverse_transform(U[0]);
  RealField n = q;
  n += 1.0;
  check_positive(n);
  std::vector<RealField> u;
  for (int j = 0; j < d; ++j) u.push_back(inverse_transform(U[static_cast<std::size_t>(j + 1)]));

  last_poisson_ = solve_poisson(n, p, poisson_options(cfg_), phi_warm);
  phi_warm = last_poisson_.phi;
  const RealField& phi = last_poisson_.phi;

  // psi = T_i (log n - q) + phi - phi_lin, the part of the pressure and
  // field forces beyond the linearisation.
  RealField psi = phi;
  if (Ti != 0.0) {
    RealField logn = n.map([](double v) { return std::log(v); });
    psi += Ti * (logn - q);
  }
  SpectralField Psi = forward_transform(psi);
  {
    SpectralField lin = U[0];
    std::vector<double> m(kbar2_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = 1.0 / (1.0 + eps * kbar2_[i]);
    Psi -= lin.scale(m);
  }

  auto ikbar = [&](const SpectralField& F, int axis) {
    return p.gradient_weight(axis) * spectral::derivative(F, axis, 1);
  };

  std::vector<SpectralField> N;
  // -(1/eps) div_bar(q u)
  SpectralField Nn(grid_);
  for (int j = 0; j < d; ++j) Nn += ikbar(forward_transform(q * u[static_cast<std::size_t>(j)]), j);
  N.push_back((-1.0 / eps) * Nn);
  for (int j = 0; j < d; ++j) {
    RealField adv(grid_);
    for (int l = 0; l < d; ++l) {
      adv += u[static_cast<std::size_t>(l)] * inverse_transform(ikbar(U[static_cast<std::size_t>(j + 1)], l));
    }
    SpectralField Nu = forward_transform(adv);
    Nu += ikbar(Psi, j);
    N.push_back((-1.0 / eps) * Nu);
  }
  for (auto& f : N) f.scale(grid_.dealias_mask());
  return N;
}

EPState EpStepper::step(const EPState& s) const {
  if (!s.n.grid().same_as(grid_)) throw ConfigError("EpStepper: state grid mismatch");
  const std::vector<SpectralField> U = to_spectral(s);
  RealField warm = s.phi;

  auto apply = [&](const ModeMatrices& A, const std::vector<SpectralField>& x,
                   std::vector<SpectralField>& out) { A.apply_acc(x, out); };

  const auto Nu = nonlinear(U, warm);
  std::vector<SpectralField> E2U = zeros_like(U);
  apply(e_half_, U, E2U);

  std::vector<SpectralField> a = E2U;
  apply(q_half_, Nu, a);
  const auto Na = nonlinear(a, warm);

  std::vector<SpectralField> b = E2U;
  apply(q_half_, Na, b);
  const auto Nb = nonlinear(b, warm);

  std::vector<SpectralField> c = zeros_like(U);
  apply(e_half_, a, c);
  apply(q_half_, lincomb(2.0, Nb, -1.0, Nu), c);
  const auto Nc = nonlinear(c, warm);

  std::vector<SpectralField> next = zeros_like(U);
  apply(e_full_, U, next);
  apply(f1_, Nu, next);
  apply(f2_, lincomb(1.0, Na, 1.0, Nb), next);
  apply(f3_, Nc, next);

  EPState out = s;
  out.n = inverse_transform(next[0]);
  out.n += 1.0;
  check_positive(out.n);
  for (int j = 0; j < params_.dim(); ++j) {
    out.u[static_cast<std::size_t>(j)] = inverse_transform(next[static_cast<std::size_t>(j + 1)]);
  }
  last_poisson_ = solve_poisson(out.n, params_, poisson_options(cfg_), warm);
  out.phi = last_poisson_.phi;
  out.time = s.time + dt_;
  return out;
}

EPState step_ep(const EPState& s, const StepperConfig& cfg) {
  return EpStepper(s.grid(), s.params, cfg).step(s);
}

}  // namespace disperlim::ep
