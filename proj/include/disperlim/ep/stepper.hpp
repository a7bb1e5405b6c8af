#pragma once
// ETDRK4 for the rescaled Euler-Poisson systems.
//
// Spectral state U = (n - 1, u_1..u_d). The linearisation about (1, 0, 0),
// including the Boltzmann response and the 3-D gyration, is integrated
// exactly per mode: U' = (L(k)/eps) U + N(U). The matrix exponentials and
// phi-functions are taken from the exponential of an augmented block matrix.

#include <vector>

#include "disperlim/ep/linear_symbol.hpp"
#include "disperlim/ep/poisson.hpp"
#include "disperlim/ep/state.hpp"

namespace disperlim::ep {

using spectral::SpectralField;

/// Full tendency (dn/dt, du_j/dt), i.e. right-hand sides divided by eps.
struct Tendency {
  RealField dn;
  std::vector<RealField> du;
};

/// Evaluates the printed equations directly (products dealiased).
/// state.phi must be consistent with state.n. Throws DomainError if min n <= 0.1.
Tendency ep_rhs(const EPState& state);

/// Per-mode dense (m x m) complex matrices stored entry-major.
class ModeMatrices {
 public:
  ModeMatrices() = default;
  ModeMatrices(int m, std::size_t modes);
  int size() const { return m_; }
  std::vector<spectral::cplx>& entry(int i, int j) { return e_[static_cast<std::size_t>(i * m_ + j)]; }
  const std::vector<spectral::cplx>& entry(int i, int j) const {
    return e_[static_cast<std::size_t>(i * m_ + j)];
  }
  /// out_i += sum_j A_ij x_j, mode by mode.
  void apply_acc(const std::vector<SpectralField>& x, std::vector<SpectralField>& out) const;

 private:
  int m_ = 0;
  std::vector<std::vector<spectral::cplx>> e_;
};

class EpStepper {
 public:
  /// Precomputes the exponential tables for cfg.dt. Throws ConfigError if
  /// cfg.dt exceeds c_cfl * eps * min_spacing.
  EpStepper(const spectral::Grid& g, const ScalingParams& p, const StepperConfig& cfg);

  EPState step(const EPState& s) const;
  double dt() const { return dt_; }
  double hyper_nu() const { return nu_; }
  const PoissonResult& last_poisson() const { return last_poisson_; }

  /// Stiff-free remainder N(U) = tendency - (L/eps) U, dealiased.
  std::vector<SpectralField> nonlinear(const std::vector<SpectralField>& U, RealField& phi_warm) const;
  std::vector<SpectralField> linear_apply(const std::vector<SpectralField>& U) const;

  static std::vector<SpectralField> to_spectral(const EPState& s);

 private:
  spectral::Grid grid_;
  ScalingParams params_;
  StepperConfig cfg_;
  double dt_;
  double nu_ = 0.0;
  std::vector<double> kbar2_;
  ModeMatrices lin_;            // L/eps
  ModeMatrices e_full_, e_half_, q_half_, f1_, f2_, f3_;
  mutable PoissonResult last_poisson_;
};

/// One step with a freshly built stepper.
EPState step_ep(const EPState& s, const StepperConfig& cfg);

/// Largest stable step for the given grid and parameters.
double ep_dt_max(const spectral::Grid& g, const ScalingParams& p, double c_cfl = 0.5);

/// nu such that the start of the last retained octave decays by e^-1 per unit time.
double default_hyper_nu(const spectral::Grid& g);

}  // namespace disperlim::ep
