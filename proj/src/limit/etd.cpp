#include "disperlim/limit/etd.hpp"

#include <cmath>
#include <numbers>

#include "disperlim/simd/kernels.hpp"

namespace disperlim::limit {

namespace {

PhiValues direct(cplx z) {
  const cplx ez = std::exp(z);
  const cplx p1 = (ez - 1.0) / z;
  const cplx p2 = (p1 - 1.0) / z;
  const cplx p3 = (p2 - 0.5) / z;
  return {ez, p1, p2, p3};
}

}  // namespace

PhiValues phi_functions(cplx z) {
  if (std::abs(z) >= 1.0) return direct(z);
  // Trapezoid rule on a circle of radius 2 around z: every node has |w| >= 1,
  // so the closed forms are free of cancellation there.
  constexpr int M = 64;
  PhiValues acc{std::exp(z), 0.0, 0.0, 0.0};
  for (int j = 0; j < M; ++j) {
    const double th = 2.0 * std::numbers::pi * (j + 0.5) / M;
    const PhiValues v = direct(z + 2.0 * std::polar(1.0, th));
    acc.phi1 += v.phi1;
    acc.phi2 += v.phi2;
    acc.phi3 += v.phi3;
  }
  acc.phi1 /= double(M);
  acc.phi2 /= double(M);
  acc.phi3 /= double(M);
  return acc;
}

DiagonalEtdrk4::DiagonalEtdrk4(const spectral::Grid& g, std::vector<cplx> symbol, double dt)
    : grid_(g), symbol_(std::move(symbol)), dt_(dt) {
  const std::size_t n = symbol_.size();
  e_.resize(n);
  e2_.resize(n);
  q_.resize(n);
  f1_.resize(n);
  f2_.resize(n);
  f3_.resize(n);
  const double h = dt_;
  for (std::size_t i = 0; i < n; ++i) {
    const PhiValues full = phi_functions(h * symbol_[i]);
    const PhiValues half = phi_functions(0.5 * h * symbol_[i]);
    e_[i] = full.e;
    e2_[i] = half.e;
    q_[i] = 0.5 * h * half.phi1;
    f1_[i] = h * (full.phi1 - 3.0 * full.phi2 + 4.0 * full.phi3);
    f2_[i] = 2.0 * h * (full.phi2 - 2.0 * full.phi3);
    f3_[i] = h * (4.0 * full.phi3 - full.phi2);
  }
}

SpectralField DiagonalEtdrk4::step(const SpectralField& u, double t, const Nonlinear& N) const {
  const double h = dt_;
  auto mul = [](const std::vector<cplx>& m, const SpectralField& x) {
    SpectralField out = x;
    return out.scale(m);
  };
  auto acc = [](SpectralField& out, const std::vector<cplx>& m, const SpectralField& x) {
    simd::mul_acc_complex(m, x.coeffs(), out.coeffs());
  };

  const SpectralField Nu = N(u, t);
  const SpectralField E2u = mul(e2_, u);
  SpectralField a = E2u;
  acc(a, q_, Nu);
  const SpectralField Na = N(a, t + 0.5 * h);
  SpectralField b = E2u;
  acc(b, q_, Na);
  const SpectralField Nb = N(b, t + 0.5 * h);
  SpectralField c = mul(e2_, a);
  acc(c, q_, 2.0 * Nb - Nu);
  const SpectralField Nc = N(c, t + h);

  SpectralField next = mul(e_, u);
  acc(next, f1_, Nu);
  acc(next, f2_, Na + Nb);
  acc(next, f3_, Nc);
  return next;
}

}  // namespace disperlim::limit
