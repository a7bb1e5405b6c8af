#include "disperlim/spectral/ops.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "disperlim/error.hpp"

namespace disperlim::spectral {
namespace {

void check_axis(const Grid& g, int axis) {
  if (axis < 0 || axis >= g.rank()) {
    throw ConfigError("axis " + std::to_string(axis) + " out of range for rank " +
                      std::to_string(g.rank()));
  }
}

}  // namespace

SpectralField derivative(const SpectralField& F, int axis, int order) {
  const Grid& g = F.grid();
  check_axis(g, axis);
  if (order < 1) throw ConfigError("derivative order must be >= 1");
  const std::vector<double>& k = g.k(axis);
  const std::vector<int>& m = g.mode(axis);
  const int nyq = -g.dim(axis) / 2;
  const bool odd = order % 2 == 1;
  // (ik)^order = i^order k^order; split into a real table and a power of i.
  std::vector<double> mult(k.size());
  for (std::size_t s = 0; s < k.size(); ++s) {
    mult[s] = (odd && m[s] == nyq) ? 0.0 : std::pow(k[s], order);
  }
  SpectralField out = F;
  out.scale(mult);
  static const cplx ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  out *= ipow[order % 4];
  return out;
}

RealField spectral_derivative(const RealField& f, int axis, int order) {
  check_axis(f.grid(), axis);
  return inverse_transform(derivative(forward_transform(f), axis, order));
}

RealField laplacian(const RealField& f) {
  SpectralField F = forward_transform(f);
  std::vector<double> m(f.grid().k2());
  for (double& v : m) v = -v;
  return inverse_transform(F.scale(m));
}

RealField transverse_laplacian(const RealField& f) {
  const Grid& g = f.grid();
  SpectralField F = forward_transform(f);
  std::vector<double> m(g.spectral_size(), 0.0);
  for (int a = 1; a < g.rank(); ++a) {
    const std::vector<double>& k = g.k(a);
    for (std::size_t s = 0; s < m.size(); ++s) m[s] -= k[s] * k[s];
  }
  return inverse_transform(F.scale(m));
}

std::vector<RealField> weighted_gradient(const RealField& f, const ScalingParams& p) {
  if (f.grid().rank() != p.dim()) throw ConfigError("weighted_gradient: rank mismatch");
  const SpectralField F = forward_transform(f);
  std::vector<RealField> out;
  out.reserve(static_cast<std::size_t>(p.dim()));
  for (int a = 0; a < p.dim(); ++a) {
    out.push_back(inverse_transform(p.gradient_weight(a) * derivative(F, a, 1)));
  }
  return out;
}

RealField weighted_laplacian(const RealField& f, const ScalingParams& p) {
  if (f.grid().rank() != p.dim()) throw ConfigError("weighted_laplacian: rank mismatch");
  std::vector<double> m = p.kbar2(f.grid());
  for (double& v : m) v = -v;
  SpectralField F = forward_transform(f);
  return inverse_transform(F.scale(m));
}

RealField weighted_divergence(const std::vector<RealField>& v, const ScalingParams& p) {
  if (static_cast<int>(v.size()) != p.dim()) throw ConfigError("weighted_divergence: size");
  SpectralField acc(v[0].grid());
  for (int a = 0; a < p.dim(); ++a) {
    acc += p.gradient_weight(a) * derivative(forward_transform(v[static_cast<std::size_t>(a)]), a, 1);
  }
  return inverse_transform(acc);
}

double x1_mean_content(const SpectralField& F) {
  const Grid& g = F.grid();
  const std::vector<int>& m0 = g.mode(0);
  const std::vector<double>& w = g.hermitian_weight();
  double s = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (m0[i] == 0) s += w[i] * std::norm(F[i]);
  }
  return std::sqrt(s * g.volume());
}

void project_zero_x1_mean(SpectralField& F, bool keep_global_mean) {
  const std::vector<int>& m0 = F.grid().mode(0);
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (m0[i] == 0 && !(keep_global_mean && i == 0)) F[i] = 0.0;
  }
}

RealField project_zero_x1_mean(const RealField& f, bool keep_global_mean) {
  SpectralField F = forward_transform(f);
  project_zero_x1_mean(F, keep_global_mean);
  return inverse_transform(F);
}

SpectralField inverse_dx1_unchecked(const SpectralField& F) {
  const Grid& g = F.grid();
  const std::vector<double>& k = g.k(0);
  const std::vector<int>& m = g.mode(0);
  const int nyq = -g.dim(0) / 2;
  SpectralField out(g);
  for (std::size_t i = 0; i < F.size(); ++i) {
    // 1/(ik) = -i/k. The Nyquist plane has no well-defined antiderivative.
    if (m[i] == 0 || m[i] == nyq) continue;
    out[i] = F[i] * cplx(0.0, -1.0 / k[i]);
  }
  return out;
}

SpectralField antiderivative_x1(const SpectralField& F, double ztol_abs) {
  const double c = x1_mean_content(F);
  if (c > ztol_abs) {
    throw ConstraintError("antiderivative_x1: k1=0 content " + std::to_string(c) +
                              " exceeds tolerance " + std::to_string(ztol_abs),
                          c);
  }
  return inverse_dx1_unchecked(F);
}

RealField antiderivative_x1(const RealField& f) {
  const SpectralField F = forward_transform(f);
  return inverse_transform(antiderivative_x1(F, 1e-10 * l2_norm(f)));
}

SpectralField dealias(SpectralField F) {
  F.scale(F.grid().dealias_mask());
  return F;
}

RealField dealias(const RealField& f) { return inverse_transform(dealias(forward_transform(f))); }

RealField dealiased_product(const RealField& a, const RealField& b) { return dealias(a * b); }

double spectral_tail_ratio(const SpectralField& F) {
  const Grid& g = F.grid();
  const std::vector<double>& mask = g.dealias_mask();
  double peak = 0.0;
  double tail = 0.0;
  for (std::size_t i = 1; i < F.size(); ++i) {
    const double a = std::abs(F[i]);
    peak = std::max(peak, a);
    if (mask[i] == 0.0) continue;
    bool upper = false;
    for (int ax = 0; ax < g.rank(); ++ax) {
      if (6 * std::abs(g.mode(ax)[i]) > g.dim(ax)) upper = true;
    }
    if (upper) tail = std::max(tail, a);
  }
  return peak > 0.0 ? tail / peak : 0.0;
}

double check_boundary_decay(const RealField& f, std::string_view name, double tol) {
  const Grid& g = f.grid();
  const double peak = f.max_abs();
  if (peak == 0.0) return 0.0;
  const int r = g.rank();
  std::vector<std::size_t> stride(static_cast<std::size_t>(r), 1);
  for (int a = r - 2; a >= 0; --a) {
    stride[static_cast<std::size_t>(a)] =
        stride[static_cast<std::size_t>(a + 1)] * static_cast<std::size_t>(g.dim(a + 1));
  }
  double face = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) {
    for (int a = 0; a < r; ++a) {
      const std::size_t ia = (s / stride[static_cast<std::size_t>(a)]) % static_cast<std::size_t>(g.dim(a));
      if (ia == 0) {
        face = std::max(face, std::abs(f[s]));
        break;
      }
    }
  }
  const double ratio = face / peak;
  if (ratio > tol) {
    spdlog::warn("field '{}' does not decay at the domain boundary (ratio {:.3e} > {:.1e}); "
                 "enlarge the domain",
                 name, ratio, tol);
  }
  return ratio;
}

double sobolev_norm(const SpectralField& F, int s) {
  if (s < 0) throw ConfigError("Sobolev index must be nonnegative");
  const Grid& g = F.grid();
  if (s == 0) return std::sqrt(F.energy() * g.volume());
  std::vector<double> w(g.k2());
  for (double& v : w) v = std::pow(1.0 + v, s);
  return std::sqrt(F.weighted_energy(w) * g.volume());
}

double sobolev_norm(const RealField& f, int s) { return sobolev_norm(forward_transform(f), s); }

NormRole parse_norm_role(std::string_view name) {
  if (name == "density") return NormRole::Density;
  if (name == "velocity") return NormRole::Velocity;
  if (name == "potential") return NormRole::Potential;
  throw ConfigError("unknown norm role '" + std::string(name) + "'");
}

double triple_norm(const SpectralField& F, NormRole role, const ScalingParams& p, int s) {
  if (s < 0) throw ConfigError("Sobolev index must be nonnegative");
  const Grid& g = F.grid();
  const std::vector<double> kb = p.kbar2(g);
  const std::vector<double>& k2 = g.k2();
  const double eps = p.epsilon();
  std::vector<double> w(kb.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    double m = 1.0;
    if (role != NormRole::Density) m += eps * kb[i];
    if (role == NormRole::Potential) m += eps * eps * kb[i] * kb[i];
    w[i] = std::pow(1.0 + k2[i], s) * m;
  }
  return std::sqrt(F.weighted_energy(w) * g.volume());
}

double triple_norm(const RealField& f, NormRole role, const ScalingParams& p, int s) {
  return triple_norm(forward_transform(f), role, p, s);
}

}  // namespace disperlim::spectral
