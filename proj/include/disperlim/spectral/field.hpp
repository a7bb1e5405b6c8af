#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "disperlim/spectral/grid.hpp"

namespace disperlim::spectral {

using cplx = std::complex<double>;
/// Physical coordinates of a sample; unused trailing axes are zero.
using Point = std::array<double, 3>;

/// Real samples in row-major order, x_a = i_a * h_a.
class RealField {
 public:
  RealField() = default;
  explicit RealField(Grid grid, double value = 0.0);
  RealField(Grid grid, std::vector<double> values);

  static RealField sample(const Grid& grid, const std::function<double(const Point&)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  bool empty() const { return values_.empty(); }

  RealField& operator+=(const RealField& o);
  RealField& operator-=(const RealField& o);
  RealField& operator*=(const RealField& o);
  RealField& operator*=(double s);
  RealField& operator+=(double c);

  /// Apply f pointwise.
  RealField map(const std::function<double(double)>& f) const;

  double max_abs() const;
  double min() const;
  double max() const;
  double mean() const;
  /// Rectangle-rule integral (spectrally accurate for periodic data).
  double integral() const;
  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(RealField a, const RealField& b);
RealField operator*(double s, RealField a);
RealField operator*(RealField a, double s);
RealField operator-(RealField a);

/// out = alpha*a + beta*b
RealField axpby(double alpha, const RealField& a, double beta, const RealField& b);
/// Integral of a*b.
double inner(const RealField& a, const RealField& b);
/// Continuum L2 norm by quadrature.
double l2_norm(const RealField& f);

/// Fourier coefficients in the r2c layout, normalised so that the zero mode is the mean.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(Grid grid);
  SpectralField(Grid grid, std::vector<cplx> coeffs);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return coeffs_.size(); }
  std::span<cplx> coeffs() { return coeffs_; }
  std::span<const cplx> coeffs() const { return coeffs_; }
  cplx& operator[](std::size_t i) { return coeffs_[i]; }
  const cplx& operator[](std::size_t i) const { return coeffs_[i]; }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  SpectralField& operator*=(cplx s);

  /// Multiply mode-wise by a real multiplier table.
  SpectralField& scale(std::span<const double> m);
  /// Multiply mode-wise by a complex multiplier table.
  SpectralField& scale(std::span<const cplx> m);

  /// Sum over the full spectrum of w_k |c_k|^2 (Hermitian pairs counted twice).
  double weighted_energy(std::span<const double> w) const;
  double energy() const;

 private:
  Grid grid_;
  std::vector<cplx> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);
SpectralField operator*(cplx s, SpectralField a);

}  // namespace disperlim::spectral
