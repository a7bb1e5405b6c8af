#include "disperlim/spectral/field.hpp"

#include <algorithm>
#include <cmath>

#include "disperlim/error.hpp"
#include "disperlim/simd/kernels.hpp"

namespace disperlim::spectral {

RealField::RealField(Grid grid, double value)
    : grid_(std::move(grid)), values_(grid_.real_size(), value) {}

RealField::RealField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.real_size()) {
    throw ConfigError("RealField: value count does not match grid");
  }
}

RealField RealField::sample(const Grid& grid, const std::function<double(const Point&)>& f) {
  RealField out(grid);
  const int r = grid.rank();
  const std::vector<int>& n = grid.dims();
  std::array<int, 3> shape{1, 1, 1};
  std::array<double, 3> h{0.0, 0.0, 0.0};
  for (int a = 0; a < r; ++a) {
    shape[static_cast<std::size_t>(a)] = n[static_cast<std::size_t>(a)];
    h[static_cast<std::size_t>(a)] = grid.spacing(a);
  }
  std::size_t s = 0;
  for (int i = 0; i < shape[0]; ++i) {
    for (int j = 0; j < shape[1]; ++j) {
      for (int l = 0; l < shape[2]; ++l) {
        out.values_[s++] = f(Point{i * h[0], j * h[1], l * h[2]});
      }
    }
  }
  return out;
}

RealField& RealField::operator+=(const RealField& o) {
  require_same_grid(grid_, o.grid_, "RealField +=");
  simd::axpby(1.0, values_, 1.0, o.values_, values_);
  return *this;
}

RealField& RealField::operator-=(const RealField& o) {
  require_same_grid(grid_, o.grid_, "RealField -=");
  simd::axpby(1.0, values_, -1.0, o.values_, values_);
  return *this;
}

RealField& RealField::operator*=(const RealField& o) {
  require_same_grid(grid_, o.grid_, "RealField *=");
  simd::mul(values_, o.values_, values_);
  return *this;
}

RealField& RealField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

RealField& RealField::operator+=(double c) {
  for (double& v : values_) v += c;
  return *this;
}

RealField RealField::map(const std::function<double(double)>& f) const {
  RealField out(grid_);
  std::transform(values_.begin(), values_.end(), out.values_.begin(), f);
  return out;
}

double RealField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double RealField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double RealField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double RealField::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double RealField::integral() const { return mean() * grid_.volume(); }

bool RealField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(RealField a, const RealField& b) { return a *= b; }
RealField operator*(double s, RealField a) { return a *= s; }
RealField operator*(RealField a, double s) { return a *= s; }
RealField operator-(RealField a) { return a *= -1.0; }

RealField axpby(double alpha, const RealField& a, double beta, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "axpby");
  RealField out(a.grid());
  simd::axpby(alpha, a.values(), beta, b.values(), out.values());
  return out;
}

double inner(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  return simd::dot(a.values(), b.values()) * a.grid().cell_volume();
}

double l2_norm(const RealField& f) { return std::sqrt(inner(f, f)); }

SpectralField::SpectralField(Grid grid)
    : grid_(std::move(grid)), coeffs_(grid_.spectral_size(), cplx(0.0, 0.0)) {}

SpectralField::SpectralField(Grid grid, std::vector<cplx> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.spectral_size()) {
    throw ConfigError("SpectralField: coefficient count does not match grid");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "SpectralField +=");
  std::span<double> x(reinterpret_cast<double*>(coeffs_.data()), 2 * coeffs_.size());
  std::span<const double> y(reinterpret_cast<const double*>(o.coeffs_.data()), 2 * coeffs_.size());
  simd::axpby(1.0, x, 1.0, y, x);
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(grid_, o.grid_, "SpectralField -=");
  std::span<double> x(reinterpret_cast<double*>(coeffs_.data()), 2 * coeffs_.size());
  std::span<const double> y(reinterpret_cast<const double*>(o.coeffs_.data()), 2 * coeffs_.size());
  simd::axpby(1.0, x, -1.0, y, x);
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (cplx& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::operator*=(cplx s) {
  for (cplx& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::scale(std::span<const double> m) {
  simd::scale_complex(coeffs_, m, coeffs_);
  return *this;
}

SpectralField& SpectralField::scale(std::span<const cplx> m) {
  simd::mul_complex(coeffs_, m, coeffs_);
  return *this;
}

double SpectralField::weighted_energy(std::span<const double> w) const {
  // Fold the Hermitian weight into the caller's multiplier.
  const std::vector<double>& hw = grid_.hermitian_weight();
  std::vector<double> ww(hw.size());
  simd::mul(hw, w, ww);
  return simd::weighted_norm2(coeffs_, ww);
}

double SpectralField::energy() const {
  return simd::weighted_norm2(coeffs_, grid_.hermitian_weight());
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }
SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

}  // namespace disperlim::spectral
