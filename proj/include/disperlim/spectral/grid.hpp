#pragma once
// Periodic Fourier grid on [0,L_0) x ... x [0,L_{r-1}), r = 1..3.
//
// Spectral storage follows FFTW's r2c layout: every axis is complete except
// the last, which keeps indices 0..n/2. Per-mode tables (wavenumbers, signed
// indices, Hermitian weights, dealias mask) are built once and shared by all
// copies of a Grid.

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace disperlim::spectral {

class Grid {
 public:
  Grid() = default;
  /// Throws ConfigError on mismatched sizes, odd or small dims, or bad lengths.
  Grid(std::vector<int> dims, std::vector<double> lengths);

  int rank() const;
  const std::vector<int>& dims() const;
  const std::vector<double>& lengths() const;
  int dim(int axis) const { return dims().at(static_cast<std::size_t>(axis)); }
  double length(int axis) const { return lengths().at(static_cast<std::size_t>(axis)); }
  double spacing(int axis) const { return length(axis) / dim(axis); }
  double min_spacing() const;
  double volume() const;
  double cell_volume() const;

  std::size_t real_size() const;
  std::size_t spectral_size() const;
  /// Half-axis length of the spectral layout (n_last/2 + 1).
  int half_dim() const;

  /// 1-D table of the 2*pi*m~/L wavenumbers for axis `axis` in FFT order.
  std::vector<double> wavenumbers(int axis) const;
  /// Signed alias of mode index m in [-n/2, n/2).
  static int signed_index(int m, int n) { return m < n / 2 ? m : m - n; }

  // Per-mode tables over the spectral layout (length spectral_size()).
  const std::vector<double>& k(int axis) const;
  const std::vector<int>& mode(int axis) const;
  /// 2 for modes standing in for a conjugate pair, 1 on the self-conjugate planes.
  const std::vector<double>& hermitian_weight() const;
  /// 1 inside the 2/3 band on every axis, 0 outside.
  const std::vector<double>& dealias_mask() const;
  /// |k|^2 with continuum wavenumbers.
  const std::vector<double>& k2() const;

  bool same_as(const Grid& other) const;
  bool valid() const { return impl_ != nullptr; }

 struct Impl;

 private:
  std::shared_ptr<const Impl> impl_;
};

Grid build_grid(std::vector<int> dims, std::vector<double> lengths);

/// Throws ConfigError if the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace disperlim::spectral
