#include "disperlim/spectral/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "disperlim/error.hpp"

namespace disperlim::spectral {

struct Grid::Impl {
  std::vector<int> dims;
  std::vector<double> lengths;
  std::size_t real_size = 1;
  std::size_t spectral_size = 1;
  std::vector<std::vector<double>> k;
  std::vector<std::vector<int>> mode;
  std::vector<double> weight;
  std::vector<double> mask;
  std::vector<double> k2;
};

namespace {

const Grid::Impl& checked(const std::shared_ptr<const Grid::Impl>& p) {
  if (!p) throw ConfigError("use of an uninitialised Grid");
  return *p;
}

}  // namespace

Grid::Grid(std::vector<int> dims, std::vector<double> lengths) {
  if (dims.empty() || dims.size() > 3) throw ConfigError("grid rank must be 1, 2 or 3");
  if (dims.size() != lengths.size()) {
    throw ConfigError("grid dims and lengths differ in size (" + std::to_string(dims.size()) +
                      " vs " + std::to_string(lengths.size()) + ")");
  }
  for (std::size_t a = 0; a < dims.size(); ++a) {
    if (dims[a] < 8 || dims[a] % 2 != 0) {
      throw ConfigError("grid dim " + std::to_string(dims[a]) + " must be even and >= 8");
    }
    if (!(lengths[a] > 0.0) || !std::isfinite(lengths[a])) {
      throw ConfigError("grid length must be positive and finite");
    }
  }

  auto impl = std::make_shared<Impl>();
  impl->dims = std::move(dims);
  impl->lengths = std::move(lengths);
  const int r = static_cast<int>(impl->dims.size());
  for (int n : impl->dims) impl->real_size *= static_cast<std::size_t>(n);

  // Spectral shape: full axes then the half axis.
  std::vector<int> sshape(impl->dims);
  sshape.back() = impl->dims.back() / 2 + 1;
  for (int n : sshape) impl->spectral_size *= static_cast<std::size_t>(n);

  const std::size_t ns = impl->spectral_size;
  impl->k.assign(static_cast<std::size_t>(r), std::vector<double>(ns));
  impl->mode.assign(static_cast<std::size_t>(r), std::vector<int>(ns));
  impl->weight.assign(ns, 0.0);
  impl->mask.assign(ns, 0.0);
  impl->k2.assign(ns, 0.0);

  std::vector<int> idx(static_cast<std::size_t>(r), 0);
  for (std::size_t s = 0; s < ns; ++s) {
    // Unravel s in row-major order over sshape.
    std::size_t rem = s;
    for (int a = r - 1; a >= 0; --a) {
      idx[static_cast<std::size_t>(a)] = static_cast<int>(rem % static_cast<std::size_t>(sshape[static_cast<std::size_t>(a)]));
      rem /= static_cast<std::size_t>(sshape[static_cast<std::size_t>(a)]);
    }
    bool inside = true;
    double kk = 0.0;
    for (int a = 0; a < r; ++a) {
      const auto au = static_cast<std::size_t>(a);
      const int n = impl->dims[au];
      const int m = signed_index(idx[au], n);
      const double kv = 2.0 * std::numbers::pi * m / impl->lengths[au];
      impl->mode[au][s] = m;
      impl->k[au][s] = kv;
      kk += kv * kv;
      if (3 * std::abs(m) > n) inside = false;
    }
    const int last = idx.back();
    const int nlast = impl->dims.back();
    impl->weight[s] = (last == 0 || last == nlast / 2) ? 1.0 : 2.0;
    impl->mask[s] = inside ? 1.0 : 0.0;
    impl->k2[s] = kk;
  }
  impl_ = std::move(impl);
}

int Grid::rank() const { return static_cast<int>(checked(impl_).dims.size()); }
const std::vector<int>& Grid::dims() const { return checked(impl_).dims; }
const std::vector<double>& Grid::lengths() const { return checked(impl_).lengths; }

double Grid::min_spacing() const {
  double h = spacing(0);
  for (int a = 1; a < rank(); ++a) h = std::min(h, spacing(a));
  return h;
}

double Grid::volume() const {
  double v = 1.0;
  for (double l : lengths()) v *= l;
  return v;
}

double Grid::cell_volume() const { return volume() / static_cast<double>(real_size()); }
std::size_t Grid::real_size() const { return checked(impl_).real_size; }
std::size_t Grid::spectral_size() const { return checked(impl_).spectral_size; }
int Grid::half_dim() const { return dims().back() / 2 + 1; }

std::vector<double> Grid::wavenumbers(int axis) const {
  const int n = dim(axis);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    out[static_cast<std::size_t>(m)] = 2.0 * std::numbers::pi * signed_index(m, n) / length(axis);
  }
  return out;
}

const std::vector<double>& Grid::k(int axis) const {
  return checked(impl_).k.at(static_cast<std::size_t>(axis));
}
const std::vector<int>& Grid::mode(int axis) const {
  return checked(impl_).mode.at(static_cast<std::size_t>(axis));
}
const std::vector<double>& Grid::hermitian_weight() const { return checked(impl_).weight; }
const std::vector<double>& Grid::dealias_mask() const { return checked(impl_).mask; }
const std::vector<double>& Grid::k2() const { return checked(impl_).k2; }

bool Grid::same_as(const Grid& other) const {
  if (impl_ == other.impl_) return true;
  if (!impl_ || !other.impl_) return false;
  return impl_->dims == other.impl_->dims && impl_->lengths == other.impl_->lengths;
}

Grid build_grid(std::vector<int> dims, std::vector<double> lengths) {
  return Grid(std::move(dims), std::move(lengths));
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!a.same_as(b)) throw ConfigError(std::string(where) + ": fields live on different grids");
}

}  // namespace disperlim::spectral
