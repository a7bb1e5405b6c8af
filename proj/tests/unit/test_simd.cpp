#include <doctest.h>

#include <random>
#include <vector>

#include "disperlim/simd/kernels.hpp"

using namespace disperlim::simd;

namespace {

struct Data {
  std::vector<double> a, b, w;
  std::vector<cplx> ca, cb, cc;
};

Data make(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    d.a.push_back(g(rng));
    d.b.push_back(g(rng));
    d.w.push_back(std::abs(g(rng)));
    d.ca.emplace_back(g(rng), g(rng));
    d.cb.emplace_back(g(rng), g(rng));
    d.cc.emplace_back(g(rng), g(rng));
  }
  return d;
}

}  // namespace

TEST_CASE("avx2 element-wise kernels are bit-identical to scalar") {
  const Kernels* v = avx2_kernels();
  if (v == nullptr || !cpu_supports_avx2()) {
    MESSAGE("AVX2 backend unavailable; skipping");
    return;
  }
  const Kernels& s = scalar_kernels();
  // Odd sizes exercise the scalar tails.
  for (std::size_t n : {1u, 2u, 3u, 7u, 8u, 9u, 33u, 1000u, 1027u}) {
    Data d = make(n, 17 + static_cast<unsigned>(n));
    std::vector<double> r1(n), r2(n);
    s.mul(d.a.data(), d.b.data(), r1.data(), n);
    v->mul(d.a.data(), d.b.data(), r2.data(), n);
    CHECK(r1 == r2);
    s.axpby(0.3, d.a.data(), -1.7, d.b.data(), r1.data(), n);
    v->axpby(0.3, d.a.data(), -1.7, d.b.data(), r2.data(), n);
    CHECK(r1 == r2);

    std::vector<cplx> c1(n), c2(n);
    s.scale_complex(d.ca.data(), d.w.data(), c1.data(), n);
    v->scale_complex(d.ca.data(), d.w.data(), c2.data(), n);
    CHECK(c1 == c2);
    s.mul_complex(d.ca.data(), d.cb.data(), c1.data(), n);
    v->mul_complex(d.ca.data(), d.cb.data(), c2.data(), n);
    CHECK(c1 == c2);
    c1 = d.cc;
    c2 = d.cc;
    s.mul_acc_complex(d.ca.data(), d.cb.data(), c1.data(), n);
    v->mul_acc_complex(d.ca.data(), d.cb.data(), c2.data(), n);
    CHECK(c1 == c2);

    const double n1 = s.weighted_norm2(d.ca.data(), d.w.data(), n);
    const double n2 = v->weighted_norm2(d.ca.data(), d.w.data(), n);
    CHECK(n2 == doctest::Approx(n1).epsilon(1e-13));
    const double p1 = s.dot(d.a.data(), d.b.data(), n);
    const double p2 = v->dot(d.a.data(), d.b.data(), n);
    CHECK(std::abs(p1 - p2) <= 1e-13 * (1.0 + std::abs(p1)) * static_cast<double>(n));
  }
}

TEST_CASE("complex multiply matches std::complex") {
  Data d = make(5, 3);
  std::vector<cplx> out(5);
  scalar_kernels().mul_complex(d.ca.data(), d.cb.data(), out.data(), 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(out[i] - d.ca[i] * d.cb[i]) < 1e-15);
  }
}

TEST_CASE("backend selection") {
  const Backend before = active_backend();
  set_backend(Backend::Scalar);
  CHECK(active_backend() == Backend::Scalar);
  CHECK(backend_name(Backend::Scalar) == "scalar");
  if (avx2_kernels() != nullptr && cpu_supports_avx2()) {
    set_backend(Backend::Avx2);
    CHECK(active_backend() == Backend::Avx2);
  }
  set_backend(before);
}
