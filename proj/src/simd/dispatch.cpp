#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>

#include "disperlim/error.hpp"
#include "disperlim/simd/kernels.hpp"

namespace disperlim::simd {
namespace {

Backend initial_backend() {
  const bool avx2_ok = cpu_supports_avx2() && avx2_kernels() != nullptr;
  if (const char* env = std::getenv("DISPERLIM_SIMD")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && avx2_ok) return Backend::Avx2;
  }
  return avx2_ok ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{initial_backend()};
  return slot;
}

}  // namespace

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::Avx2 && (!cpu_supports_avx2() || avx2_kernels() == nullptr)) {
    throw ConfigError("AVX2 backend requested but not available on this build/CPU");
  }
  backend_slot().store(b, std::memory_order_relaxed);
}

std::string_view backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

const Kernels& active() {
  return active_backend() == Backend::Avx2 ? *avx2_kernels() : scalar_kernels();
}

void mul(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().mul(a.data(), b.data(), out.data(), out.size());
}

void axpby(double alpha, std::span<const double> a, double beta, std::span<const double> b,
           std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().axpby(alpha, a.data(), beta, b.data(), out.data(), out.size());
}

void scale_complex(std::span<const cplx> c, std::span<const double> m, std::span<cplx> out) {
  assert(c.size() == m.size() && c.size() == out.size());
  active().scale_complex(c.data(), m.data(), out.data(), out.size());
}

void mul_complex(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().mul_complex(a.data(), b.data(), out.data(), out.size());
}

void mul_acc_complex(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().mul_acc_complex(a.data(), b.data(), out.data(), out.size());
}

double weighted_norm2(std::span<const cplx> c, std::span<const double> w) {
  assert(c.size() == w.size());
  return active().weighted_norm2(c.data(), w.data(), c.size());
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

}  // namespace disperlim::simd
