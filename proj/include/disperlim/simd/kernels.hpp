#pragma once
// Data-parallel inner loops used by the spectral machinery.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant compiled in its own translation unit. The active backend is chosen
// once at startup from CPUID (override with DISPERLIM_SIMD=scalar|avx2 or
// set_backend()). Element-wise kernels are bit-identical across backends;
// reductions agree to rounding.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace disperlim::simd {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

/// Kernel table; one instance per backend.
struct Kernels {
  // out[i] = a[i] * b[i]
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
  // out[i] = alpha * a[i] + beta * b[i]
  void (*axpby)(double alpha, const double* a, double beta, const double* b, double* out,
                std::size_t n);
  // out[i] = c[i] * m[i]   (complex times real multiplier)
  void (*scale_complex)(const cplx* c, const double* m, cplx* out, std::size_t n);
  // out[i] = a[i] * b[i]   (complex)
  void (*mul_complex)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // out[i] += a[i] * b[i]  (complex)
  void (*mul_acc_complex)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  // sum_i w[i] * |c[i]|^2
  double (*weighted_norm2)(const cplx* c, const double* w, std::size_t n);
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
};

const Kernels& scalar_kernels();
/// Null when the AVX2 variant was not compiled in.
const Kernels* avx2_kernels();

bool cpu_supports_avx2();
Backend active_backend();
/// Throws ConfigError when the requested backend is unavailable.
void set_backend(Backend b);
std::string_view backend_name(Backend b);
const Kernels& active();

// Span front ends over the active backend. Sizes must agree.
void mul(std::span<const double> a, std::span<const double> b, std::span<double> out);
void axpby(double alpha, std::span<const double> a, double beta, std::span<const double> b,
           std::span<double> out);
void scale_complex(std::span<const cplx> c, std::span<const double> m, std::span<cplx> out);
void mul_complex(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
void mul_acc_complex(std::span<const cplx> a, std::span<const cplx> b, std::span<cplx> out);
double weighted_norm2(std::span<const cplx> c, std::span<const double> w);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace disperlim::simd
