#include "disperlim/simd/kernels.hpp"

namespace disperlim::simd {
namespace {

// Complex arithmetic is spelled out on interleaved doubles so that the AVX2
// variant can reproduce it operation for operation.
inline const double* as_real(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_real(cplx* p) { return reinterpret_cast<double*>(p); }

void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void axpby(double alpha, const double* a, double beta, const double* b, double* out,
           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = alpha * a[i] + beta * b[i];
}

void scale_complex(const cplx* c, const double* m, cplx* out, std::size_t n) {
  const double* x = as_real(c);
  double* y = as_real(out);
  for (std::size_t i = 0; i < n; ++i) {
    y[2 * i] = x[2 * i] * m[i];
    y[2 * i + 1] = x[2 * i + 1] * m[i];
  }
}

void mul_complex(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const double* x = as_real(a);
  const double* z = as_real(b);
  double* y = as_real(out);
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = x[2 * i], ai = x[2 * i + 1];
    const double br = z[2 * i], bi = z[2 * i + 1];
    y[2 * i] = ar * br - ai * bi;
    y[2 * i + 1] = ai * br + ar * bi;
  }
}

void mul_acc_complex(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const double* x = as_real(a);
  const double* z = as_real(b);
  double* y = as_real(out);
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = x[2 * i], ai = x[2 * i + 1];
    const double br = z[2 * i], bi = z[2 * i + 1];
    y[2 * i] = y[2 * i] + (ar * br - ai * bi);
    y[2 * i + 1] = y[2 * i + 1] + (ai * br + ar * bi);
  }
}

double weighted_norm2(const cplx* c, const double* w, std::size_t n) {
  const double* x = as_real(c);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += w[i] * (x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
  }
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

constexpr Kernels kScalar{mul,         axpby,           scale_complex, mul_complex,
                          mul_acc_complex, weighted_norm2, dot};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace disperlim::simd
