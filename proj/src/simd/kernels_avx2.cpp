// AVX2 variants of the kernels in kernels_scalar.cpp. This file is the only
// one compiled with -mavx2; nothing here runs unless dispatch selects it.
#include "disperlim/simd/kernels.hpp"

#if defined(DISPERLIM_HAVE_AVX2) && defined(__AVX2__)
#include <immintrin.h>

namespace disperlim::simd {
namespace {

inline const double* as_real(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* as_real(cplx* p) { return reinterpret_cast<double*>(p); }

// [ar, ai] * [br, bi] for two interleaved complex numbers per register,
// in the same operation order as the scalar kernel.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_addsub_pd(_mm256_mul_pd(a, b_re), _mm256_mul_pd(a_sw, b_im));
}

// [m0, m1] -> [m0, m0, m1, m1]
inline __m256d dup_pairs(const double* m) {
  const __m128d v = _mm_loadu_pd(m);
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(v), 0x50);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void axpby(double alpha, const double* a, double beta, const double* b, double* out,
           std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  const __m256d vb = _mm256_set1_pd(beta);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_mul_pd(va, _mm256_loadu_pd(a + i));
    const __m256d y = _mm256_mul_pd(vb, _mm256_loadu_pd(b + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(x, y));
  }
  for (; i < n; ++i) out[i] = alpha * a[i] + beta * b[i];
}

void scale_complex(const cplx* c, const double* m, cplx* out, std::size_t n) {
  const double* x = as_real(c);
  double* y = as_real(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(y + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(x + 2 * i), dup_pairs(m + i)));
  }
  for (; i < n; ++i) {
    y[2 * i] = x[2 * i] * m[i];
    y[2 * i + 1] = x[2 * i + 1] * m[i];
  }
}

void mul_complex(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const double* x = as_real(a);
  const double* z = as_real(b);
  double* y = as_real(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    _mm256_storeu_pd(y + 2 * i, cmul(_mm256_loadu_pd(x + 2 * i), _mm256_loadu_pd(z + 2 * i)));
  }
  for (; i < n; ++i) {
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
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d p = cmul(_mm256_loadu_pd(x + 2 * i), _mm256_loadu_pd(z + 2 * i));
    _mm256_storeu_pd(y + 2 * i, _mm256_add_pd(_mm256_loadu_pd(y + 2 * i), p));
  }
  for (; i < n; ++i) {
    const double ar = x[2 * i], ai = x[2 * i + 1];
    const double br = z[2 * i], bi = z[2 * i + 1];
    y[2 * i] = y[2 * i] + (ar * br - ai * bi);
    y[2 * i + 1] = y[2 * i + 1] + (ai * br + ar * bi);
  }
}

double weighted_norm2(const cplx* c, const double* w, std::size_t n) {
  const double* x = as_real(c);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(x + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(x + 2 * i + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_mul_pd(v0, v0), dup_pairs(w + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_mul_pd(v1, v1), dup_pairs(w + i + 2)));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += w[i] * (x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
  return s;
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_mul_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4)));
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

constexpr Kernels kAvx2{mul,         axpby,           scale_complex, mul_complex,
                        mul_acc_complex, weighted_norm2, dot};

}  // namespace

const Kernels* avx2_kernels() { return &kAvx2; }

}  // namespace disperlim::simd

#else

namespace disperlim::simd {
const Kernels* avx2_kernels() { return nullptr; }
}  // namespace disperlim::simd

#endif
