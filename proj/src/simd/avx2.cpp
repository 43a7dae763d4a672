// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "mbrank/simd/kernels.hpp"

namespace mbrank::simd {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
  }
  if (k + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    k += 4;
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void dot4(const double* a, const double* b0, const double* b1, const double* b2,
          const double* b3, std::size_t n, double* out) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd();
  __m256d s3 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d va = _mm256_loadu_pd(a + k);
    s0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(b0 + k), s0);
    s1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(b1 + k), s1);
    s2 = _mm256_fmadd_pd(va, _mm256_loadu_pd(b2 + k), s2);
    s3 = _mm256_fmadd_pd(va, _mm256_loadu_pd(b3 + k), s3);
  }
  double r0 = hsum(s0), r1 = hsum(s1), r2 = hsum(s2), r3 = hsum(s3);
  for (; k < n; ++k) {
    r0 += a[k] * b0[k];
    r1 += a[k] * b1[k];
    r2 += a[k] * b2[k];
    r3 += a[k] * b3[k];
  }
  out[0] = r0;
  out[1] = r1;
  out[2] = r2;
  out[3] = r3;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4)
    _mm256_storeu_pd(y + k, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k)));
  for (; k < n; ++k) y[k] += alpha * x[k];
}

void sqdiff_acc(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + k), va);
    _mm256_storeu_pd(y + k, _mm256_fmadd_pd(d, d, _mm256_loadu_pd(y + k)));
  }
  for (; k < n; ++k) {
    const double d = x[k] - a;
    y[k] += d * d;
  }
}

double sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + k));
  double s = hsum(acc);
  for (; k < n; ++k) s += x[k];
  return s;
}

void sub_shift(const double* r, double c, double* y, std::size_t n) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d t = _mm256_add_pd(_mm256_loadu_pd(r + k), vc);
    _mm256_storeu_pd(y + k, _mm256_sub_pd(_mm256_loadu_pd(y + k), t));
  }
  for (; k < n; ++k) y[k] -= r[k] + c;
}

}  // namespace

const Kernels& avx2_kernels() {
  static const Kernels table{Isa::Avx2, "avx2", dot, dot4, axpy, sqdiff_acc, sum, sub_shift};
  return table;
}

}  // namespace mbrank::simd
