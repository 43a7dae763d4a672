#include <arm_neon.h>

#include "mbrank/simd/kernels.hpp"

namespace mbrank::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + k), vld1q_f64(b + k));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + k + 2), vld1q_f64(b + k + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void dot4(const double* a, const double* b0, const double* b1, const double* b2,
          const double* b3, std::size_t n, double* out) {
  float64x2_t s0 = vdupq_n_f64(0.0), s1 = s0, s2 = s0, s3 = s0;
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t va = vld1q_f64(a + k);
    s0 = vfmaq_f64(s0, va, vld1q_f64(b0 + k));
    s1 = vfmaq_f64(s1, va, vld1q_f64(b1 + k));
    s2 = vfmaq_f64(s2, va, vld1q_f64(b2 + k));
    s3 = vfmaq_f64(s3, va, vld1q_f64(b3 + k));
  }
  double r0 = vaddvq_f64(s0), r1 = vaddvq_f64(s1), r2 = vaddvq_f64(s2), r3 = vaddvq_f64(s3);
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
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) vst1q_f64(y + k, vfmaq_f64(vld1q_f64(y + k), va, vld1q_f64(x + k)));
  for (; k < n; ++k) y[k] += alpha * x[k];
}

void sqdiff_acc(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const float64x2_t d = vsubq_f64(vld1q_f64(x + k), va);
    vst1q_f64(y + k, vfmaq_f64(vld1q_f64(y + k), d, d));
  }
  for (; k < n; ++k) {
    const double d = x[k] - a;
    y[k] += d * d;
  }
}

double sum(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) acc = vaddq_f64(acc, vld1q_f64(x + k));
  double s = vaddvq_f64(acc);
  for (; k < n; ++k) s += x[k];
  return s;
}

void sub_shift(const double* r, double c, double* y, std::size_t n) {
  const float64x2_t vc = vdupq_n_f64(c);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2)
    vst1q_f64(y + k, vsubq_f64(vld1q_f64(y + k), vaddq_f64(vld1q_f64(r + k), vc)));
  for (; k < n; ++k) y[k] -= r[k] + c;
}

}  // namespace

const Kernels& neon_kernels() {
  static const Kernels table{Isa::Neon, "neon", dot, dot4, axpy, sqdiff_acc, sum, sub_shift};
  return table;
}

}  // namespace mbrank::simd
