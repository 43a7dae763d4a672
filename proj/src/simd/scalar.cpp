#include "mbrank/simd/kernels.hpp"

namespace mbrank::simd {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

void dot4(const double* a, const double* b0, const double* b1, const double* b2,
          const double* b3, std::size_t n, double* out) {
  out[0] = dot(a, b0, n);
  out[1] = dot(a, b1, n);
  out[2] = dot(a, b2, n);
  out[3] = dot(a, b3, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

void sqdiff_acc(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double d = x[k] - a;
    y[k] += d * d;
  }
}

double sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += x[k];
  return s;
}

void sub_shift(const double* r, double c, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] -= r[k] + c;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels table{Isa::Scalar, "scalar", dot, dot4, axpy, sqdiff_acc, sum, sub_shift};
  return table;
}

}  // namespace mbrank::simd
