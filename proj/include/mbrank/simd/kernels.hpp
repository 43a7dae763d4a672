#pragma once

// Data-parallel inner loops used by the Gram, centering and Cholesky code.
//
// Every entry has a scalar reference implementation; vector variants are
// compiled per-ISA and chosen once at startup. Vector variants reassociate
// sums, so results agree with the scalar path to rounding, not bit-for-bit.
// Within one process the active table never changes unless a caller forces
// it, which keeps repeated runs bit-identical.

#include <cstddef>
#include <string_view>

namespace mbrank::simd {

enum class Isa { Scalar, Avx2, Neon };

struct Kernels {
  Isa isa;
  const char* name;
  // sum_k a[k] * b[k]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // Four dot products of `a` against b0..b3 sharing the loads of `a`.
  void (*dot4)(const double* a, const double* b0, const double* b1, const double* b2,
               const double* b3, std::size_t n, double* out);
  // y[k] += alpha * x[k]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y[k] += (x[k] - a)^2
  void (*sqdiff_acc)(double a, const double* x, double* y, std::size_t n);
  // sum_k x[k]
  double (*sum)(const double* x, std::size_t n);
  // y[k] -= r[k] + c
  void (*sub_shift)(const double* r, double c, double* y, std::size_t n);
};

const Kernels& scalar_kernels();
// nullptr when the ISA was not compiled in or the CPU lacks it.
const Kernels* kernels_for(Isa isa);
bool available(Isa isa);

// Active table. Chosen on first use: the MBRANK_SIMD environment variable
// (scalar|avx2|neon) if set and available, otherwise the widest available.
const Kernels& active();
// Returns false (and leaves the table unchanged) if `isa` is unavailable.
bool set_active(Isa isa);

std::string_view isa_name(Isa isa);
bool parse_isa(std::string_view text, Isa& out);

}  // namespace mbrank::simd
