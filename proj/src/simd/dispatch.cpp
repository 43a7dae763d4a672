#include <atomic>
#include <cstdlib>

#include "mbrank/simd/kernels.hpp"

namespace mbrank::simd {

#if defined(MBRANK_HAVE_AVX2)
const Kernels& avx2_kernels();
#endif
#if defined(MBRANK_HAVE_NEON)
const Kernels& neon_kernels();
#endif

namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(MBRANK_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(MBRANK_HAVE_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const Kernels* pick_default() {
  if (const char* env = std::getenv("MBRANK_SIMD")) {
    Isa requested;
    if (parse_isa(env, requested)) {
      if (const Kernels* k = kernels_for(requested)) return k;
    }
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (const Kernels* k = kernels_for(isa)) return k;
  }
  return &scalar_kernels();
}

std::atomic<const Kernels*>& slot() {
  static std::atomic<const Kernels*> current{pick_default()};
  return current;
}

}  // namespace

const Kernels* kernels_for(Isa isa) {
  if (!cpu_has(isa)) return nullptr;
  switch (isa) {
    case Isa::Scalar:
      return &scalar_kernels();
    case Isa::Avx2:
#if defined(MBRANK_HAVE_AVX2)
      return &avx2_kernels();
#else
      return nullptr;
#endif
    case Isa::Neon:
#if defined(MBRANK_HAVE_NEON)
      return &neon_kernels();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

bool available(Isa isa) { return kernels_for(isa) != nullptr; }

const Kernels& active() { return *slot().load(std::memory_order_acquire); }

bool set_active(Isa isa) {
  const Kernels* k = kernels_for(isa);
  if (k == nullptr) return false;
  slot().store(k, std::memory_order_release);
  return true;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool parse_isa(std::string_view text, Isa& out) {
  if (text == "scalar") {
    out = Isa::Scalar;
  } else if (text == "avx2") {
    out = Isa::Avx2;
  } else if (text == "neon") {
    out = Isa::Neon;
  } else {
    return false;
  }
  return true;
}

}  // namespace mbrank::simd
