#include "opsampl/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace opsampl::kernels {

#ifdef OPSAMPL_HAVE_AVX2
const Ops& avx2_ops();  // defined in kernels_avx2.cpp
#endif

namespace {

bool cpu_has_avx2() {
#if defined(OPSAMPL_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect_isa() {
  const char* env = std::getenv("OPSAMPL_SIMD");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    if (std::strcmp(env, "avx2") == 0)
      return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
    // anything else (including "auto") falls through to detection
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<int> g_forced{-1};  // -1 = auto

}  // namespace

bool avx2_available() { return cpu_has_avx2(); }

Isa active_isa() {
  int f = g_forced.load(std::memory_order_relaxed);
  if (f >= 0) return static_cast<Isa>(f);
  static const Isa detected = detect_isa();
  return detected;
}

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && !cpu_has_avx2())
    throw DomainError("kernels: AVX2 not available on this host");
  g_forced.store(static_cast<int>(isa), std::memory_order_relaxed);
}

void reset_isa() { g_forced.store(-1, std::memory_order_relaxed); }

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

const Ops& ops() {
#ifdef OPSAMPL_HAVE_AVX2
  if (active_isa() == Isa::Avx2) return avx2_ops();
#endif
  return scalar_ops();
}

}  // namespace opsampl::kernels
