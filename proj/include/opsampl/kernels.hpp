#pragma once

#include <cstddef>
#include <string>

#include "opsampl/types.hpp"

// Data-parallel complex-vector primitives behind the arithmetic inner loops
// (channel application, Zak sums, frame sums, matching-pursuit correlations).
//
// A scalar reference implementation always exists; on x86-64 an AVX2+FMA
// variant is selected at runtime when the CPU supports it.  The environment
// variable OPSAMPL_SIMD=scalar|avx2|auto overrides the choice at startup;
// force_isa() overrides it programmatically (used by the equivalence tests).
// Scalar and SIMD paths may round differently (FMA, reassociation), so
// cross-path comparisons are tolerance-based, not bitwise.

namespace opsampl::kernels {

enum class Isa { Scalar, Avx2 };

struct Ops {
  // sum conj(x[i]) * y[i]
  cplx (*cdotc)(const cplx* x, const cplx* y, std::size_t n);
  // sum x[i] * y[i]
  cplx (*cdotu)(const cplx* x, const cplx* y, std::size_t n);
  // y[i] += alpha * x[i]
  void (*caxpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  // out[i] += alpha * a[i] * b[i]
  void (*cmuladd)(cplx* out, const cplx* a, const cplx* b, cplx alpha, std::size_t n);
  // sum |x[i]|^2
  double (*cnrm2sq)(const cplx* x, std::size_t n);
};

const Ops& ops();
const Ops& scalar_ops();

Isa active_isa();
const char* isa_name(Isa isa);
bool avx2_available();

void force_isa(Isa isa);
void reset_isa();  // back to env/cpuid auto-detection

inline cplx cdotc(const cplx* x, const cplx* y, std::size_t n) { return ops().cdotc(x, y, n); }
inline cplx cdotu(const cplx* x, const cplx* y, std::size_t n) { return ops().cdotu(x, y, n); }
inline void caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) { ops().caxpy(alpha, x, y, n); }
inline void cmuladd(cplx* out, const cplx* a, const cplx* b, cplx alpha, std::size_t n) {
  ops().cmuladd(out, a, b, alpha, n);
}
inline double cnrm2sq(const cplx* x, std::size_t n) { return ops().cnrm2sq(x, n); }

}  // namespace opsampl::kernels
