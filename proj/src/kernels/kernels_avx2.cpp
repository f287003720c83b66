// AVX2+FMA variants of the complex-vector kernels.  Two complex doubles per
// 256-bit register, interleaved [re, im] layout.  Compiled only on x86-64
// (see src/CMakeLists.txt); selected at runtime via cpuid.

#include <immintrin.h>

#include "opsampl/kernels.hpp"

namespace opsampl::kernels {
namespace {

// (a.re*b.re - a.im*b.im, a.re*b.im + a.im*b.re) per lane pair
inline __m256d cmul(__m256d a, __m256d b) {
  __m256d are = _mm256_movedup_pd(a);
  __m256d aim = _mm256_permute_pd(a, 0xF);
  __m256d bswap = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(are, b, _mm256_mul_pd(aim, bswap));
}

// conj(a) * b per lane pair
inline __m256d cmulc(__m256d a, __m256d b) {
  __m256d are = _mm256_movedup_pd(a);
  __m256d aim = _mm256_permute_pd(a, 0xF);
  __m256d bswap = _mm256_permute_pd(b, 0x5);
  return _mm256_fmsubadd_pd(are, b, _mm256_mul_pd(aim, bswap));
}

inline cplx reduce_pair(__m256d acc) {
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return cplx{out[0], out[1]};
}

cplx avx2_cdotc(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmulc(_mm256_loadu_pd(xp + 2 * i), _mm256_loadu_pd(yp + 2 * i)));
    acc1 = _mm256_add_pd(acc1, cmulc(_mm256_loadu_pd(xp + 2 * i + 4), _mm256_loadu_pd(yp + 2 * i + 4)));
  }
  for (; i + 2 <= n; i += 2)
    acc0 = _mm256_add_pd(acc0, cmulc(_mm256_loadu_pd(xp + 2 * i), _mm256_loadu_pd(yp + 2 * i)));
  cplx acc = reduce_pair(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

cplx avx2_cdotu(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(xp + 2 * i), _mm256_loadu_pd(yp + 2 * i)));
    acc1 = _mm256_add_pd(acc1, cmul(_mm256_loadu_pd(xp + 2 * i + 4), _mm256_loadu_pd(yp + 2 * i + 4)));
  }
  for (; i + 2 <= n; i += 2)
    acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(xp + 2 * i), _mm256_loadu_pd(yp + 2 * i)));
  cplx acc = reduce_pair(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void avx2_caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vy = _mm256_loadu_pd(yp + 2 * i);
    vy = _mm256_add_pd(vy, cmul(va, _mm256_loadu_pd(xp + 2 * i)));
    _mm256_storeu_pd(yp + 2 * i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void avx2_cmuladd(cplx* out, const cplx* a, const cplx* b, cplx alpha, std::size_t n) {
  const double* ap = reinterpret_cast<const double*>(a);
  const double* bp = reinterpret_cast<const double*>(b);
  double* op = reinterpret_cast<double*>(out);
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d prod = cmul(_mm256_loadu_pd(ap + 2 * i), _mm256_loadu_pd(bp + 2 * i));
    __m256d vo = _mm256_loadu_pd(op + 2 * i);
    vo = _mm256_add_pd(vo, cmul(va, prod));
    _mm256_storeu_pd(op + 2 * i, vo);
  }
  for (; i < n; ++i) out[i] += alpha * a[i] * b[i];
}

double avx2_cnrm2sq(const cplx* x, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d v = _mm256_loadu_pd(xp + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  s = _mm_hadd_pd(s, s);
  double total = _mm_cvtsd_f64(s);
  for (; i < n; ++i) total += std::norm(x[i]);
  return total;
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops table{avx2_cdotc, avx2_cdotu, avx2_caxpy, avx2_cmuladd, avx2_cnrm2sq};
  return table;
}

}  // namespace opsampl::kernels
