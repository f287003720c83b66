#include "opsampl/kernels.hpp"

namespace opsampl::kernels {
namespace {

cplx scalar_cdotc(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

cplx scalar_cdotu(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void scalar_caxpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scalar_cmuladd(cplx* out, const cplx* a, const cplx* b, cplx alpha, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] += alpha * a[i] * b[i];
}

double scalar_cnrm2sq(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{scalar_cdotc, scalar_cdotu, scalar_caxpy, scalar_cmuladd,
                         scalar_cnrm2sq};
  return table;
}

}  // namespace opsampl::kernels
