#include "opsampl/gabor.hpp"

#include <random>

#include "opsampl/kernels.hpp"

namespace opsampl {

cvec translate(const cvec& x, std::int64_t steps) {
  const std::int64_t p = static_cast<std::int64_t>(x.size());
  if (p == 0) return {};
  cvec out(x.size());
  for (std::int64_t n = 0; n < p; ++n) out[n] = x[pos_mod(n - steps, p)];
  return out;
}

cvec modulate(const cvec& x, std::int64_t steps) {
  const std::int64_t p = static_cast<std::int64_t>(x.size());
  cvec out(x.size());
  for (std::int64_t n = 0; n < p; ++n) out[n] = unit_root(n * steps, p) * x[n];
  return out;
}

cvec tm_column(const WeightVector& c, int q, int m) {
  const int p = c.period();
  cvec out(p);
  for (int n = 0; n < p; ++n)
    out[n] = unit_root(static_cast<std::int64_t>(n) * m, p) * c.at(n - q);
  return out;
}

GaborMatrix gabor_matrix(const WeightVector& c) {
  const int p = c.period();
  GaborMatrix g;
  g.P = p;
  g.mat.resize(p, p * p);
  for (int q = 0; q < p; ++q) {
    for (int m = 0; m < p; ++m) {
      const int col = g.col_index(q, m);
      for (int n = 0; n < p; ++n)
        g.mat(n, col) = c.at(n - q) * unit_root(static_cast<std::int64_t>(n) * m, p);
    }
  }
  return g;
}

double frame_sum(const WeightVector& c, const cvec& x) {
  const int p = c.period();
  if (static_cast<int>(x.size()) != p)
    throw DimensionMismatch("frame_sum: x must have length P");
  double acc = 0.0;
  for (int q = 0; q < p; ++q) {
    for (int m = 0; m < p; ++m) {
      // <x, T^q M^m c> with the second-argument-conjugated inner product
      const cvec col = translate(modulate(c.entries, m), q);
      acc += std::norm(kernels::cdotc(col.data(), x.data(), x.size()));
    }
  }
  return acc;
}

WeightVector gaussian_window(int P, std::uint64_t seed) {
  if (P < 1) throw DomainError("gaussian_window: P must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  cvec e(P);
  for (cplx& v : e) {
    double re = gauss(rng);
    double im = gauss(rng);
    v = cplx{re, im};
  }
  return WeightVector(std::move(e));
}

}  // namespace opsampl
