#include "opsampl/zak.hpp"

#include "opsampl/kernels.hpp"

namespace opsampl {

cplx ZakGrid::at(std::int64_t j, std::int64_t k) const {
  const std::int64_t l = L();
  const int m = M();
  const std::int64_t k0 = pos_mod(k, m);
  const std::int64_t jm = pos_mod(j, l);
  const std::int64_t wraps = (j - jm) / l;  // exact multiple
  return unit_root(wraps * k0, m) * (*this)(jm, static_cast<int>(k0));
}

namespace {

// rows[k] = (e^{sign * 2 pi i t k / m})_{t=0..m-1}
std::vector<cvec> twiddle_rows(int m, int sign) {
  std::vector<cvec> rows(m, cvec(m));
  for (int k = 0; k < m; ++k)
    for (int t = 0; t < m; ++t)
      rows[k][t] = unit_root(sign * static_cast<std::int64_t>(t) * k, m);
  return rows;
}

}  // namespace

ZakGrid zak(const cvec& f, const LatticeParams& params) {
  params.validate();
  const std::int64_t n = params.N();
  if (static_cast<std::int64_t>(f.size()) != n)
    throw DimensionMismatch("zak: signal length must be N = P*R*K");
  const std::int64_t l = params.L();
  const int m = params.M();

  ZakGrid z;
  z.params = params;
  z.values.assign(static_cast<std::size_t>(l) * m, cplx{0.0, 0.0});

  const std::vector<cvec> rows = twiddle_rows(m, +1);
  cvec samples(m);
  for (std::int64_t j = 0; j < l; ++j) {
    for (int t = 0; t < m; ++t)
      samples[t] = f[static_cast<std::size_t>(pos_mod(j - static_cast<std::int64_t>(t) * l, n))];
    for (int k = 0; k < m; ++k)
      z(j, k) = kernels::cdotu(samples.data(), rows[k].data(), static_cast<std::size_t>(m));
  }
  return z;
}

cvec inverse_zak(const ZakGrid& Z) {
  const std::int64_t l = Z.L();
  const int m = Z.M();
  const std::int64_t n = Z.params.N();
  if (static_cast<std::int64_t>(Z.values.size()) != l * m)
    throw DimensionMismatch("inverse_zak: malformed grid");

  const std::vector<cvec> rows = twiddle_rows(m, -1);
  cvec f(static_cast<std::size_t>(n));
  cvec zrow(m);
  for (std::int64_t j = 0; j < l; ++j) {
    for (int k = 0; k < m; ++k) zrow[k] = Z(j, k);
    for (int t = 0; t < m; ++t) {
      const cplx v = kernels::cdotu(zrow.data(), rows[t].data(), static_cast<std::size_t>(m));
      f[static_cast<std::size_t>(pos_mod(j - static_cast<std::int64_t>(t) * l, n))] =
          v / static_cast<double>(m);
    }
  }
  return f;
}

cvec quasiperiodize(const SpreadingGrid& eta) {
  const LatticeParams& p = eta.params;
  p.validate();
  const std::int64_t l = p.L();
  const std::int64_t pk = static_cast<std::int64_t>(p.P) * p.K;
  const int m = p.M();
  cvec q(static_cast<std::size_t>(l * pk), cplx{0.0, 0.0});
  for (const SpreadingGrid::Entry& e : eta.entries) {
    const std::int64_t tau = pos_mod(e.tau, l);
    const std::int64_t w = (e.tau - tau) / l;   // delay fold count, phase-bearing
    const std::int64_t mu = pos_mod(e.mu, pk);  // Doppler fold, phase-free
    q[static_cast<std::size_t>(tau + mu * l)] += unit_root(-mu * w, m) * e.value;
  }
  return q;
}

}  // namespace opsampl
