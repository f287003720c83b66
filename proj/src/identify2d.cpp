#include "opsampl/identify2d.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace opsampl {

Weight2D weights_from_flat(const WeightVector& flat, int P0, int P1) {
  if (P0 < 1 || P1 < 1) throw DomainError("weights_from_flat: periods must be >= 1");
  if (std::gcd(P0, P1) != 1) throw NotCoprime("weights_from_flat: periods must be coprime");
  if (flat.period() != P0 * P1)
    throw DimensionMismatch("weights_from_flat: flat window must have period P0*P1");
  Weight2D w;
  w.P0 = P0;
  w.P1 = P1;
  w.entries.resize(static_cast<std::size_t>(P0) * P1);
  for (int n1 = 0; n1 < P1; ++n1)
    for (int n0 = 0; n0 < P0; ++n0)
      w.entries[static_cast<std::size_t>(n0 + n1 * P0)] =
          flat.at(flatten_index_2d(n0, n1, P0));
  return w;
}

cvec delta_train_2d(const Weight2D& c, const Lattice2D& params) {
  params.validate();
  if (c.P0 != params.axis0.P || c.P1 != params.axis1.P)
    throw DimensionMismatch("delta_train_2d: weight periods must match params");
  const std::int64_t n0 = params.axis0.N();
  cvec g(static_cast<std::size_t>(params.N()), cplx{0.0, 0.0});
  const std::int64_t pk0 = static_cast<std::int64_t>(params.axis0.P) * params.axis0.K;
  const std::int64_t pk1 = static_cast<std::int64_t>(params.axis1.P) * params.axis1.K;
  for (std::int64_t a = 0; a < pk0; ++a)
    for (std::int64_t b = 0; b < pk1; ++b)
      g[static_cast<std::size_t>(a * params.axis0.R + b * params.axis1.R * n0)] = c.at(a, b);
  return g;
}

cvec apply_2d(const Channel2D& H, const cvec& f) {
  const Lattice2D& p = H.params();
  p.validate();
  const std::int64_t n0 = p.axis0.N();
  const std::int64_t n1 = p.axis1.N();
  if (static_cast<std::int64_t>(f.size()) != n0 * n1)
    throw DimensionMismatch("apply_2d: signal length must be N0*N1");
  cvec out(f.size(), cplx{0.0, 0.0});
  for (const SpreadingGrid2D::Entry& e : H.spreading.entries) {
    for (std::int64_t j1 = 0; j1 < n1; ++j1) {
      const std::int64_t s1 = pos_mod(j1 - e.tau1, n1);
      const cplx ph1 = unit_root(static_cast<std::int64_t>(e.mu1) * s1, n1);
      for (std::int64_t j0 = 0; j0 < n0; ++j0) {
        const std::int64_t s0 = pos_mod(j0 - e.tau0, n0);
        out[static_cast<std::size_t>(j0 + j1 * n0)] +=
            e.value * ph1 * unit_root(static_cast<std::int64_t>(e.mu0) * s0, n0) *
            f[static_cast<std::size_t>(s0 + s1 * n0)];
      }
    }
  }
  return out;
}

cvec sound_2d(const Channel2D& H, const Weight2D& c) {
  return apply_2d(H, delta_train_2d(c, H.params()));
}

Channel2D random_channel_2d(const Lattice2D& params, const std::vector<Cell2D>& cells,
                            std::uint64_t seed) {
  params.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Channel2D H;
  H.spreading.params = params;
  for (const Cell2D& c : cells) {
    for (int dt0 = 0; dt0 < params.axis0.R; ++dt0)
      for (int dt1 = 0; dt1 < params.axis1.R; ++dt1)
        for (int dm0 = 0; dm0 < params.axis0.K; ++dm0)
          for (int dm1 = 0; dm1 < params.axis1.K; ++dm1) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            H.spreading.entries.push_back({c.q0 * params.axis0.R + dt0,
                                           c.q1 * params.axis1.R + dt1,
                                           c.m0 * params.axis0.K + dm0,
                                           c.m1 * params.axis1.K + dm1, cplx{re, im}});
          }
  }
  return H;
}

IdentResult2D identify_2d(const Channel2D& H, const Weight2D& c, const std::vector<Cell2D>& cells,
                          double cond_threshold) {
  const Lattice2D& p = H.params();
  p.validate();
  if (c.P0 != p.axis0.P || c.P1 != p.axis1.P)
    throw DimensionMismatch("identify_2d: weight periods must match params");
  const int P0 = p.axis0.P, P1 = p.axis1.P;
  const int R0 = p.axis0.R, R1 = p.axis1.R;
  const int K0 = p.axis0.K, K1 = p.axis1.K;
  if (static_cast<int>(cells.size()) > P0 * P1)
    throw TooManyCells("identify_2d: more than P0*P1 active cells");

  const cvec output = sound_2d(H, c);
  const std::int64_t n0 = p.axis0.N();
  const std::int64_t n1 = p.axis1.N();
  const std::int64_t l0 = p.axis0.L();
  const std::int64_t l1 = p.axis1.L();
  const std::int64_t pk0 = static_cast<std::int64_t>(P0) * K0;
  const std::int64_t pk1 = static_cast<std::int64_t>(P1) * K1;

  // separable Zak transform of the output, evaluated on demand
  auto zak2 = [&](std::int64_t j0, std::int64_t j1, int k0, int k1) {
    cplx acc{0.0, 0.0};
    for (int m0 = 0; m0 < K0; ++m0)
      for (int m1 = 0; m1 < K1; ++m1) {
        const std::int64_t x0 = pos_mod(j0 - static_cast<std::int64_t>(m0) * l0, n0);
        const std::int64_t x1 = pos_mod(j1 - static_cast<std::int64_t>(m1) * l1, n1);
        acc += output[static_cast<std::size_t>(x0 + x1 * n0)] *
               unit_root(static_cast<std::int64_t>(m0) * k0, K0) *
               unit_root(static_cast<std::int64_t>(m1) * k1, K1);
      }
    return acc;
  };

  // restricted system matrix: G2[(p0,p1), cell] = c[p0-q0, p1-q1] w0^{p0 m0} w1^{p1 m1}
  const int nrows = P0 * P1;
  const int ncells = static_cast<int>(cells.size());
  Eigen::MatrixXcd g(nrows, ncells);
  for (int i = 0; i < ncells; ++i) {
    const Cell2D& cell = cells[i];
    for (int p1 = 0; p1 < P1; ++p1)
      for (int p0 = 0; p0 < P0; ++p0)
        g(p0 + p1 * P0, i) = c.at(p0 - cell.q0, p1 - cell.q1) *
                             unit_root(static_cast<std::int64_t>(p0) * cell.m0, P0) *
                             unit_root(static_cast<std::int64_t>(p1) * cell.m1, P1);
  }

  IdentResult2D res;
  res.eta_hat.params = p;
  res.residual.assign(static_cast<std::size_t>(R0) * K0 * R1 * K1, 0.0);
  if (ncells == 0) return res;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  res.cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(res.cond < cond_threshold))
    throw IllConditioned("identify_2d: restricted system condition number " +
                         std::to_string(res.cond));

  Eigen::VectorXcd rhs(nrows);
  std::size_t gi = 0;
  for (int k1 = 0; k1 < K1; ++k1)
    for (int k0 = 0; k0 < K0; ++k0)
      for (int j1 = 0; j1 < R1; ++j1)
        for (int j0 = 0; j0 < R0; ++j0, ++gi) {
          for (int p1 = 0; p1 < P1; ++p1)
            for (int p0 = 0; p0 < P0; ++p0)
              rhs(p0 + p1 * P0) = unit_root(-static_cast<std::int64_t>(k0) * p0, pk0) *
                                  unit_root(-static_cast<std::int64_t>(k1) * p1, pk1) *
                                  zak2(j0 + static_cast<std::int64_t>(p0) * R0,
                                       j1 + static_cast<std::int64_t>(p1) * R1, k0, k1);
          const Eigen::VectorXcd x = svd.solve(rhs);
          const double rn = rhs.norm();
          res.residual[gi] = rn > 0.0 ? (g * x - rhs).norm() / rn : 0.0;
          for (int i = 0; i < ncells; ++i) {
            const Cell2D& cell = cells[i];
            const cplx v = x(i) *
                           unit_root(static_cast<std::int64_t>(k0) * cell.q0, pk0) *
                           unit_root(static_cast<std::int64_t>(k1) * cell.q1, pk1) *
                           unit_root(static_cast<std::int64_t>(cell.q0) * cell.m0, P0) *
                           unit_root(static_cast<std::int64_t>(cell.q1) * cell.m1, P1) /
                           static_cast<double>(K0 * K1);
            res.eta_hat.entries.push_back({cell.q0 * R0 + j0, cell.q1 * R1 + j1,
                                           cell.m0 * K0 + k0, cell.m1 * K1 + k1, v});
          }
        }
  return res;
}

void check_dimensions(const std::vector<int>& periods) {
  if (periods.empty() || periods.size() > 2)
    throw UnsupportedDimension("only d = 1 and d = 2 are supported");
  for (std::size_t i = 0; i < periods.size(); ++i)
    for (std::size_t j = i + 1; j < periods.size(); ++j)
      if (std::gcd(periods[i], periods[j]) != 1)
        throw NotCoprime("periods must be pairwise coprime");
}

double relative_error_2d(const SpreadingGrid2D& a, const SpreadingGrid2D& b) {
  std::map<std::array<int, 4>, cplx> diff;
  for (const SpreadingGrid2D::Entry& e : a.entries)
    diff[{e.tau0, e.tau1, e.mu0, e.mu1}] += e.value;
  for (const SpreadingGrid2D::Entry& e : b.entries)
    diff[{e.tau0, e.tau1, e.mu0, e.mu1}] -= e.value;
  double num = 0.0;
  for (const auto& [k, v] : diff) num += std::norm(v);
  const double den = b.norm_sq();
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

}  // namespace opsampl
