#include "opsampl/identify.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "opsampl/kernels.hpp"

namespace opsampl {

cvec sound(const DiscreteChannel& H, const WeightVector& c) {
  const LatticeParams& p = H.params();
  if (c.period() != p.P)
    throw DimensionMismatch("sound: weight period must equal params.P");
  return apply(H, delta_train(c, p));
}

IdentSystem assemble(const cvec& output, const WeightVector& c, const LatticeParams& params,
                     const SupportSet& active_cells) {
  params.validate();
  if (static_cast<std::int64_t>(output.size()) != params.N())
    throw DimensionMismatch("assemble: output length must be N");
  if (c.period() != params.P)
    throw DimensionMismatch("assemble: weight period must equal params.P");

  IdentSystem sys;
  sys.G = gabor_matrix(c);
  sys.params = params;
  sys.active_cells = active_cells;

  const ZakGrid Z = zak(output, params);
  const int P = params.P;
  const int R = params.R;
  const int K = params.K;
  const std::int64_t pk = static_cast<std::int64_t>(P) * K;

  sys.zvec.resize(P, static_cast<Eigen::Index>(R) * K);
  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < R; ++j) {
      const Eigen::Index gi = j + static_cast<Eigen::Index>(k) * R;
      for (int p = 0; p < P; ++p) {
        sys.zvec(p, gi) =
            unit_root(-static_cast<std::int64_t>(k) * p, pk) * Z(j + static_cast<std::int64_t>(p) * R, k);
      }
    }
  }
  return sys;
}

namespace {

Eigen::MatrixXcd restricted_gabor(const IdentSystem& sys) {
  const int ncells = static_cast<int>(sys.active_cells.cells.size());
  Eigen::MatrixXcd g(sys.params.P, ncells);
  for (int i = 0; i < ncells; ++i) {
    const Cell& cell = sys.active_cells.cells[i];
    g.col(i) = sys.G.column(cell.q, cell.m);
  }
  return g;
}

}  // namespace

IdentResult solve_known_support(const IdentSystem& sys, double cond_threshold) {
  const int P = sys.params.P;
  const int K = sys.params.K;
  const int R = sys.params.R;
  const std::int64_t pk = static_cast<std::int64_t>(P) * K;
  const auto& cells = sys.active_cells.cells;
  if (static_cast<int>(cells.size()) > P)
    throw TooManyCells("solve_known_support: more than P active cells");

  IdentResult res;
  res.eta_hat.params = sys.params;
  res.residual.assign(static_cast<std::size_t>(sys.grid_count()), 0.0);
  if (cells.empty()) return res;

  const Eigen::MatrixXcd g = restricted_gabor(sys);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  res.cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(res.cond < cond_threshold))
    throw IllConditioned("solve_known_support: restricted system condition number " +
                         std::to_string(res.cond));

  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < R; ++j) {
      const Eigen::Index gi = j + static_cast<Eigen::Index>(k) * R;
      const Eigen::VectorXcd rhs = sys.zvec.col(gi);
      const Eigen::VectorXcd x = svd.solve(rhs);
      const double rhs_norm = rhs.norm();
      res.residual[static_cast<std::size_t>(gi)] =
          rhs_norm > 0.0 ? (g * x - rhs).norm() / rhs_norm : 0.0;
      for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
        // unwind the phases of the unknown vector back to eta on the lattice
        const Cell& cell = cells[i];
        const cplx v = x(i) *
                       unit_root(static_cast<std::int64_t>(k) * cell.q, pk) *
                       unit_root(static_cast<std::int64_t>(cell.q) * cell.m, P) /
                       static_cast<double>(K);
        res.eta_hat.add(cell.q * R + j, cell.m * K + k, v);
      }
    }
  }
  res.eta_hat.normalize();
  return res;
}

Eigen::MatrixXcd reconstruct_rect(const cvec& output, const WeightVector& c,
                                  const LatticeParams& params) {
  params.validate();
  if (params.P != 1) throw DomainError("reconstruct_rect: requires P = 1");
  if (c.period() != 1) throw DimensionMismatch("reconstruct_rect: weight period must be 1");
  const std::int64_t n = params.N();
  if (static_cast<std::int64_t>(output.size()) != n)
    throw DimensionMismatch("reconstruct_rect: output length must be N");
  const int R = params.R;
  const int K = params.K;
  const cplx w = c.entries[0];
  if (std::abs(w) == 0.0) throw DomainError("reconstruct_rect: zero weight");

  // eta[tau, mu] = (1/(K c0)) sum_s output[tau + s R] e^{-2 pi i mu s / K}
  Eigen::MatrixXcd eta(R, K);
  for (int tau = 0; tau < R; ++tau) {
    for (int mu = 0; mu < K; ++mu) {
      cplx acc{0.0, 0.0};
      for (int s = 0; s < K; ++s)
        acc += output[static_cast<std::size_t>(tau + static_cast<std::int64_t>(s) * R)] *
               unit_root(-static_cast<std::int64_t>(mu) * s, K);
      eta(tau, mu) = acc / (static_cast<double>(K) * w);
    }
  }

  // h[x, tau] = sum_mu eta[tau, mu] e^{2 pi i mu (x - tau)/N}
  Eigen::MatrixXcd band = Eigen::MatrixXcd::Zero(n, R);
  for (int tau = 0; tau < R; ++tau) {
    for (int mu = 0; mu < K; ++mu) {
      const cplx v = eta(tau, mu);
      if (v == cplx{0.0, 0.0}) continue;
      std::int64_t idx = pos_mod(-static_cast<std::int64_t>(mu) * tau, n);
      for (std::int64_t x = 0; x < n; ++x) {
        band(x, tau) += v * unit_root(idx, n);
        idx += mu;
        if (idx >= n) idx -= n;
      }
    }
  }
  return band;
}

double rect_output_symbol_ratio(const DiscreteChannel& H, const WeightVector& c) {
  const LatticeParams& p = H.params();
  if (p.P != 1) throw DomainError("rect_output_symbol_ratio: requires P = 1");
  const cvec out = sound(H, c);
  const double out_norm =
      std::sqrt(p.delta() * kernels::cnrm2sq(out.data(), out.size()));
  const Eigen::MatrixXcd sigma = to_kn_symbol(H);
  const double sym_norm = std::sqrt(sigma.squaredNorm() / static_cast<double>(p.N()));
  if (sym_norm == 0.0) throw DomainError("rect_output_symbol_ratio: zero channel");
  return out_norm / sym_norm;
}

WindowPair WindowPair::rect(const LatticeParams& params) {
  WindowPair wp;
  wp.r.assign(static_cast<std::size_t>(params.N()), cplx{0.0, 0.0});
  wp.phi_hat.assign(static_cast<std::size_t>(params.N()), cplx{0.0, 0.0});
  for (int t = 0; t < params.R; ++t) wp.r[static_cast<std::size_t>(t)] = cplx{1.0, 0.0};
  for (int m = 0; m < params.K; ++m) wp.phi_hat[static_cast<std::size_t>(m)] = cplx{1.0, 0.0};
  return wp;
}

Eigen::MatrixXcd reconstruct_general(const IdentSystem& sys, const WindowPair& windows,
                                     double cond_threshold) {
  const LatticeParams& p = sys.params;
  const std::int64_t n = p.N();
  if (static_cast<std::int64_t>(windows.r.size()) != n ||
      static_cast<std::int64_t>(windows.phi_hat.size()) != n)
    throw DimensionMismatch("reconstruct_general: windows must have length N");

  // partition-of-unity checks: r over T-shifts, phi_hat over Omega-shifts
  const std::int64_t pk = static_cast<std::int64_t>(p.P) * p.K;
  for (std::int64_t tau = 0; tau < p.R; ++tau) {
    cplx s{0.0, 0.0};
    for (std::int64_t k = 0; k < pk; ++k)
      s += windows.r[static_cast<std::size_t>(pos_mod(tau + k * p.R, n))];
    if (std::abs(s - cplx{1.0, 0.0}) > 1e-10)
      throw WindowInvalid("reconstruct_general: r does not partition unity over T-shifts");
  }
  const std::int64_t doppler_shifts = n / p.K;
  for (std::int64_t mu = 0; mu < p.K; ++mu) {
    cplx s{0.0, 0.0};
    for (std::int64_t v = 0; v < doppler_shifts; ++v)
      s += windows.phi_hat[static_cast<std::size_t>(pos_mod(mu + v * p.K, n))];
    if (std::abs(s - cplx{1.0, 0.0}) > 1e-10)
      throw WindowInvalid("reconstruct_general: phi_hat does not partition unity over Omega-shifts");
  }

  // coefficient rows: pseudoinverse of the restricted Gabor matrix applied to
  // the Zak vectors, then phase unwinding (as in solve_known_support)
  const IdentResult res = solve_known_support(sys, cond_threshold);

  // window-weighted synthesis of the impulse response
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  const cvec tw = [&] {
    cvec t(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = unit_root(i, n);
    return t;
  }();
  for (const SpreadingGrid::Entry& e : res.eta_hat.entries) {
    const Cell cell = res.eta_hat.cell_of(e.tau, e.mu);
    // r localizes the delay variable to the cell's T-interval, phi_hat the
    // Doppler variable to the cell's Omega-band
    const cplx rw = windows.r[static_cast<std::size_t>(
        pos_mod(e.tau - static_cast<std::int64_t>(cell.q) * p.R, n))];
    const cplx pw = windows.phi_hat[static_cast<std::size_t>(
        pos_mod(e.mu - static_cast<std::int64_t>(cell.m) * p.K, n))];
    const cplx v = e.value * rw * pw;
    if (v == cplx{0.0, 0.0}) continue;
    std::int64_t idx = pos_mod(-static_cast<std::int64_t>(e.mu) * e.tau, n);
    for (std::int64_t x = 0; x < n; ++x) {
      h(x, e.tau) += v * tw[static_cast<std::size_t>(idx)];
      idx += e.mu;
      if (idx >= n) idx -= n;
    }
  }
  return h;
}

cvec probe_finite(const cvec& eta, const WeightVector& c) {
  const int P = c.period();
  if (static_cast<int>(eta.size()) != P * P)
    throw DimensionMismatch("probe_finite: eta must have length P^2");
  cvec out(static_cast<std::size_t>(P), cplx{0.0, 0.0});
  for (int q = 0; q < P; ++q) {
    for (int m = 0; m < P; ++m) {
      const cplx v = eta[static_cast<std::size_t>(q * P + m)];
      if (v == cplx{0.0, 0.0}) continue;
      const cvec col = translate(modulate(c.entries, m), q);
      kernels::caxpy(v, col.data(), out.data(), out.size());
    }
  }
  return out;
}

cvec identify_finite(const cvec& Z, const WeightVector& c, const std::vector<Cell>& support,
                     double cond_threshold) {
  const int P = c.period();
  if (static_cast<int>(Z.size()) != P)
    throw DimensionMismatch("identify_finite: Z must have length P");
  if (static_cast<int>(support.size()) > P)
    throw TooManyCells("identify_finite: support larger than P");
  cvec eta(static_cast<std::size_t>(P) * P, cplx{0.0, 0.0});
  if (support.empty()) return eta;

  Eigen::MatrixXcd a(P, static_cast<int>(support.size()));
  for (int i = 0; i < static_cast<int>(support.size()); ++i) {
    const Cell& cell = support[i];
    if (cell.q < 0 || cell.q >= P || cell.m < 0 || cell.m >= P)
      throw DomainError("identify_finite: support cell out of range");
    const cvec col = translate(modulate(c.entries, cell.m), cell.q);
    for (int r = 0; r < P; ++r) a(r, i) = col[static_cast<std::size_t>(r)];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smin = svd.singularValues().minCoeff();
  const double smax = svd.singularValues().maxCoeff();
  const double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
  if (!(cond < cond_threshold))
    throw IllConditioned("identify_finite: condition number " + std::to_string(cond));

  Eigen::VectorXcd rhs(P);
  for (int i = 0; i < P; ++i) rhs(i) = Z[static_cast<std::size_t>(i)];
  const Eigen::VectorXcd x = svd.solve(rhs);
  for (int i = 0; i < static_cast<int>(support.size()); ++i)
    eta[static_cast<std::size_t>(support[i].q * P + support[i].m)] = x(i);
  return eta;
}

NecessityReport necessity_demo(int P, int extra, std::uint64_t seed) {
  if (P < 1 || extra < 1) throw DomainError("necessity_demo: P and extra must be >= 1");
  const WeightVector c = gaussian_window(P, seed);
  const GaborMatrix G = gabor_matrix(c);
  const int cols = P + extra;
  Eigen::MatrixXcd g(P, cols);
  for (int i = 0; i < cols; ++i) g.col(i) = G.mat.col(i);

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(g, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double tol = 1e-12 * sv.maxCoeff() * std::max(P, cols);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;

  NecessityReport rep;
  rep.P = P;
  rep.extra = extra;
  rep.rank = rank;
  rep.null_dim = cols - rank;
  rep.singular_values.assign(sv.data(), sv.data() + sv.size());
  double worst = 0.0;
  for (int i = rank; i < cols; ++i) {
    const Eigen::VectorXcd v = svd.matrixV().col(i);  // unit norm
    worst = std::max(worst, (g * v).norm());
  }
  rep.max_residual = worst;
  return rep;
}

double relative_error(const SpreadingGrid& a, const SpreadingGrid& b) {
  std::map<std::pair<int, int>, cplx> diff;
  for (const SpreadingGrid::Entry& e : a.entries) diff[{e.tau, e.mu}] += e.value;
  for (const SpreadingGrid::Entry& e : b.entries) diff[{e.tau, e.mu}] -= e.value;
  double num = 0.0;
  for (const auto& [k, v] : diff) num += std::norm(v);
  const double den = b.norm_sq();
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

}  // namespace opsampl
