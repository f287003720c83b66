#include "opsampl/sparse_id.hpp"

#include <cmath>
#include <random>

#include "opsampl/kernels.hpp"

namespace opsampl {

WeightVector steinhaus_window(int P, std::uint64_t seed) {
  if (P < 1) throw DomainError("steinhaus_window: P must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  cvec e(P);
  for (cplx& v : e) v = std::polar(1.0, 2.0 * kPi * uni(rng));
  return WeightVector(std::move(e));
}

namespace {

bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[i] < n - k + i) {
      ++comb[i];
      for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

Eigen::MatrixXcd columns_of(const GaborMatrix& G, const std::vector<int>& support) {
  Eigen::MatrixXcd a(G.P, static_cast<int>(support.size()));
  for (int i = 0; i < static_cast<int>(support.size()); ++i) a.col(i) = G.mat.col(support[i]);
  return a;
}

cvec scatter(const Eigen::VectorXcd& x, const std::vector<int>& support, int ncols) {
  cvec eta(static_cast<std::size_t>(ncols), cplx{0.0, 0.0});
  for (int i = 0; i < static_cast<int>(support.size()); ++i)
    eta[static_cast<std::size_t>(support[i])] = x(i);
  return eta;
}

double rel_diff(const cvec& a, const cvec& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

cvec solve_exhaustive(const cvec& Z, const GaborMatrix& G, const SparseSolveConfig& cfg) {
  const int P = G.P;
  const int ncols = P * P;
  Eigen::VectorXcd rhs(P);
  for (int i = 0; i < P; ++i) rhs(i) = Z[static_cast<std::size_t>(i)];
  const double z_norm = rhs.norm();
  if (z_norm == 0.0) return cvec(static_cast<std::size_t>(ncols), cplx{0.0, 0.0});

  bool have_solution = false;
  cvec first;
  for (int s = 1; s <= cfg.max_sparsity; ++s) {
    std::vector<int> comb(s);
    for (int i = 0; i < s; ++i) comb[i] = i;
    do {
      const Eigen::MatrixXcd a = columns_of(G, comb);
      const Eigen::VectorXcd x = a.colPivHouseholderQr().solve(rhs);
      const double rel = (a * x - rhs).norm() / z_norm;
      if (rel < cfg.tolerance) {
        cvec eta = scatter(x, comb, ncols);
        if (!have_solution) {
          first = std::move(eta);
          have_solution = true;
        } else if (rel_diff(eta, first) > 10.0 * cfg.tolerance) {
          throw AmbiguousSupport("solve_sparse: two consistent supports with distinct solutions");
        }
      }
    } while (next_combination(comb, ncols));
  }
  if (!have_solution)
    throw NoConsistentSupport("solve_sparse: no support of size <= " +
                              std::to_string(cfg.max_sparsity) + " is consistent");
  return first;
}

cvec solve_greedy(const cvec& Z, const GaborMatrix& G, const SparseSolveConfig& cfg) {
  const int P = G.P;
  const int ncols = P * P;
  Eigen::VectorXcd rhs(P);
  for (int i = 0; i < P; ++i) rhs(i) = Z[static_cast<std::size_t>(i)];
  const double z_norm = rhs.norm();
  if (z_norm == 0.0) return cvec(static_cast<std::size_t>(ncols), cplx{0.0, 0.0});

  std::vector<double> col_norm(ncols);
  for (int i = 0; i < ncols; ++i) col_norm[i] = G.mat.col(i).norm();

  std::vector<int> support;
  std::vector<bool> picked(ncols, false);
  Eigen::VectorXcd residual = rhs;
  Eigen::VectorXcd x;
  for (int step = 0; step < cfg.max_sparsity; ++step) {
    if (residual.norm() / z_norm < cfg.tolerance) break;
    int best = -1;
    double best_corr = -1.0;
    for (int i = 0; i < ncols; ++i) {
      if (picked[i] || col_norm[i] == 0.0) continue;
      const double corr =
          std::abs(kernels::cdotc(G.mat.col(i).data(), residual.data(),
                                  static_cast<std::size_t>(P))) /
          col_norm[i];
      if (corr > best_corr) {  // strict: ties keep the lowest index
        best_corr = corr;
        best = i;
      }
    }
    if (best < 0) break;
    picked[best] = true;
    support.push_back(best);
    std::sort(support.begin(), support.end());
    const Eigen::MatrixXcd a = columns_of(G, support);
    x = a.colPivHouseholderQr().solve(rhs);
    residual = rhs - a * x;
  }
  if (support.empty()) return cvec(static_cast<std::size_t>(ncols), cplx{0.0, 0.0});
  return scatter(x, support, ncols);
}

}  // namespace

cvec solve_sparse(const cvec& Z, const GaborMatrix& G, const SparseSolveConfig& cfg) {
  if (static_cast<int>(Z.size()) != G.P)
    throw DimensionMismatch("solve_sparse: Z must have length P");
  if (cfg.max_sparsity < 1) throw DomainError("solve_sparse: max_sparsity must be >= 1");
  if (cfg.method == SparseSolveConfig::Method::Exhaustive) return solve_exhaustive(Z, G, cfg);
  return solve_greedy(Z, G, cfg);
}

JointResult solve_joint(const Eigen::MatrixXcd& zs, const GaborMatrix& G,
                        const SparseSolveConfig& cfg) {
  const int P = G.P;
  const int ncols = P * P;
  if (zs.rows() != P) throw DimensionMismatch("solve_joint: zs must have P rows");
  if (cfg.max_sparsity < 1) throw DomainError("solve_joint: max_sparsity must be >= 1");

  JointResult res;
  const double total_norm = zs.norm();
  if (total_norm == 0.0) {
    res.coeffs.resize(0, zs.cols());
    return res;
  }

  for (int s = 1; s <= cfg.max_sparsity; ++s) {
    std::vector<int> comb(s);
    for (int i = 0; i < s; ++i) comb[i] = i;
    do {
      const Eigen::MatrixXcd a = columns_of(G, comb);
      const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(a);
      const Eigen::MatrixXcd x = qr.solve(zs);
      const double rel = (a * x - zs).norm() / total_norm;
      if (rel < cfg.tolerance) {
        res.support = comb;
        res.coeffs = x;
        return res;
      }
    } while (next_combination(comb, ncols));
  }
  throw NoConsistentSupport("solve_joint: no shared support of size <= " +
                            std::to_string(cfg.max_sparsity) + " is consistent");
}

}  // namespace opsampl
