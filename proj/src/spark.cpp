#include "opsampl/spark.hpp"

#include <atomic>
#include <chrono>
#include <climits>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "opsampl/parallel.hpp"

namespace opsampl {

namespace {

// C(n, k) saturating at 2^63-1
std::uint64_t comb_count(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > static_cast<unsigned __int128>(INT64_MAX)) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

// lexicographic successor of a k-subset of [0, n)
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

// lexicographic unranking of a k-subset of [0, n)
std::vector<int> unrank_combination(int n, int k, std::uint64_t rank) {
  std::vector<int> comb;
  comb.reserve(k);
  int v = 0;
  for (int i = 0; i < k; ++i) {
    for (;; ++v) {
      const std::uint64_t below = comb_count(n - 1 - v, k - 1 - i);
      if (rank < below) break;
      rank -= below;
    }
    comb.push_back(v);
    ++v;
  }
  return comb;
}

// in-place LU determinant with partial pivoting, row-major p x p
cplx det_lu(cplx* a, int p) {
  cplx det{1.0, 0.0};
  for (int k = 0; k < p; ++k) {
    int piv = k;
    double best = std::norm(a[k * p + k]);
    for (int r = k + 1; r < p; ++r) {
      const double v = std::norm(a[r * p + k]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return cplx{0.0, 0.0};
    if (piv != k) {
      for (int c = 0; c < p; ++c) std::swap(a[k * p + c], a[piv * p + c]);
      det = -det;
    }
    const cplx pv = a[k * p + k];
    det *= pv;
    for (int r = k + 1; r < p; ++r) {
      const cplx f = a[r * p + k] / pv;
      for (int c = k + 1; c < p; ++c) a[r * p + c] -= f * a[k * p + c];
    }
  }
  return det;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; static_cast<std::int64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

SparkCertificate spark(const GaborMatrix& G, const SparkOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const int p = G.P;
  if (p < 1) throw DomainError("spark: empty matrix");
  const int ncols = p * p;

  std::vector<double> colnorm(ncols);
  for (int i = 0; i < ncols; ++i) colnorm[i] = G.mat.col(i).norm();

  SparkCertificate cert;
  std::atomic<std::uint64_t> checked{0};

  // --- maximal minors: full-spark certification needs exactly these ---
  const std::uint64_t total_max = comb_count(ncols, p);
  const bool within_budget = total_max <= opt.subset_budget;

  std::atomic<bool> violation{false};
  std::vector<double> chunk_min;
  if (within_budget) {
    const unsigned workers = std::max(1u, worker_count());
    chunk_min.assign(workers, std::numeric_limits<double>::infinity());
    parallel_chunks(total_max, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
      std::vector<int> comb = unrank_combination(ncols, p, begin);
      std::vector<cplx> sub(static_cast<std::size_t>(p) * p);
      double local_min = std::numeric_limits<double>::infinity();
      std::uint64_t local_checked = 0;
      for (std::uint64_t r = begin; r < end; ++r, next_combination(comb, ncols)) {
        if (violation.load(std::memory_order_relaxed)) break;
        double scale = 1.0;
        for (int j = 0; j < p; ++j) {
          scale *= colnorm[comb[j]];
          for (int i = 0; i < p; ++i) sub[i * p + j] = G.mat(i, comb[j]);
        }
        ++local_checked;
        const double d = std::abs(det_lu(sub.data(), p));
        const double scaled = scale > 0.0 ? d / scale : 0.0;
        local_min = std::min(local_min, scaled);
        if (scaled <= opt.tolerance) {
          violation.store(true, std::memory_order_relaxed);
          break;
        }
      }
      if (w < chunk_min.size()) chunk_min[w] = local_min;
      checked.fetch_add(local_checked, std::memory_order_relaxed);
    });
    if (!violation.load()) {
      cert.spark = p + 1;
      cert.minors_checked = checked.load();
      cert.min_abs_minor = *std::min_element(chunk_min.begin(), chunk_min.end());
      cert.exhaustive = true;
      cert.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return cert;
    }
  } else {
    // randomized sweep: can certify NOT-full-spark or report no violation found
    if (opt.random_samples == 0)
      throw SizeLimitExceeded("spark: C(P^2,P) = " + std::to_string(total_max) +
                              " exceeds subset budget");
    std::mt19937_64 rng(opt.seed);
    std::vector<int> pool(ncols);
    std::vector<cplx> sub(static_cast<std::size_t>(p) * p);
    double min_seen = std::numeric_limits<double>::infinity();
    for (std::uint64_t s = 0; s < opt.random_samples && !violation; ++s) {
      for (int i = 0; i < ncols; ++i) pool[i] = i;
      for (int i = 0; i < p; ++i)
        std::swap(pool[i], pool[i + static_cast<int>(rng() % (ncols - i))]);
      std::vector<int> comb(pool.begin(), pool.begin() + p);
      std::sort(comb.begin(), comb.end());
      double scale = 1.0;
      for (int j = 0; j < p; ++j) {
        scale *= colnorm[comb[j]];
        for (int i = 0; i < p; ++i) sub[i * p + j] = G.mat(i, comb[j]);
      }
      ++checked;
      const double d = std::abs(det_lu(sub.data(), p));
      const double scaled = scale > 0.0 ? d / scale : 0.0;
      min_seen = std::min(min_seen, scaled);
      if (scaled <= opt.tolerance) {
        violation = true;
        cert.witness.assign(comb.begin(), comb.end());
      }
    }
    cert.exhaustive = false;
    cert.minors_checked = checked.load();
    cert.min_abs_minor = min_seen;
    cert.spark = violation ? p : p + 1;  // upper bound / no violation found
    if (violation) cert.witness.shrink_to_fit();
    cert.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return cert;
  }

  // --- some maximal minor vanished: locate a smallest dependent subset ---
  for (int s = 1; s <= p; ++s) {
    const std::uint64_t total_s = comb_count(ncols, s);
    struct Found {
      std::uint64_t rank = UINT64_MAX;
      std::vector<int> comb;
    };
    std::vector<Found> found(std::max(1u, worker_count()));
    parallel_chunks(total_s, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
      std::vector<int> comb = unrank_combination(ncols, s, begin);
      Eigen::MatrixXcd sub(p, s);
      std::vector<cplx> square(static_cast<std::size_t>(p) * p);
      std::uint64_t local_checked = 0;
      for (std::uint64_t r = begin; r < end; ++r, next_combination(comb, ncols)) {
        ++local_checked;
        bool dependent = false;
        if (s == p) {
          double scale = 1.0;
          for (int j = 0; j < s; ++j) {
            scale *= colnorm[comb[j]];
            for (int i = 0; i < p; ++i) square[i * p + j] = G.mat(i, comb[j]);
          }
          const double d = std::abs(det_lu(square.data(), p));
          dependent = (scale > 0.0 ? d / scale : 0.0) <= opt.tolerance;
        } else {
          for (int j = 0; j < s; ++j) sub.col(j) = G.mat.col(comb[j]);
          Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(sub);
          qr.setThreshold(opt.tolerance);
          dependent = qr.rank() < s;
        }
        if (dependent) {
          if (w < found.size()) found[w] = Found{r, comb};
          break;
        }
      }
      checked.fetch_add(local_checked, std::memory_order_relaxed);
    });
    const Found* best = nullptr;
    for (const Found& f : found)
      if (f.rank != UINT64_MAX && (best == nullptr || f.rank < best->rank)) best = &f;
    if (best != nullptr) {
      cert.spark = s;
      cert.witness = best->comb;
      cert.minors_checked = checked.load();
      cert.min_abs_minor = 0.0;
      cert.exhaustive = true;
      cert.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return cert;
    }
  }

  // unreachable when the maximal-minor sweep flagged a violation; kept as a
  // guard against tolerance disagreement between the det and QR criteria
  cert.spark = p;
  cert.minors_checked = checked.load();
  cert.exhaustive = true;
  cert.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return cert;
}

WeightVector corollary_window(int P) {
  if (P < 4) throw DomainError("corollary_window: requires P >= 4");
  if (P > 1000) throw SizeLimitExceeded("corollary_window: P too large");
  const std::int64_t order = static_cast<std::int64_t>(P - 1) * (P - 1) * (P - 1) * (P - 1);
  cvec e(P);
  for (std::int64_t j = 0; j < P; ++j) e[j] = unit_root(j * j, order);
  return WeightVector(std::move(e));
}

WeightVector truncated_window(int P, int k, std::uint64_t seed) {
  if (!is_prime(P)) throw DomainError("truncated_window: P must be prime");
  if (k <= 0 || k >= P) throw DomainError("truncated_window: need 0 < k < P");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  cvec e(P, cplx{0.0, 0.0});
  for (int j = 0; j < k; ++j) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    e[j] = cplx{re, im};
  }
  return WeightVector(std::move(e));
}

bool chebotarev_check(int P, double tolerance, std::uint64_t minor_budget) {
  if (!is_prime(P)) throw DomainError("chebotarev_check: P must be prime");
  std::uint64_t total = 0;
  for (int s = 1; s <= P; ++s) {
    const std::uint64_t c = comb_count(P, s);
    total += c * c;
  }
  if (total > minor_budget)
    throw SizeLimitExceeded("chebotarev_check: minor count exceeds budget");

  Eigen::MatrixXcd w(P, P);
  for (int n = 0; n < P; ++n)
    for (int m = 0; m < P; ++m) w(n, m) = unit_root(static_cast<std::int64_t>(n) * m, P);

  std::vector<cplx> sub;
  for (int s = 1; s <= P; ++s) {
    std::vector<int> rows(s), cols(s);
    for (int i = 0; i < s; ++i) rows[i] = i;
    const double scale = std::pow(std::sqrt(static_cast<double>(s)), s);
    do {
      for (int i = 0; i < s; ++i) cols[i] = i;
      do {
        sub.assign(static_cast<std::size_t>(s) * s, cplx{});
        for (int i = 0; i < s; ++i)
          for (int j = 0; j < s; ++j) sub[i * s + j] = w(rows[i], cols[j]);
        if (std::abs(det_lu(sub.data(), s)) / scale <= tolerance) return false;
      } while (next_combination(cols, P));
    } while (next_combination(rows, P));
  }
  return true;
}

// ---------------------------------------------------------------------------
// Symbolic minors
// ---------------------------------------------------------------------------
namespace {

int permutation_sign(const std::vector<int>& perm) {
  int sign = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

// enumerate ordered partitions of {0..P-1} into blocks of sizes part[kappa]
void enumerate_partitions(const std::vector<int>& part, std::vector<std::vector<int>>& blocks,
                          std::vector<bool>& used, std::size_t kappa,
                          const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
  if (kappa == part.size()) {
    emit(blocks);
    return;
  }
  const int p = static_cast<int>(used.size());
  const int need = part[kappa];
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(pick.size()) == need) {
      blocks[kappa] = pick;
      for (int v : pick) used[v] = true;
      enumerate_partitions(part, blocks, used, kappa + 1, emit);
      for (int v : pick) used[v] = false;
      return;
    }
    for (int v = from; v < p; ++v) {
      if (used[v]) continue;
      pick.push_back(v);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

}  // namespace

SymbolicDeterminant symbolic_determinant(const std::vector<std::pair<int, int>>& columns, int P) {
  if (P < 1) throw DomainError("symbolic_determinant: P must be >= 1");
  if (P > 4) throw SizeLimitExceeded("symbolic_determinant: P > 4 not supported");
  if (static_cast<int>(columns.size()) != P)
    throw DimensionMismatch("symbolic_determinant: need exactly P columns");
  for (const auto& [q, m] : columns)
    if (q < 0 || q >= P || m < 0 || m >= P)
      throw DomainError("symbolic_determinant: column index out of range");

  SymbolicDeterminant sd;
  sd.P = P;
  sd.source_columns = columns;
  sd.partition_vector.assign(P, 0);
  for (const auto& [q, m] : columns) ++sd.partition_vector[q];

  // stable-sort columns by block; the induced permutation contributes a sign
  std::vector<int> order(P);
  for (int i = 0; i < P; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return columns[a].first < columns[b].first; });
  const int col_sign = permutation_sign(order);

  // modulation indices per block, in sorted-column order
  std::vector<std::vector<int>> block_mods(P);
  for (int i = 0; i < P; ++i)
    block_mods[columns[order[i]].first].push_back(columns[order[i]].second);

  std::vector<std::vector<int>> blocks(P);
  std::vector<bool> used(P, false);
  std::vector<cplx> sub;

  enumerate_partitions(sd.partition_vector, blocks, used, 0,
                       [&](const std::vector<std::vector<int>>& b) {
    // sign of the row arrangement: concatenated blocks as a permutation
    std::vector<int> concat;
    concat.reserve(P);
    for (const std::vector<int>& blk : b) concat.insert(concat.end(), blk.begin(), blk.end());
    const int row_sign = permutation_sign(concat);

    // product of Fourier minors, one per nonempty block
    cplx coeff{1.0, 0.0};
    for (int kappa = 0; kappa < P; ++kappa) {
      const std::vector<int>& rows = b[kappa];
      const std::vector<int>& mods = block_mods[kappa];
      const int s = static_cast<int>(rows.size());
      if (s == 0) continue;
      sub.assign(static_cast<std::size_t>(s) * s, cplx{});
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
          sub[i * s + j] = unit_root(static_cast<std::int64_t>(rows[i]) * mods[j], P);
      coeff *= det_lu(sub.data(), s);
    }
    coeff *= static_cast<double>(row_sign * col_sign);

    std::vector<int> expo(P, 0);
    for (int kappa = 0; kappa < P; ++kappa)
      for (int r : b[kappa]) ++expo[static_cast<std::size_t>(pos_mod(r - kappa, P))];

    auto& term = sd.monomials[expo];
    term.coeff += coeff;
    term.class_count += 1;
  });

  return sd;
}

cplx evaluate(const SymbolicDeterminant& sd, const cvec& c) {
  if (static_cast<int>(c.size()) != sd.P)
    throw DimensionMismatch("evaluate: window length must equal P");
  cplx acc{0.0, 0.0};
  for (const auto& [expo, term] : sd.monomials) {
    cplx m{1.0, 0.0};
    for (int i = 0; i < sd.P; ++i)
      for (int e = 0; e < expo[i]; ++e) m *= c[i];
    acc += term.coeff * m;
  }
  return acc;
}

std::vector<int> ci_exponent_vector(const std::vector<int>& partition, int P) {
  // cyclic renaming gamma minimizing sum_{i<gamma} l_i - gamma (smallest on ties)
  int best_gamma = 0;
  long best_val = LONG_MAX;
  long prefix = 0;
  for (int gamma = 0; gamma < P; ++gamma) {
    const long val = prefix - gamma;
    if (val < best_val) {
      best_val = val;
      best_gamma = gamma;
    }
    prefix += partition[gamma];
  }

  std::vector<int> shifted(P);
  for (int i = 0; i < P; ++i) shifted[i] = partition[(i + best_gamma) % P];

  // trivial partition intervals of the renamed sizes; exponent of renamed
  // variable c'_{j-kappa} maps back to original index (j-kappa+gamma) mod P
  std::vector<int> expo(P, 0);
  int offset = 0;
  for (int kappa = 0; kappa < P; ++kappa) {
    for (int j = offset; j < offset + shifted[kappa]; ++j)
      ++expo[static_cast<std::size_t>(pos_mod(j - kappa + best_gamma, P))];
    offset += shifted[kappa];
  }
  return expo;
}

bool ci_monomial_unique(const SymbolicDeterminant& sd, double tolerance) {
  if (sd.monomials.empty()) return false;
  const int P = sd.P;

  // recover gamma (same tie-break as ci_exponent_vector) for the Lambda check
  int gamma = 0;
  long best_val = LONG_MAX;
  long prefix = 0;
  for (int g = 0; g < P; ++g) {
    const long val = prefix - g;
    if (val < best_val) {
      best_val = val;
      gamma = g;
    }
    prefix += sd.partition_vector[g];
  }

  const std::vector<int> ci = ci_exponent_vector(sd.partition_vector, P);
  const auto it = sd.monomials.find(ci);
  if (it == sd.monomials.end()) return false;
  if (it->second.class_count != 1) return false;

  double max_coeff = 0.0;
  for (const auto& [expo, term] : sd.monomials)
    max_coeff = std::max(max_coeff, std::abs(term.coeff));
  if (max_coeff == 0.0) return false;
  if (std::abs(it->second.coeff) <= tolerance * max_coeff) return false;

  // Lambda(C) = sum_i i^2 alpha'_i in the renamed indexing; the CI monomial
  // must be the unique minimizer among the monomials present
  auto lambda_of = [&](const std::vector<int>& expo) {
    long v = 0;
    for (int i = 0; i < P; ++i)
      v += static_cast<long>(i) * i * expo[static_cast<std::size_t>((i + gamma) % P)];
    return v;
  };
  const long ci_lambda = lambda_of(ci);
  for (const auto& [expo, term] : sd.monomials) {
    if (expo == ci) continue;
    if (lambda_of(expo) <= ci_lambda) return false;
  }
  return true;
}

}  // namespace opsampl
