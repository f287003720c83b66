#include "opsampl/tf_model.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "opsampl/kernels.hpp"

namespace opsampl {

namespace {

// full table of N-th roots, tw[k] = e^{2 pi i k / N}
cvec root_table(std::int64_t n) {
  cvec tw(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) tw[static_cast<std::size_t>(k)] = unit_root(k, n);
  return tw;
}

void check_dense_budget(const LatticeParams& p) {
  if (p.N() > kDenseLimit)
    throw SizeLimitExceeded("dense conversion: N exceeds limit " + std::to_string(kDenseLimit));
}

}  // namespace

cvec apply(const DiscreteChannel& H, const cvec& f) {
  const LatticeParams& p = H.params();
  p.validate();
  const std::int64_t n = p.N();
  if (static_cast<std::int64_t>(f.size()) != n)
    throw DimensionMismatch("apply: signal length must be N");

  cvec out(static_cast<std::size_t>(n), cplx{0.0, 0.0});
  if (H.spreading.entries.empty()) return out;

  const cvec tw = root_table(n);

  // group entries by mu so the twiddled product f[s] * e^{2 pi i mu s / N}
  // is formed once per distinct Doppler index
  std::map<int, std::vector<const SpreadingGrid::Entry*>> by_mu;
  for (const SpreadingGrid::Entry& e : H.spreading.entries) {
    if (e.tau < 0 || e.tau >= n || e.mu < 0 || e.mu >= n)
      throw DomainError("apply: spreading entry outside [0,N)^2");
    by_mu[e.mu].push_back(&e);
  }

  cvec twiddled(static_cast<std::size_t>(n));
  cvec prod(static_cast<std::size_t>(n));
  for (const auto& [mu, group] : by_mu) {
    std::int64_t idx = 0;
    for (std::int64_t s = 0; s < n; ++s) {
      twiddled[static_cast<std::size_t>(s)] = tw[static_cast<std::size_t>(idx)];
      idx += mu;
      if (idx >= n) idx -= n;
    }
    std::fill(prod.begin(), prod.end(), cplx{0.0, 0.0});
    kernels::cmuladd(prod.data(), f.data(), twiddled.data(), cplx{1.0, 0.0},
                     static_cast<std::size_t>(n));
    // out[(s + tau) mod N] += value * prod[s], split at the wrap point
    for (const SpreadingGrid::Entry* e : group) {
      const std::int64_t tau = e->tau;
      kernels::caxpy(e->value, prod.data(), out.data() + tau, static_cast<std::size_t>(n - tau));
      kernels::caxpy(e->value, prod.data() + (n - tau), out.data(), static_cast<std::size_t>(tau));
    }
  }
  return out;
}

Eigen::MatrixXcd to_kernel(const DiscreteChannel& H) {
  const LatticeParams& p = H.params();
  p.validate();
  check_dense_budget(p);
  const std::int64_t n = p.N();
  const cvec tw = root_table(n);
  Eigen::MatrixXcd kappa = Eigen::MatrixXcd::Zero(n, n);
  for (const SpreadingGrid::Entry& e : H.spreading.entries) {
    std::int64_t idx = 0;
    for (std::int64_t s = 0; s < n; ++s) {
      kappa(pos_mod(s + e.tau, n), s) += e.value * tw[static_cast<std::size_t>(idx)];
      idx += e.mu;
      if (idx >= n) idx -= n;
    }
  }
  return kappa;
}

Eigen::MatrixXcd to_impulse_response(const DiscreteChannel& H) {
  const LatticeParams& p = H.params();
  p.validate();
  check_dense_budget(p);
  const std::int64_t n = p.N();
  const cvec tw = root_table(n);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (const SpreadingGrid::Entry& e : H.spreading.entries) {
    // h[j, tau] += v * omega^{mu (j - tau)}
    std::int64_t idx = pos_mod(-static_cast<std::int64_t>(e.mu) * e.tau, n);
    for (std::int64_t j = 0; j < n; ++j) {
      h(j, e.tau) += e.value * tw[static_cast<std::size_t>(idx)];
      idx += e.mu;
      if (idx >= n) idx -= n;
    }
  }
  return h;
}

Eigen::MatrixXcd kernel_from_impulse_response(const Eigen::MatrixXcd& h) {
  const std::int64_t n = h.rows();
  Eigen::MatrixXcd kappa(n, n);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t s = 0; s < n; ++s) kappa(j, s) = h(j, pos_mod(j - s, n));
  return kappa;
}

Eigen::MatrixXcd impulse_response_from_kernel(const Eigen::MatrixXcd& kappa) {
  const std::int64_t n = kappa.rows();
  Eigen::MatrixXcd h(n, n);
  for (std::int64_t j = 0; j < n; ++j)
    for (std::int64_t t = 0; t < n; ++t) h(j, t) = kappa(j, pos_mod(j - t, n));
  return h;
}

Eigen::MatrixXcd to_kn_symbol(const DiscreteChannel& H) {
  const LatticeParams& p = H.params();
  const Eigen::MatrixXcd h = to_impulse_response(H);
  const std::int64_t n = p.N();
  Eigen::MatrixXcd f(n, n);
  for (std::int64_t t = 0; t < n; ++t)
    for (std::int64_t xi = 0; xi < n; ++xi) f(t, xi) = unit_root(-t * xi, n);
  return p.delta() * (h * f);
}

Eigen::MatrixXcd impulse_response_from_kn_symbol(const Eigen::MatrixXcd& sigma,
                                                 const LatticeParams& params) {
  const std::int64_t n = params.N();
  if (sigma.rows() != n || sigma.cols() != n)
    throw DimensionMismatch("impulse_response_from_kn_symbol: sigma must be N x N");
  Eigen::MatrixXcd finv(n, n);
  for (std::int64_t xi = 0; xi < n; ++xi)
    for (std::int64_t t = 0; t < n; ++t) finv(xi, t) = unit_root(xi * t, n);
  return (sigma * finv) / (params.delta() * static_cast<double>(n));
}

SpreadingGrid spreading_from_impulse_response(const Eigen::MatrixXcd& h,
                                              const LatticeParams& params,
                                              double prune_tol) {
  const std::int64_t n = params.N();
  if (h.rows() != n || h.cols() != n)
    throw DimensionMismatch("spreading_from_impulse_response: h must be N x N");
  const cvec tw = root_table(n);
  SpreadingGrid eta;
  eta.params = params;
  const double scale = h.cwiseAbs().maxCoeff();
  const double cut = prune_tol * (scale > 0.0 ? scale : 1.0);
  for (std::int64_t tau = 0; tau < n; ++tau) {
    for (std::int64_t mu = 0; mu < n; ++mu) {
      // eta[tau, mu] = (1/N) sum_j h[j, tau] omega^{-mu (j - tau)}
      cplx acc{0.0, 0.0};
      std::int64_t idx = pos_mod(mu * tau, n);
      for (std::int64_t j = 0; j < n; ++j) {
        acc += h(j, tau) * tw[static_cast<std::size_t>(idx)];
        idx -= mu;
        if (idx < 0) idx += n;
      }
      acc /= static_cast<double>(n);
      if (std::abs(acc) > cut)
        eta.add(static_cast<int>(tau), static_cast<int>(mu), acc);
    }
  }
  eta.normalize();
  return eta;
}

double bandwidth(const SupportSet& S) {
  std::map<int, int> per_column;
  for (const Cell& c : S.cells) ++per_column[c.q];
  int max_count = 0;
  for (const auto& [q, count] : per_column) max_count = std::max(max_count, count);
  return max_count * S.params.omega();
}

cvec delta_train(const WeightVector& c, const LatticeParams& params) {
  params.validate();
  if (c.period() != params.P)
    throw DimensionMismatch("delta_train: weight period must equal params.P");
  cvec g(static_cast<std::size_t>(params.N()), cplx{0.0, 0.0});
  const std::int64_t pk = static_cast<std::int64_t>(params.P) * params.K;
  for (std::int64_t nn = 0; nn < pk; ++nn)
    g[static_cast<std::size_t>(nn * params.R)] = c.at(nn);
  return g;
}

DiscreteChannel random_channel(const SupportSet& S, std::uint64_t seed) {
  S.params.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DiscreteChannel H;
  H.spreading.params = S.params;
  for (const Cell& c : S.cells) {
    for (int dt = 0; dt < S.params.R; ++dt) {
      for (int dm = 0; dm < S.params.K; ++dm) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        H.spreading.add(c.q * S.params.R + dt, c.m * S.params.K + dm, cplx{re, im});
      }
    }
  }
  H.spreading.normalize();
  return H;
}

// ---------------------------------------------------------------------------
// Rectification
// ---------------------------------------------------------------------------
namespace {

constexpr double kGeomTol = 1e-9;

double union_area(const std::vector<RectRegion>& region) {
  std::vector<double> breaks;
  for (const RectRegion& r : region) {
    breaks.push_back(r.t0);
    breaks.push_back(r.t1);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    std::vector<std::pair<double, double>> spans;
    for (const RectRegion& r : region)
      if (r.t0 <= mid && mid < r.t1) spans.emplace_back(r.nu0, r.nu1);
    std::sort(spans.begin(), spans.end());
    double covered = 0.0, hi = -1e300;
    for (const auto& [a, b] : spans) {
      const double lo = std::max(a, hi);
      if (b > lo) covered += b - lo;
      hi = std::max(hi, b);
    }
    area += covered * (breaks[i + 1] - breaks[i]);
  }
  return area;
}

// cell set for one (T, P, shift) choice, or nullopt when it does not fit
std::optional<std::set<Cell>> cells_for(const std::vector<RectRegion>& region, double T, int P,
                                        double shift) {
  const double omega = 1.0 / (T * P);
  const double band = 1.0 / T;  // Doppler wraps modulo P * omega
  std::set<Cell> cells;
  for (const RectRegion& r : region) {
    if (r.t1 > P * T + kGeomTol) return std::nullopt;  // delay does not fit one period
    const int q_lo = static_cast<int>(std::floor(r.t0 / T + kGeomTol));
    const int q_hi = static_cast<int>(std::ceil(r.t1 / T - kGeomTol)) - 1;
    if (q_lo < 0 || q_hi >= P) return std::nullopt;

    double lo = r.nu0 + shift;
    double hi = r.nu1 + shift;
    if (hi - lo > band + kGeomTol) return std::nullopt;  // wider than the whole band
    // reduce lo into [0, band)
    const double wraps = std::floor(lo / band);
    lo -= wraps * band;
    hi -= wraps * band;
    std::vector<std::pair<double, double>> spans;
    if (hi <= band + kGeomTol)
      spans.emplace_back(lo, std::min(hi, band));
    else {
      spans.emplace_back(lo, band);
      spans.emplace_back(0.0, hi - band);
    }
    for (const auto& [a, b] : spans) {
      if (b - a < kGeomTol) continue;
      const int m_lo = static_cast<int>(std::floor(a / omega + kGeomTol));
      const int m_hi = static_cast<int>(std::ceil(b / omega - kGeomTol)) - 1;
      for (int m = m_lo; m <= m_hi; ++m) {
        const int mm = static_cast<int>(pos_mod(m, P));
        for (int q = q_lo; q <= q_hi; ++q) cells.insert(Cell{q, mm});
      }
    }
  }
  return cells;
}

}  // namespace

SupportSet rectify(const std::vector<RectRegion>& region, const RectifyOptions& opt) {
  if (region.empty()) throw DomainError("rectify: empty region");
  for (const RectRegion& r : region) {
    if (r.t0 < 0.0) throw DomainError("rectify: region must lie in [0,inf) x R");
    if (!(r.t1 > r.t0) || !(r.nu1 > r.nu0)) throw DomainError("rectify: degenerate rectangle");
  }
  if (opt.budget < 1) throw DomainError("rectify: budget must be >= 1");

  const double area = union_area(region);
  if (area > 1.0 + 1e-12)
    throw NotRectifiable("rectify: region area " + std::to_string(area) + " exceeds 1");

  std::vector<double> t_cands = opt.t_candidates;
  if (t_cands.empty()) {
    for (const RectRegion& r : region) {
      for (double b : {r.t0, r.t1}) {
        if (b <= kGeomTol) continue;
        for (int j = 1; j <= opt.budget; ++j) t_cands.push_back(b / j);
      }
    }
  }
  std::sort(t_cands.begin(), t_cands.end());
  t_cands.erase(std::unique(t_cands.begin(), t_cands.end(),
                            [](double a, double b) { return std::abs(a - b) < kGeomTol; }),
                t_cands.end());

  struct Best {
    std::size_t ncells;
    int P;
    double T, shift;
    std::set<Cell> cells;
  };
  std::optional<Best> best;

  for (double T : t_cands) {
    for (int P = 1; P <= opt.budget; ++P) {
      const double omega = 1.0 / (T * P);
      // shifts only matter modulo omega for the cell count; candidates align
      // each rectangle's lower Doppler edge plus a uniform subdivision
      std::vector<double> shifts;
      for (const RectRegion& r : region) shifts.push_back(std::fmod(-r.nu0, omega));
      for (int gsub = 0; gsub < opt.shift_subdivisions; ++gsub)
        shifts.push_back(omega * gsub / opt.shift_subdivisions);
      for (double& s : shifts)
        if (s < 0.0) s += omega;

      for (double s : shifts) {
        auto cells = cells_for(region, T, P, s);
        if (!cells || cells->size() > static_cast<std::size_t>(P)) continue;
        const bool better =
            !best || cells->size() < best->ncells ||
            (cells->size() == best->ncells &&
             (P < best->P || (P == best->P && T < best->T - kGeomTol)));
        if (better) best = Best{cells->size(), P, T, s, std::move(*cells)};
      }
    }
  }

  if (!best)
    throw NotRectifiable("rectify: no (T,P) within budget covers the region with at most P cells");

  SupportSet out;
  out.params = LatticeParams{best->P, 1, 1, best->T};
  out.doppler_shift = best->shift;
  out.cells.assign(best->cells.begin(), best->cells.end());
  out.normalize();
  return out;
}

}  // namespace opsampl
