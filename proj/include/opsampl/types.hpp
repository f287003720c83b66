#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace opsampl {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Error taxonomy. Every throwing operation names one of these.
// ---------------------------------------------------------------------------
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct SizeLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotRectifiable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IllConditioned : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TooManyCells : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotCoprime : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NoConsistentSupport : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AmbiguousSupport : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WindowInvalid : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct UnsupportedDimension : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConfigInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FileNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// e^{2 pi i num/den}. The exponent is reduced mod den before the trig call so
// large indices (e.g. products of lattice indices) do not lose precision.
cplx unit_root(std::int64_t num, std::int64_t den);

// Positive remainder, works for negative a.
inline std::int64_t pos_mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// ---------------------------------------------------------------------------
// Period-P weight sequence (the window of the finite Gabor system).
// ---------------------------------------------------------------------------
struct WeightVector {
  cvec entries;

  WeightVector() = default;
  explicit WeightVector(cvec e) : entries(std::move(e)) {
    if (entries.empty()) throw DomainError("WeightVector: period must be >= 1");
  }

  int period() const { return static_cast<int>(entries.size()); }

  // c_n with n taken mod P
  cplx at(std::int64_t n) const {
    return entries[static_cast<std::size_t>(pos_mod(n, period()))];
  }

  double norm_sq() const {
    double s = 0.0;
    for (const cplx& v : entries) s += std::norm(v);
    return s;
  }
};

// ---------------------------------------------------------------------------
// Cyclic time-lattice geometry.
//
// The delay period splits into P cells of width T, each sampled R times
// (sample spacing delta = T/R).  A cell is Omega = 1/(T P) tall in Doppler
// and covers K frequency bins (bin spacing Omega/K).  Total lattice size
// N = P*R*K; signal duration K*P*T; Zak period L = P*R samples.
// ---------------------------------------------------------------------------
struct LatticeParams {
  int P = 1;
  int R = 1;
  int K = 1;
  double T = 1.0;

  std::int64_t N() const {
    return static_cast<std::int64_t>(P) * R * K;
  }
  std::int64_t L() const { return static_cast<std::int64_t>(P) * R; }
  int M() const { return K; }
  double delta() const { return T / R; }
  double omega() const { return 1.0 / (T * P); }
  double duration() const { return K * P * T; }

  void validate() const {
    if (P < 1 || R < 1 || K < 1) throw DomainError("LatticeParams: P, R, K must be >= 1");
    if (!(T > 0.0)) throw DomainError("LatticeParams: T must be positive");
  }

  bool operator==(const LatticeParams&) const = default;
};

// One T x Omega cell in the (delay, Doppler) plane.
struct Cell {
  int q = 0;
  int m = 0;
  auto operator<=>(const Cell&) const = default;
};

// A union of grid cells plus the lattice it lives on.  doppler_shift records
// the re-centering applied before cell indexing (in Doppler units).
struct SupportSet {
  LatticeParams params;
  std::vector<Cell> cells;
  double doppler_shift = 0.0;

  double area() const {
    return static_cast<double>(cells.size()) * params.T * params.omega();
  }

  bool contains(const Cell& c) const {
    return std::binary_search(cells.begin(), cells.end(), c);
  }

  // sort + dedupe + range-check
  void normalize() {
    for (const Cell& c : cells) {
      if (c.q < 0 || c.q >= params.P || c.m < 0 || c.m >= params.P)
        throw DomainError("SupportSet: cell index out of [0,P)^2");
    }
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  }
};

// ---------------------------------------------------------------------------
// Sparse spreading function on the fine lattice: eta[tau, mu] with
// tau, mu in [0, N).  Cell (q, m) owns tau in [qR, (q+1)R), mu in [mK, (m+1)K).
// ---------------------------------------------------------------------------
struct SpreadingGrid {
  LatticeParams params;

  struct Entry {
    int tau = 0;
    int mu = 0;
    cplx value;
  };
  std::vector<Entry> entries;

  void add(int tau, int mu, cplx v) { entries.push_back({tau, mu, v}); }

  // sort by (tau, mu), merge duplicates, drop exact zeros, range-check
  void normalize();

  double norm_sq() const {
    double s = 0.0;
    for (const Entry& e : entries) s += std::norm(e.value);
    return s;
  }

  // delay/Doppler cell of a fine-lattice point, valid inside the fundamental
  // domain tau in [0, L), mu in [0, P*K)
  Cell cell_of(int tau, int mu) const {
    return Cell{tau / params.R, mu / params.K};
  }
};

struct DiscreteChannel {
  SpreadingGrid spreading;
  const LatticeParams& params() const { return spreading.params; }
};

}  // namespace opsampl
