#pragma once

#include <Eigen/Dense>

#include "opsampl/types.hpp"

namespace opsampl {

// Two-axis lattice; signals are stored x0-fastest: f[x0 + x1*N0].
struct Lattice2D {
  LatticeParams axis0, axis1;
  std::int64_t N() const { return axis0.N() * axis1.N(); }
  void validate() const {
    axis0.validate();
    axis1.validate();
  }
};

// P0 x P1 weight grid, entries[n0 + n1*P0].
struct Weight2D {
  int P0 = 1, P1 = 1;
  cvec entries;
  cplx at(std::int64_t n0, std::int64_t n1) const {
    return entries[static_cast<std::size_t>(pos_mod(n0, P0) + pos_mod(n1, P1) * P0)];
  }
};

// Flattening index of the Z_{P0} x Z_{P1} -> Z_{P0 P1} isomorphism used to
// lift a 1-D window onto the weight grid (requires gcd(P0, P1) = 1).
inline std::int64_t flatten_index_2d(int n0, int n1, int P0) { return n0 + static_cast<std::int64_t>(n1) * P0; }

Weight2D weights_from_flat(const WeightVector& flat, int P0, int P1);

struct Cell2D {
  int q0 = 0, q1 = 0, m0 = 0, m1 = 0;
  auto operator<=>(const Cell2D&) const = default;
};

struct SpreadingGrid2D {
  Lattice2D params;
  struct Entry {
    int tau0 = 0, tau1 = 0, mu0 = 0, mu1 = 0;
    cplx value;
  };
  std::vector<Entry> entries;
  double norm_sq() const {
    double s = 0.0;
    for (const Entry& e : entries) s += std::norm(e.value);
    return s;
  }
};

struct Channel2D {
  SpreadingGrid2D spreading;
  const Lattice2D& params() const { return spreading.params; }
};

cvec delta_train_2d(const Weight2D& c, const Lattice2D& params);
cvec apply_2d(const Channel2D& H, const cvec& f);
cvec sound_2d(const Channel2D& H, const Weight2D& c);

// Random channel on the fine-lattice points of the given 2-D cells.
Channel2D random_channel_2d(const Lattice2D& params, const std::vector<Cell2D>& cells,
                            std::uint64_t seed);

struct IdentResult2D {
  SpreadingGrid2D eta_hat;
  std::vector<double> residual;  // per grid point
  double cond = 0.0;
};

// Separable Zak system solved per 2-D grid point on the known support.
// Requires gcd(P0, P1) = 1 when the weight grid comes from a flattened 1-D
// window; the solver itself only needs |cells| <= P0*P1.
IdentResult2D identify_2d(const Channel2D& H, const Weight2D& c, const std::vector<Cell2D>& cells,
                          double cond_threshold = 1e8);

// Guard used by config-driven entry points: d = 1 and d = 2 are implemented,
// higher d is rejected, and the periods must be pairwise coprime.
void check_dimensions(const std::vector<int>& periods);

double relative_error_2d(const SpreadingGrid2D& a, const SpreadingGrid2D& b);

}  // namespace opsampl
