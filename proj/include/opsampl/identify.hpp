#pragma once

#include <Eigen/Dense>
#include <optional>

#include "opsampl/gabor.hpp"
#include "opsampl/tf_model.hpp"
#include "opsampl/types.hpp"
#include "opsampl/zak.hpp"

namespace opsampl {

// Per-grid-point P x P^2 system tying the Zak transform of the sounding
// output to the spreading function.  Conventions, fixed across the library
// and its serialized outputs (grid point (j,k), j in [0,R), k in [0,K)):
//
//   Zvec_p(j,k)      = e^{-2 pi i k p/(P K)} * Z[j + p R, k],   Z = zak(output)
//   etavec_(q,m)     = K * etaQ[j + q R, k + m K]
//                        * e^{-2 pi i k q/(P K)} * e^{-2 pi i q m / P}
//   Zvec = G(c) * etavec          (exact in the cyclic model)
//
// Grid points are stored column-major as gi = j + k*R.
struct IdentSystem {
  GaborMatrix G;
  LatticeParams params;
  SupportSet active_cells;   // may be empty (unknown-support workflows)
  Eigen::MatrixXcd zvec;     // P x (R*K)

  std::int64_t grid_count() const { return static_cast<std::int64_t>(params.R) * params.K; }
};

struct IdentResult {
  SpreadingGrid eta_hat;
  std::vector<double> residual;  // per grid point, relative
  double cond = 0.0;             // condition number of the restricted system
  std::optional<double> kernel_error;
};

// Response of the channel to the weighted delta train built from c.
cvec sound(const DiscreteChannel& H, const WeightVector& c);

IdentSystem assemble(const cvec& output, const WeightVector& c, const LatticeParams& params,
                     const SupportSet& active_cells);

// Least-squares solve per grid point restricted to the active columns, then
// phase unwinding onto the fine lattice.  Throws TooManyCells when
// |cells| > P and IllConditioned when cond exceeds the threshold.
IdentResult solve_known_support(const IdentSystem& sys, double cond_threshold = 1e8);

// Single-cell (P = 1) direct reconstruction: per delay residue the output
// samples across periods are a K-point DFT of the Doppler profile; Dirichlet
// interpolation then fills the full band h[x, tau], x in [0,N), tau in [0,R).
Eigen::MatrixXcd reconstruct_rect(const cvec& output, const WeightVector& c,
                                  const LatticeParams& params);

// sqrt(delta * sum |Hg|^2) / sqrt((1/N) * sum |sigma|^2).  Channel-independent
// for single-cell channels; equals T^{-1/2} exactly in the cyclic model.
double rect_output_symbol_ratio(const DiscreteChannel& H, const WeightVector& c);

// Window pair for the synthesis formula: r partitions unity over T-shifts of
// the delay axis, phi_hat over Omega-shifts of the Doppler axis.
struct WindowPair {
  cvec r;        // length N, delay axis
  cvec phi_hat;  // length N, Doppler axis
  static WindowPair rect(const LatticeParams& params);
};

// Synthesis of the impulse response from the per-grid-point solutions with
// coefficient rows taken from the pseudoinverse of the restricted Gabor
// matrix.  Exact for windows supported in a single cell (the rect default).
// Throws WindowInvalid when either partition-of-unity condition fails.
Eigen::MatrixXcd reconstruct_general(const IdentSystem& sys, const WindowPair& windows,
                                     double cond_threshold = 1e8);

// Finite matrix-probing model (no (t,nu) dependence):
//   probe:     Z = sum_{q,m} eta_{(q,m)} T^q M^m c          (eta indexed q*P+m)
//   identify:  least-squares inversion of the probe on a known support
cvec probe_finite(const cvec& eta, const WeightVector& c);
cvec identify_finite(const cvec& Z, const WeightVector& c, const std::vector<Cell>& support,
                     double cond_threshold = 1e8);

// Rank deficiency of the system restricted to more than P columns: with
// P + extra active columns the restricted matrix has nullity >= extra, so
// identification cannot distinguish channels differing by a nullspace vector.
struct NecessityReport {
  int P = 0;
  int extra = 0;
  int rank = 0;
  int null_dim = 0;
  double max_residual = 0.0;          // max ||G_restricted v|| over the basis
  std::vector<double> singular_values;
};
NecessityReport necessity_demo(int P, int extra, std::uint64_t seed = 7);

// Relative sparse-grid difference ||a - b|| / ||b||.
double relative_error(const SpreadingGrid& a, const SpreadingGrid& b);

}  // namespace opsampl
