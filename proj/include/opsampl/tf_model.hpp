#pragma once

#include <Eigen/Dense>
#include <optional>

#include "opsampl/types.hpp"

namespace opsampl {

// Cyclic-model channel action:
//   (H f)[j] = sum_{tau,mu} eta[tau,mu] * f[(j-tau) mod N] * e^{2 pi i mu (j-tau)/N}
cvec apply(const DiscreteChannel& H, const cvec& f);

// Dense N x N conversions.  Conventions (omega_N = e^{2 pi i / N}):
//   kernel           kappa[j,s]  = sum_mu eta[(j-s) mod N, mu] omega_N^{mu s},
//                    (H f)[j] = sum_s kappa[j,s] f[s]
//   impulse response h[j,tau]    = kappa[j, (j-tau) mod N]
//   KN symbol        sigma[j,xi] = delta * sum_tau h[j,tau] omega_N^{-xi tau}
// The delta = T/R factor on sigma is the line-integral quadrature weight, so
// sigma is normalized like its continuous counterpart.
inline constexpr std::int64_t kDenseLimit = 4096;

Eigen::MatrixXcd to_kernel(const DiscreteChannel& H);
Eigen::MatrixXcd to_impulse_response(const DiscreteChannel& H);
Eigen::MatrixXcd to_kn_symbol(const DiscreteChannel& H);

// Inverse conversions (exact round-trips).
Eigen::MatrixXcd kernel_from_impulse_response(const Eigen::MatrixXcd& h);
Eigen::MatrixXcd impulse_response_from_kernel(const Eigen::MatrixXcd& kappa);
Eigen::MatrixXcd impulse_response_from_kn_symbol(const Eigen::MatrixXcd& sigma,
                                                 const LatticeParams& params);
SpreadingGrid spreading_from_impulse_response(const Eigen::MatrixXcd& h,
                                              const LatticeParams& params,
                                              double prune_tol = 1e-14);

// Max over delay columns q of (#cells in column q) * Omega: the maximum
// vertical extent of the support, gaps included.
double bandwidth(const SupportSet& S);

// Axis-aligned rectangle [t0,t1] x [nu0,nu1] in the (delay, Doppler) plane.
struct RectRegion {
  double t0 = 0.0, t1 = 0.0, nu0 = 0.0, nu1 = 0.0;
};

struct RectifyOptions {
  int budget = 16;                   // max P
  std::vector<double> t_candidates;  // empty: derived from region geometry
  int shift_subdivisions = 8;        // Doppler shift grid per cell height
};

// Chooses T and P (Omega = 1/(T P)) such that the region is covered by at
// most P cells after a global Doppler re-centering; Doppler wraps modulo the
// band 1/T = P*Omega.  Minimizes |cells|, ties broken by smaller P then
// smaller T.  Throws NotRectifiable when area > 1 or no searched grid works.
SupportSet rectify(const std::vector<RectRegion>& region, const RectifyOptions& opt = {});

// Identifier signal g[n R] = c_{n mod P} for n in [0, P*K), zero elsewhere.
cvec delta_train(const WeightVector& c, const LatticeParams& params);

// Random channel supported on the fine-lattice points of the given cells
// (i.i.d. standard complex Gaussian values), for simulations and tests.
DiscreteChannel random_channel(const SupportSet& S, std::uint64_t seed);

}  // namespace opsampl
