#pragma once

#include "opsampl/types.hpp"

namespace opsampl {

// Discrete Zak transform on the fundamental domain [0, L) x [0, M) with
// L = P*R (one delay period in samples) and M = K:
//
//   Z[j, k] = sum_{m=0}^{M-1} f[(j - m L) mod N] e^{2 pi i m k / M}
//
// Non-normalized: Parseval reads sum |Z|^2 = M * sum |f|^2.  The extension
// Z[j + L, k] = e^{2 pi i k / M} Z[j, k] is consistent with recomputing the
// transform of the cyclically shifted signal.
struct ZakGrid {
  LatticeParams params;
  cvec values;  // values[j + k*L], j in [0, L), k in [0, M)

  std::int64_t L() const { return params.L(); }
  int M() const { return params.M(); }

  cplx& operator()(std::int64_t j, int k) { return values[j + static_cast<std::int64_t>(k) * L()]; }
  const cplx& operator()(std::int64_t j, int k) const {
    return values[j + static_cast<std::int64_t>(k) * L()];
  }

  // quasi-periodic extension in j, periodic in k
  cplx at(std::int64_t j, std::int64_t k) const;
};

ZakGrid zak(const cvec& f, const LatticeParams& params);

// Exact inverse: per residue j the values Z[j, .] are a length-M DFT across
// periods; inverting it recovers f.
cvec inverse_zak(const ZakGrid& Z);

// Quasiperiodization of a spreading function onto the fundamental domain
// [0, L) x [0, P*K): delay folds by L pick up the phase e^{-2 pi i mu w / M},
// Doppler folds by P*K are phase-free.  Returned dense, indexed
// [tau + mu * L], tau in [0, L), mu in [0, P*K).  When eta is supported inside
// the fundamental domain this is the identity embedding.
cvec quasiperiodize(const SpreadingGrid& eta);

}  // namespace opsampl
