#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "opsampl/gabor.hpp"
#include "opsampl/types.hpp"

namespace opsampl {

// Result of a spark computation.  spark == P+1 (full spark) iff witness is
// empty iff every P-column minor is nonzero above the scale-invariant
// tolerance.  min_abs_minor is the smallest scaled |det| seen over all maximal
// minors when the exhaustive sweep ran.
struct SparkCertificate {
  int spark = 0;
  std::vector<int> witness;  // column indices (q*P + m) of a smallest dependent set
  std::uint64_t minors_checked = 0;
  double min_abs_minor = 0.0;
  bool exhaustive = true;
  double elapsed_seconds = 0.0;
};

struct SparkOptions {
  double tolerance = 1e-10;  // |det| relative to the product of column norms
  std::uint64_t subset_budget = 100'000'000;
  std::uint64_t random_samples = 200'000;  // randomized fallback beyond the budget
  std::uint64_t seed = 1;
};

// Exhaustive spark via minors: all C(P^2, P) maximal minors first (full spark
// certification needs nothing else); if some vanish, subsets of increasing
// size are rank-tested to locate a smallest dependent set.  Beyond the subset
// budget a randomized sweep can only certify NOT-full-spark (witness found) or
// report "no violation found" (exhaustive=false).
SparkCertificate spark(const GaborMatrix& G, const SparkOptions& opt = {});

// Unimodular window (1, z, z^4, z^9, ..., z^{(P-1)^2}), z = e^{2 pi i/(P-1)^4},
// whose Gabor matrix has full spark.  Requires P >= 4.
WeightVector corollary_window(int P);

// Random window supported on the first k coordinates (rest exactly zero);
// for prime P a generic draw gives Spark(G(c)) = k+1.
WeightVector truncated_window(int P, int k, std::uint64_t seed);

// True iff every square minor of the P x P Fourier matrix is nonzero above
// tolerance.  Holds for all prime P.
bool chebotarev_check(int P, double tolerance = 1e-10, std::uint64_t minor_budget = 5'000'000);

// ---------------------------------------------------------------------------
// Symbolic expansion of P x P Gabor minors as polynomials in c_0..c_{P-1}.
// ---------------------------------------------------------------------------
struct SymbolicDeterminant {
  int P = 0;
  std::vector<std::pair<int, int>> source_columns;  // (q, m) per column
  std::vector<int> partition_vector;                // columns drawn per block q

  struct Term {
    cplx coeff;
    int class_count = 0;  // how many permutation classes produced this exponent vector
  };
  // exponent vector (alpha_0..alpha_{P-1}) -> accumulated coefficient
  std::map<std::vector<int>, Term> monomials;
};

// Expands det of the P x P submatrix of G(c) with the given columns into its
// monomial map.  Every monomial has total degree P.  Guarded at P <= 4.
SymbolicDeterminant symbolic_determinant(const std::vector<std::pair<int, int>>& columns, int P);

// Numeric evaluation of the expansion at a concrete window (test oracle).
cplx evaluate(const SymbolicDeterminant& sd, const cvec& c);

// True iff the consecutive-index monomial (after the cyclic renaming
// minimizing sum_{i<gamma} l_i - gamma) appears with nonzero coefficient, is
// produced by exactly one permutation class, and uniquely minimizes
// Lambda(C) = sum_i i^2 alpha_i over the monomials present.
bool ci_monomial_unique(const SymbolicDeterminant& sd, double tolerance = 1e-10);

// The consecutive-index exponent vector itself (exposed for tests).
std::vector<int> ci_exponent_vector(const std::vector<int>& partition, int P);

}  // namespace opsampl
