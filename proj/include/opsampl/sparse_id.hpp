#pragma once

#include <Eigen/Dense>

#include "opsampl/gabor.hpp"
#include "opsampl/types.hpp"

namespace opsampl {

struct SparseSolveConfig {
  enum class Method { Exhaustive, Greedy };
  Method method = Method::Exhaustive;
  int max_sparsity = 1;
  bool joint = false;
  double tolerance = 1e-8;  // relative residual for consistency
};

// Window with i.i.d. entries uniform on the complex unit circle.
WeightVector steinhaus_window(int P, std::uint64_t seed);

// Solve Z = G(c) * eta for sparse eta (length P^2).
//
// Exhaustive mode scans all supports of size <= max_sparsity; the unique
// consistent solution is returned.  Two consistent supports with genuinely
// different solutions raise AmbiguousSupport (cannot happen for full-spark G
// and true sparsity <= P/2, so an occurrence signals a spark or tolerance
// misconfiguration).  Nothing consistent raises NoConsistentSupport.
//
// Greedy mode is orthogonal matching pursuit with per-step least-squares
// refit; correlation ties break to the lowest column index.  Success is
// reported by the caller, never guaranteed.
cvec solve_sparse(const cvec& Z, const GaborMatrix& G, const SparseSolveConfig& cfg);

// Joint-sparsity solve: one support of size <= max_sparsity consistent with
// every column of zs (P x npoints) under the aggregated residual, then a
// per-point least-squares solve on it.  The lexicographically smallest
// consistent support at the smallest consistent size wins.
struct JointResult {
  std::vector<int> support;   // column indices q*P + m
  Eigen::MatrixXcd coeffs;    // |support| x npoints
};
JointResult solve_joint(const Eigen::MatrixXcd& zs, const GaborMatrix& G,
                        const SparseSolveConfig& cfg);

}  // namespace opsampl
