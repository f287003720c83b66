#pragma once

#include <Eigen/Dense>

#include "opsampl/types.hpp"

namespace opsampl {

// Cyclic translation: steps=1 maps (x_0,...,x_{P-1}) to (x_{P-1},x_0,...,x_{P-2}).
// steps is taken mod P, negative allowed.
cvec translate(const cvec& x, std::int64_t steps);

// Entry n multiplied by omega^{n*steps}, omega = e^{2 pi i / P}.
cvec modulate(const cvec& x, std::int64_t steps);

// M^m T^q c  (translate by q, then modulate by m).  This is exactly column
// (q, m) of the full Gabor system matrix.
cvec tm_column(const WeightVector& c, int q, int m);

// Full Gabor system matrix G(c): P x P^2, block q is diag(T^q c) * W_P with
// W_P = (e^{2 pi i n m / P}).  Column (q, m) sits at index q*P + m; it equals
// M^m T^q c = omega^{q m} T^q M^m c.
struct GaborMatrix {
  int P = 0;
  Eigen::MatrixXcd mat;

  static int col_index(int q, int m, int P) { return q * P + m; }
  int col_index(int q, int m) const { return q * P + m; }
  Eigen::VectorXcd column(int q, int m) const { return mat.col(col_index(q, m)); }
};

GaborMatrix gabor_matrix(const WeightVector& c);

// Analysis-operator energy sum_{q,m} |<x, T^q M^m c>|^2.  The P^2 vectors form
// a tight frame: the sum equals P * ||c||^2 * ||x||^2.
double frame_sum(const WeightVector& c, const cvec& x);

// Window with i.i.d. standard complex Gaussian entries (seeded).
WeightVector gaussian_window(int P, std::uint64_t seed);

}  // namespace opsampl
