#pragma once

#include <Eigen/Dense>
#include <vector>

#include "blab/core.hpp"

namespace blab::numerics {

/// Chebyshev-Lobatto points on [0, 1], ascending:
///   tau_j = (1 - cos(pi j / N)) / 2,  j = 0..N.
std::vector<double> chebyshev_nodes(int N);

/// Spectral differentiation matrix d/dtau on chebyshev_nodes(N).
Eigen::MatrixXd chebyshev_diff_matrix(int N);

/// (T u)_j = int_{tau_j}^1 p(s) ds, p the interpolant of u.
Eigen::MatrixXd chebyshev_tail_matrix(int N);

/// Weights w with sum_i w_i u_i = int_a^1 p(s) ds for a in [0, 1].
Eigen::VectorXd chebyshev_tail_weights(int N, double a);

/// Barycentric interpolation matrix from chebyshev_nodes(N) to points in [0, 1].
Eigen::MatrixXd chebyshev_interp_matrix(int N, const std::vector<double>& points);

/// FFT helpers acting on the rows of a column-major matrix
/// (row index = radial node, column index = angle).
class RowFFT {
 public:
  /// Forward transform of each row in place: c_m = sum_k u_k e^{-i m theta_k}.
  static void forward(Eigen::MatrixXcd& a);
  /// Inverse transform of each row in place, normalised by 1/ncols.
  static void inverse(Eigen::MatrixXcd& a);
  /// q-th derivative in theta of each row (periodic, spectral).
  static Eigen::MatrixXcd derivative(const Eigen::MatrixXcd& a, int q = 1);
  /// Signed wavenumber of FFT index k for length n.
  static int wavenumber(int k, int n) { return k <= n / 2 ? k : k - n; }
};

}  // namespace blab::numerics
