#include "blab/numerics/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace blab::numerics {

std::vector<double> chebyshev_nodes(int N) {
  if (N < 1) throw ParameterError("Chebyshev grid needs N >= 1");
  std::vector<double> t(N + 1);
  for (int j = 0; j <= N; ++j) t[j] = 0.5 * (1.0 - std::cos(kPi * j / N));
  t[0] = 0.0;
  t[N] = 1.0;
  return t;
}

namespace {

std::vector<double> lobatto_x(int N) {
  std::vector<double> x(N + 1);
  // sin form keeps the nodes symmetric to rounding.
  for (int j = 0; j <= N; ++j) x[j] = std::sin(kPi * (N - 2.0 * j) / (2.0 * N));
  return x;
}

// Values at Lobatto points -> coefficients of the antiderivative vanishing at x = -1.
Eigen::MatrixXd antiderivative_coeffs(int N) {
  Eigen::MatrixXd C(N + 1, N + 1);
  for (int n = 0; n <= N; ++n)
    for (int j = 0; j <= N; ++j) {
      double w = 2.0 / N * std::cos(kPi * n * j / N);
      if (j == 0 || j == N) w *= 0.5;
      if (n == 0 || n == N) w *= 0.5;
      C(n, j) = w;
    }
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N + 2, N + 1);
  auto c = [&](int n, int j) { return n <= N ? C(n, j) : 0.0; };
  for (int j = 0; j <= N; ++j) {
    D(1, j) = c(0, j) - 0.5 * c(2, j);
    for (int n = 2; n <= N + 1; ++n) D(n, j) = (c(n - 1, j) - c(n + 1, j)) / (2.0 * n);
    double s = 0.0;
    for (int n = 1; n <= N + 1; ++n) s += (n % 2 ? -1.0 : 1.0) * D(n, j);
    D(0, j) = -s;
  }
  return D;
}

}  // namespace

Eigen::MatrixXd chebyshev_diff_matrix(int N) {
  const std::vector<double> x = lobatto_x(N);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(N + 1, N + 1);
  auto c = [N](int i) { return (i == 0 || i == N ? 2.0 : 1.0) * (i % 2 ? -1.0 : 1.0); };
  for (int i = 0; i <= N; ++i) {
    double diag = 0.0;
    for (int j = 0; j <= N; ++j) {
      if (i == j) continue;
      D(i, j) = c(i) / c(j) / (x[i] - x[j]);
      diag += D(i, j);
    }
    D(i, i) = -diag;
  }
  // tau = (1 - x) / 2.
  return -2.0 * D;
}

Eigen::MatrixXd chebyshev_tail_matrix(int N) {
  const Eigen::MatrixXd D = antiderivative_coeffs(N);
  Eigen::MatrixXd E(N + 1, N + 2);
  for (int j = 0; j <= N; ++j)
    for (int n = 0; n <= N + 1; ++n) E(j, n) = std::cos(kPi * double(n) * j / N);
  Eigen::MatrixXd T = 0.5 * E * D;
  T.row(N).setZero();
  return T;
}

Eigen::VectorXd chebyshev_tail_weights(int N, double a) {
  if (a < 0.0 || a > 1.0) throw ParameterError("tail weight point must lie in [0,1]");
  const Eigen::MatrixXd D = antiderivative_coeffs(N);
  const double th = std::acos(std::clamp(1.0 - 2.0 * a, -1.0, 1.0));
  Eigen::RowVectorXd e(N + 2);
  for (int n = 0; n <= N + 1; ++n) e(n) = std::cos(n * th);
  return (0.5 * e * D).transpose();
}

Eigen::MatrixXd chebyshev_interp_matrix(int N, const std::vector<double>& points) {
  const std::vector<double> t = chebyshev_nodes(N);
  std::vector<double> w(N + 1);
  for (int j = 0; j <= N; ++j) w[j] = (j % 2 ? -1.0 : 1.0) * (j == 0 || j == N ? 0.5 : 1.0);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(points.size(), N + 1);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const double s = points[p];
    int hit = -1;
    for (int j = 0; j <= N; ++j)
      if (s == t[j]) hit = j;
    if (hit >= 0) {
      M(p, hit) = 1.0;
      continue;
    }
    double den = 0.0;
    for (int j = 0; j <= N; ++j) den += w[j] / (s - t[j]);
    for (int j = 0; j <= N; ++j) M(p, j) = w[j] / (s - t[j]) / den;
  }
  return M;
}

namespace {

std::mutex g_plan_mutex;

fftw_plan plan_for(int rows, int cols, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  const auto key = std::make_tuple(rows, cols, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<fftw_complex> tmp(static_cast<std::size_t>(rows) * cols);
  int n = cols;
  fftw_plan p = fftw_plan_many_dft(1, &n, rows, tmp.data(), nullptr, rows, 1, tmp.data(),
                                   nullptr, rows, 1, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(key, p);
  return p;
}

void run(Eigen::MatrixXcd& a, int sign) {
  if (a.size() == 0) return;
  fftw_plan p = plan_for(static_cast<int>(a.rows()), static_cast<int>(a.cols()), sign);
  auto* data = reinterpret_cast<fftw_complex*>(a.data());
  fftw_execute_dft(p, data, data);
}

}  // namespace

void RowFFT::forward(Eigen::MatrixXcd& a) { run(a, FFTW_FORWARD); }

void RowFFT::inverse(Eigen::MatrixXcd& a) {
  run(a, FFTW_BACKWARD);
  a /= static_cast<double>(a.cols());
}

Eigen::MatrixXcd RowFFT::derivative(const Eigen::MatrixXcd& a, int q) {
  Eigen::MatrixXcd c = a;
  forward(c);
  const int n = static_cast<int>(a.cols());
  for (int k = 0; k < n; ++k) {
    const int m = wavenumber(k, n);
    Complex f = std::pow(Complex(0.0, double(m)), q);
    if (n % 2 == 0 && k == n / 2 && q % 2 == 1) f = 0.0;
    c.col(k) *= f;
  }
  inverse(c);
  return c;
}

}  // namespace blab::numerics
