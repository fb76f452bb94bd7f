#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "blab/flow/chart.hpp"

namespace blab::flow {

/// Spectral collar coordinates on one boundary component of a planar
/// domain: x(tau, theta) = phi(-tau, p(theta)), tau in [tau_min, 1] on
/// Chebyshev-Lobatto nodes, theta uniform (FFT).  Rows index tau, columns
/// theta.  Data are collar-supported: they are extended by zero beyond
/// tau = 1, so the antiderivative becomes the tail integral int_tau^1.
class CollarGrid {
 public:
  CollarGrid(const CollarChart& chart, int ntau, int ntheta, double tau_min = 0.0,
             int component = 0);

  const CollarChart& chart() const { return *chart_; }
  int rows() const { return static_cast<int>(tau_.size()); }
  int cols() const { return ntheta_; }
  int ntau() const { return ntau_; }
  double tau_min() const { return tau_min_; }
  int component() const { return component_; }
  const std::vector<double>& tau() const { return tau_; }
  const std::vector<double>& theta() const { return theta_; }
  const Point& position(int j, int k) const { return pos_[j * ntheta_ + k]; }

  /// d/dtau and int_tau^1 on the physical tau interval.
  const Eigen::MatrixXd& diff() const { return diff_; }
  const Eigen::MatrixXd& tail() const { return tail_; }
  /// Area weights (Clenshaw-Curtis in tau, trapezoid in theta, |Jacobian|).
  const Eigen::MatrixXd& area() const { return area_; }
  /// Inverse Jacobian: dtau/dx, dtau/dy, dtheta/dx, dtheta/dy.
  const Eigen::MatrixXd& tau_x() const { return tau_x_; }
  const Eigen::MatrixXd& tau_y() const { return tau_y_; }
  const Eigen::MatrixXd& theta_x() const { return theta_x_; }
  const Eigen::MatrixXd& theta_y() const { return theta_y_; }

  /// Collar components X = X^tau d/dtau + X^theta d/dtheta (cached by id).
  struct FieldAction {
    Eigen::MatrixXcd Xtau;
    Eigen::MatrixXcd Xtheta;
  };
  const FieldAction& action(const VectorField& X) const;

  std::string id() const;

 private:
  const CollarChart* chart_;
  int ntau_, ntheta_;
  double tau_min_;
  int component_;
  std::vector<double> tau_, theta_;
  std::vector<Point> pos_;
  Eigen::MatrixXd diff_, tail_, area_, tau_x_, tau_y_, theta_x_, theta_y_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::unique_ptr<FieldAction>> actions_;
};

using CollarGridPtr = std::shared_ptr<const CollarGrid>;

/// Values of a collar-supported function on a CollarGrid.
struct CollarField {
  CollarGridPtr grid;
  Eigen::MatrixXcd v;

  CollarField operator+(const CollarField& o) const;
  CollarField operator-(const CollarField& o) const;
  CollarField operator*(Complex a) const;
  /// Pointwise product.
  CollarField times(const CollarField& o) const;
  double sup() const;
};

CollarGridPtr make_collar_grid(const CollarChart& chart, int ntau, int ntheta,
                               double tau_min = 0.0, int component = 0);

CollarField zeros(CollarGridPtr grid);
/// f(x(tau, theta), tau) at every node.
CollarField sample(CollarGridPtr grid, const CollarFn& f);
CollarField sample(CollarGridPtr grid, const PointFn& f);
/// tau^p at every node.
CollarField tau_power(CollarGridPtr grid, int p);

CollarField tail_integral(const CollarField& f);
CollarField d_tau(const CollarField& f);
CollarField d_theta(const CollarField& f);
CollarField d_x(const CollarField& f);
CollarField d_y(const CollarField& f);
/// d_x^bx d_y^by f.
CollarField d_monomial(const CollarField& f, int bx, int by);
CollarField apply_field(const VectorField& X, const CollarField& f);

/// L^2 norm over the collar part covered by the grid.
double l2(const CollarField& f);
/// (sum_{bx + by <= k} ||d_x^bx d_y^by f||^2)^{1/2}.
double sobolev_norm(const CollarField& f, int k);

}  // namespace blab::flow
