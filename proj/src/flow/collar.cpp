#include "blab/flow/collar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blab/numerics/ode.hpp"
#include "blab/numerics/spectral.hpp"

namespace blab::flow {

using numerics::RowFFT;

CollarGrid::CollarGrid(const CollarChart& chart, int ntau, int ntheta, double tau_min,
                       int component)
    : chart_(&chart), ntau_(ntau), ntheta_(ntheta), tau_min_(tau_min), component_(component) {
  const Domain& d = chart.domain();
  if (d.n() != 1) throw ParameterError("collar grids are built on planar domains");
  if (ntau < 4 || ntheta < 8) throw ParameterError("collar grid needs ntau >= 4, ntheta >= 8");
  if (tau_min < 0.0 || tau_min >= 0.5) throw ParameterError("collar inset must lie in [0, 0.5)");
  if (component < 0 || component >= d.boundary_components())
    throw ParameterError("no such boundary component");

  const double len = 1.0 - tau_min;
  for (double u : numerics::chebyshev_nodes(ntau)) tau_.push_back(tau_min + len * u);
  for (int k = 0; k < ntheta; ++k) theta_.push_back(2.0 * kPi * k / ntheta);
  diff_ = numerics::chebyshev_diff_matrix(ntau) / len;
  tail_ = numerics::chebyshev_tail_matrix(ntau) * len;
  const Eigen::VectorXd wt = numerics::chebyshev_tail_weights(ntau, 0.0) * len;

  // March each boundary point inward through the tau nodes.
  const VectorField& N = chart.normal();
  const numerics::RealField back = [&N](const Point& y) { return N.real_direction(y) * -1.0; };
  const int rows = this->rows();
  const double hmax = 1.0 / (4.0 * chart.params().steps);
  pos_.resize(static_cast<std::size_t>(rows) * ntheta);
  const double R = d.component_radius(component);
  for (int k = 0; k < ntheta; ++k) {
    Point y(std::polar(R, theta_[k]));
    double t = 0.0;
    for (int j = 0; j < rows; ++j) {
      const double gap = tau_[j] - t;
      if (gap > 0.0) {
        const int n = std::max(1, static_cast<int>(std::ceil(gap / hmax)));
        for (int i = 0; i < n; ++i) y = numerics::rk4_step(back, y, gap / n);
      }
      t = tau_[j];
      pos_[j * ntheta + k] = y;
    }
  }

  Eigen::MatrixXcd z(rows, ntheta);
  for (int j = 0; j < rows; ++j)
    for (int k = 0; k < ntheta; ++k) z(j, k) = position(j, k).z(0);
  const Eigen::MatrixXcd zth = RowFFT::derivative(z, 1);

  area_.resize(rows, ntheta);
  tau_x_.resize(rows, ntheta);
  tau_y_.resize(rows, ntheta);
  theta_x_.resize(rows, ntheta);
  theta_y_.resize(rows, ntheta);
  for (int j = 0; j < rows; ++j)
    for (int k = 0; k < ntheta; ++k) {
      const Point n = N.real_direction(position(j, k));
      const double xt = -n[0], yt = -n[1];
      const double xq = zth(j, k).real(), yq = zth(j, k).imag();
      const double det = xt * yq - xq * yt;
      if (!(std::abs(det) > 1e-300)) throw NearSingularError("degenerate collar coordinates");
      tau_x_(j, k) = yq / det;
      tau_y_(j, k) = -xq / det;
      theta_x_(j, k) = -yt / det;
      theta_y_(j, k) = xt / det;
      area_(j, k) = wt(j) * (2.0 * kPi / ntheta) * std::abs(det);
    }
}

const CollarGrid::FieldAction& CollarGrid::action(const VectorField& X) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = actions_.find(X.id());
  if (it != actions_.end()) return *it->second;
  auto a = std::make_unique<FieldAction>();
  a->Xtau.resize(rows(), ntheta_);
  a->Xtheta.resize(rows(), ntheta_);
  for (int j = 0; j < rows(); ++j)
    for (int k = 0; k < ntheta_; ++k) {
      const auto c = X(position(j, k));
      a->Xtau(j, k) = c[0] * tau_x_(j, k) + c[1] * tau_y_(j, k);
      a->Xtheta(j, k) = c[0] * theta_x_(j, k) + c[1] * theta_y_(j, k);
    }
  return *actions_.emplace(X.id(), std::move(a)).first->second;
}

std::string CollarGrid::id() const {
  std::ostringstream os;
  os << "collar:" << chart_->domain().name() << ":b" << component_ << ":" << ntau_ << "x"
     << ntheta_ << ":tau>=" << tau_min_;
  return os.str();
}

CollarGridPtr make_collar_grid(const CollarChart& chart, int ntau, int ntheta, double tau_min,
                               int component) {
  return std::make_shared<const CollarGrid>(chart, ntau, ntheta, tau_min, component);
}

namespace {

void check_grid(const CollarField& a, const CollarField& b) {
  if (a.grid != b.grid) throw ContractError("collar fields live on different grids");
}

}  // namespace

CollarField CollarField::operator+(const CollarField& o) const {
  check_grid(*this, o);
  return {grid, v + o.v};
}
CollarField CollarField::operator-(const CollarField& o) const {
  check_grid(*this, o);
  return {grid, v - o.v};
}
CollarField CollarField::operator*(Complex a) const { return {grid, v * a}; }
CollarField CollarField::times(const CollarField& o) const {
  check_grid(*this, o);
  return {grid, v.cwiseProduct(o.v)};
}
double CollarField::sup() const { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

CollarField zeros(CollarGridPtr grid) {
  const int r = grid->rows(), c = grid->cols();
  return {std::move(grid), Eigen::MatrixXcd::Zero(r, c)};
}

CollarField sample(CollarGridPtr grid, const CollarFn& f) {
  CollarField out = zeros(grid);
  for (int j = 0; j < grid->rows(); ++j)
    for (int k = 0; k < grid->cols(); ++k) out.v(j, k) = f(grid->position(j, k), grid->tau()[j]);
  return out;
}

CollarField sample(CollarGridPtr grid, const PointFn& f) {
  return sample(std::move(grid), [&f](const Point& x, double) { return f(x); });
}

CollarField tau_power(CollarGridPtr grid, int p) {
  CollarField out = zeros(grid);
  for (int j = 0; j < grid->rows(); ++j) out.v.row(j).setConstant(std::pow(grid->tau()[j], p));
  return out;
}

CollarField tail_integral(const CollarField& f) { return {f.grid, f.grid->tail() * f.v}; }
CollarField d_tau(const CollarField& f) { return {f.grid, f.grid->diff() * f.v}; }
CollarField d_theta(const CollarField& f) { return {f.grid, RowFFT::derivative(f.v, 1)}; }

CollarField d_x(const CollarField& f) {
  const CollarGrid& g = *f.grid;
  return {f.grid, g.tau_x().cwiseProduct(g.diff() * f.v) +
                      g.theta_x().cwiseProduct(RowFFT::derivative(f.v, 1))};
}

CollarField d_y(const CollarField& f) {
  const CollarGrid& g = *f.grid;
  return {f.grid, g.tau_y().cwiseProduct(g.diff() * f.v) +
                      g.theta_y().cwiseProduct(RowFFT::derivative(f.v, 1))};
}

CollarField d_monomial(const CollarField& f, int bx, int by) {
  if (bx < 0 || by < 0) throw ParameterError("negative derivative order");
  CollarField out = f;
  for (int i = 0; i < bx; ++i) out = d_x(out);
  for (int i = 0; i < by; ++i) out = d_y(out);
  return out;
}

CollarField apply_field(const VectorField& X, const CollarField& f) {
  const auto& a = f.grid->action(X);
  return {f.grid, a.Xtau.cwiseProduct(f.grid->diff() * f.v) +
                      a.Xtheta.cwiseProduct(RowFFT::derivative(f.v, 1))};
}

double l2(const CollarField& f) {
  return std::sqrt(f.grid->area().cwiseProduct(f.v.cwiseAbs2()).sum());
}

double sobolev_norm(const CollarField& f, int k) {
  if (k < 0) throw ParameterError("Sobolev order must be non-negative");
  std::vector<CollarField> level{f};
  double sq = std::pow(l2(f), 2);
  for (int j = 1; j <= k; ++j) {
    std::vector<CollarField> next{d_x(level[0])};
    for (const auto& v : level) next.push_back(d_y(v));
    for (const auto& v : next) sq += std::pow(l2(v), 2);
    level = std::move(next);
  }
  return std::sqrt(sq);
}

}  // namespace blab::flow
