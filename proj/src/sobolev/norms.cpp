#include "blab/sobolev/norms.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace blab::sobolev {

using bergman::MultiIndex;

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::Hk:
      return "Hk";
    case NormKind::HkT:
      return "HkT";
    case NormKind::WeightedNeg:
      return "weightedNeg";
    case NormKind::SupWeighted:
      return "supWeighted";
    case NormKind::DualitySup:
      return "dualitySup";
  }
  return "unknown";
}

std::string NormReport::csv_row() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind) << ',' << order << ',' << value << ',' << field_id << ',' << grid_id << ','
     << (divergent ? 1 : 0);
  return os.str();
}

namespace {

void check_order(int k) {
  if (k < 0 || k > kMaxSobolevOrder)
    throw ParameterError("Sobolev order must lie in [0, " + std::to_string(kMaxSobolevOrder) + "]");
}

NormReport make_report(NormKind kind, int k, double sq, std::string field, std::string grid) {
  NormReport r;
  r.kind = kind;
  r.order = k;
  r.value = std::sqrt(sq);
  r.field_id = std::move(field);
  r.grid_id = std::move(grid);
  r.divergent = !std::isfinite(r.value);
  return r;
}

// Polar components (c_r, c_theta) of X at p.
void polar_components(const VectorField& X, const Point& p, Complex& cr, Complex& cth) {
  const auto c = X(p);
  const double r = p.norm(), th = std::atan2(p.x[1], p.x[0]);
  cr = std::cos(th) * c[0] + std::sin(th) * c[1];
  cth = (-std::sin(th) * c[0] + std::cos(th) * c[1]) / r;
}

}  // namespace

NormReport sobolev_norm(const HolomorphicFunction& f, int k, const QuadratureGrid& grid) {
  check_order(k);
  if (f.n != grid.domain.n()) throw ContractError("function and grid dimensions differ");
  double sq = 0.0;
  for (int a = 0; a <= k; ++a)
    for (int b = 0; b <= (f.n == 2 ? k - a : 0); ++b) {
      const double mult = (a + 1.0) * (b + 1.0);
      double s = 0.0;
      for (std::size_t q = 0; q < grid.size(); ++q)
        s += grid.weights[q] * std::norm(f.eval(grid.nodes[q], {a, b}));
      sq += mult * s;
    }
  return make_report(NormKind::Hk, k, sq, f.id, grid.id() + ":analytic");
}

NormReport sobolev_norm(const CoefficientVector& c, const OrthonormalBasis& basis, int k,
                        const QuadratureGrid& grid) {
  geometry::check_same_domain(basis.domain(), grid.domain, "sobolev_norm");
  return sobolev_norm(bergman::as_holomorphic(c, basis), k, grid);
}

PolarFD::PolarFD(const PolarEvalGrid& g) : grid(g), weights(g.weights()) {
  if (g.nr < 5 || g.ntheta < 5)
    throw ResolutionError("finite-difference stencil needs at least 5 nodes per direction");
}

std::vector<Complex> PolarFD::sample(const PointFn& f) const {
  std::vector<Complex> v(grid.size());
  for (int i = 0; i < grid.nr; ++i)
    for (int k = 0; k < grid.ntheta; ++k) v[i * grid.ntheta + k] = f(grid.node(i, k));
  return v;
}

std::vector<Complex> PolarFD::d_r(const std::vector<Complex>& v) const {
  const int nr = grid.nr, nt = grid.ntheta;
  const double h12 = 12.0 * grid.dr;
  std::vector<Complex> out(v.size());
  for (int k = 0; k < nt; ++k) {
    auto f = [&](int i) { return v[i * nt + k]; };
    for (int i = 0; i < nr; ++i) {
      Complex d;
      if (i >= 2 && i <= nr - 3)
        d = f(i - 2) - 8.0 * f(i - 1) + 8.0 * f(i + 1) - f(i + 2);
      else if (i == 0)
        d = -25.0 * f(0) + 48.0 * f(1) - 36.0 * f(2) + 16.0 * f(3) - 3.0 * f(4);
      else if (i == 1)
        d = -3.0 * f(0) - 10.0 * f(1) + 18.0 * f(2) - 6.0 * f(3) + f(4);
      else if (i == nr - 1)
        d = 25.0 * f(nr - 1) - 48.0 * f(nr - 2) + 36.0 * f(nr - 3) - 16.0 * f(nr - 4) + 3.0 * f(nr - 5);
      else
        d = 3.0 * f(nr - 1) + 10.0 * f(nr - 2) - 18.0 * f(nr - 3) + 6.0 * f(nr - 4) - f(nr - 5);
      out[i * nt + k] = d / h12;
    }
  }
  return out;
}

std::vector<Complex> PolarFD::d_theta(const std::vector<Complex>& v) const {
  const int nr = grid.nr, nt = grid.ntheta;
  const double h12 = 12.0 * 2 * kPi / nt;
  std::vector<Complex> out(v.size());
  for (int i = 0; i < nr; ++i) {
    auto f = [&](int k) { return v[i * nt + ((k % nt) + nt) % nt]; };
    for (int k = 0; k < nt; ++k)
      out[i * nt + k] = (f(k - 2) - 8.0 * f(k - 1) + 8.0 * f(k + 1) - f(k + 2)) / h12;
  }
  return out;
}

std::vector<Complex> PolarFD::d_x(const std::vector<Complex>& v) const {
  const auto dr = d_r(v), dt = d_theta(v);
  std::vector<Complex> out(v.size());
  for (int i = 0; i < grid.nr; ++i)
    for (int k = 0; k < grid.ntheta; ++k) {
      const int q = i * grid.ntheta + k;
      const double th = grid.angles[k], r = grid.radii[i];
      out[q] = std::cos(th) * dr[q] - std::sin(th) / r * dt[q];
    }
  return out;
}

std::vector<Complex> PolarFD::d_y(const std::vector<Complex>& v) const {
  const auto dr = d_r(v), dt = d_theta(v);
  std::vector<Complex> out(v.size());
  for (int i = 0; i < grid.nr; ++i)
    for (int k = 0; k < grid.ntheta; ++k) {
      const int q = i * grid.ntheta + k;
      const double th = grid.angles[k], r = grid.radii[i];
      out[q] = std::sin(th) * dr[q] + std::cos(th) / r * dt[q];
    }
  return out;
}

std::vector<Complex> PolarFD::apply(const VectorField& X, const std::vector<Complex>& v) const {
  if (X.dim() != 2) throw ContractError("polar finite differences need a planar field");
  const auto dr = d_r(v), dt = d_theta(v);
  std::vector<Complex> out(v.size());
  for (int i = 0; i < grid.nr; ++i)
    for (int k = 0; k < grid.ntheta; ++k) {
      const int q = i * grid.ntheta + k;
      Complex cr, cth;
      polar_components(X, grid.node(i, k), cr, cth);
      out[q] = cr * dr[q] + cth * dt[q];
    }
  return out;
}

double PolarFD::l2(const std::vector<Complex>& v) const {
  double s = 0.0;
  for (std::size_t q = 0; q < v.size(); ++q) s += weights[q] * std::norm(v[q]);
  return std::sqrt(s);
}

NormReport sobolev_norm_fd(const PointFn& f, int k, const PolarEvalGrid& grid, std::string id) {
  check_order(k);
  const PolarFD fd(grid);
  // Level j holds D^alpha f for all alpha = (a, j - a), a = j..0.
  std::vector<std::vector<Complex>> level{fd.sample(f)};
  double sq = std::pow(fd.l2(level[0]), 2);
  for (int j = 1; j <= k; ++j) {
    std::vector<std::vector<Complex>> next;
    next.push_back(fd.d_x(level[0]));
    for (const auto& v : level) next.push_back(fd.d_y(v));
    for (const auto& v : next) sq += std::pow(fd.l2(v), 2);
    level = std::move(next);
  }
  return make_report(NormKind::Hk, k, sq, std::move(id), grid.id());
}

Complex ModalFunction::operator()(const Point& p) const {
  const double r = p.norm(), th = std::atan2(p.x[1], p.x[0]);
  Complex s = 0.0;
  for (const auto& [m, u] : modes) s += u(r) * std::polar(1.0, m * th);
  return s;
}

NormReport t_sobolev_norm(const ModalFunction& f, const VectorField& T, int k,
                          const QuadratureGrid& grid) {
  check_order(k);
  if (grid.domain.n() != 1) throw ContractError("modal T-norms are defined on planar domains");
  std::vector<double> sq(k + 1, 0.0);
  for (std::size_t q = 0; q < grid.size(); ++q) {
    const Point& p = grid.nodes[q];
    const double r = p.norm(), th = std::atan2(p.x[1], p.x[0]);
    Complex cr, w;
    polar_components(T, p, cr, w);
    Complex cr0, w0;
    polar_components(T, Point(Complex(r)), cr0, w0);
    const double scale = std::abs(w) * r + 1e-300;
    if (std::abs(cr) > 1e-12 * scale || std::abs(w - w0) > 1e-12 * (std::abs(w0) + 1e-14))
      throw ContractError("modal T-norm needs a rotation-invariant angular field");
    for (int j = 0; j <= k; ++j) {
      Complex v = 0.0;
      for (const auto& [m, u] : f.modes)
        v += std::pow(kI * double(m) * w, j) * u(r) * std::polar(1.0, m * th);
      sq[j] += grid.weights[q] * std::norm(v);
    }
  }
  double total = 0.0;
  for (double s : sq) total += s;
  return make_report(NormKind::HkT, k, total, f.id + ":" + T.id(), grid.id() + ":modal");
}

NormReport t_sobolev_norm_fd(const PointFn& f, const VectorField& T, int k,
                             const PolarEvalGrid& grid, std::string id) {
  check_order(k);
  const PolarFD fd(grid);
  std::vector<Complex> v = fd.sample(f);
  double sq = std::pow(fd.l2(v), 2);
  for (int j = 1; j <= k; ++j) {
    v = fd.apply(T, v);
    sq += std::pow(fd.l2(v), 2);
  }
  return make_report(NormKind::HkT, k, sq, id + ":" + T.id(), grid.id());
}

NormReport weighted_negative_norm(const PointFn& h, int k, const QuadratureGrid& grid,
                                  std::string id) {
  if (k < 0) throw ParameterError("weighted norm order must be non-negative");
  double s = 0.0;
  for (std::size_t q = 0; q < grid.size(); ++q) {
    const double d = grid.domain.boundary_distance(grid.nodes[q]);
    s += grid.weights[q] * std::pow(d, 2 * k) * std::norm(h(grid.nodes[q]));
  }
  return make_report(NormKind::WeightedNeg, k, s, std::move(id), grid.id());
}

NormReport weighted_negative_norm(const GridFunction& h, int k) {
  if (!h.grid) throw ContractError("grid function without grid");
  if (k < 0) throw ParameterError("weighted norm order must be non-negative");
  const auto& g = *h.grid;
  double s = 0.0;
  for (std::size_t q = 0; q < g.size(); ++q) {
    const double d = g.domain.boundary_distance(g.nodes[q]);
    s += g.weights[q] * std::pow(d, 2 * k) * std::norm(h.values[q]);
  }
  return make_report(NormKind::WeightedNeg, k, s, "grid", g.id());
}

double sup_weighted(const PointFn& h, int m, const Domain& domain, const std::vector<Point>& points) {
  double best = 0.0;
  const int e = m + 2 * domain.n();
  for (const Point& p : points) {
    const double d = domain.boundary_distance(p);
    if (d == 0.0) continue;
    best = std::max(best, std::abs(h(p)) * std::pow(d, e));
  }
  return best;
}

NormReport sup_weighted_norm(const PointFn& h, int m, const Domain& domain, int nr, int ntheta,
                             std::string id) {
  if (m < 0) throw ParameterError("sup-weighted order must be non-negative");
  NormReport r;
  r.kind = NormKind::SupWeighted;
  r.order = m;
  r.value = sup_weighted(h, m, domain, geometry::sup_grid(domain, nr, ntheta));
  r.field_id = std::move(id);
  std::ostringstream os;
  os << domain.name() << ":sup:nr=" << nr << ":ntheta=" << ntheta;
  r.grid_id = os.str();
  r.divergent = !std::isfinite(r.value);
  return r;
}

NormReport duality_sup(const GridFunction& f, int k1, const OrthonormalBasis& basis) {
  if (!f.grid) throw ContractError("grid function without grid");
  if (k1 < 0) throw ParameterError("duality order must be non-negative");
  const auto& g = *f.grid;
  geometry::check_same_domain(g.domain, basis.domain(), "duality_sup");
  const Eigen::Index nq = static_cast<Eigen::Index>(g.size());
  const Eigen::Index nb = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd V(nq, nb);
  Eigen::VectorXd w(nq), wd(nq);
  Eigen::VectorXcd fv(nq);
  for (Eigen::Index q = 0; q < nq; ++q) {
    for (Eigen::Index i = 0; i < nb; ++i) V(q, i) = basis.value(i, g.nodes[q]);
    w(q) = g.weights[q];
    wd(q) = g.weights[q] * std::pow(g.domain.boundary_distance(g.nodes[q]), 2 * k1);
    fv(q) = f.values[q];
  }
  const Eigen::VectorXcd v = V.adjoint() * (w.cast<Complex>().asDiagonal() * fv);
  const Eigen::MatrixXcd G = V.adjoint() * wd.cast<Complex>().asDiagonal() * V;
  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  std::ostringstream why;
  why << "weighted Gram matrix singular for k1=" << k1 << " with basis truncation " << basis.label();
  if (llt.info() != Eigen::Success) throw ConditioningError(why.str());
  const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal().real();
  const double ratio = diag.maxCoeff() / diag.minCoeff();
  if (!(ratio * ratio < 1e14)) throw ConditioningError(why.str());
  const Eigen::VectorXcd y = llt.matrixL().solve(v);
  NormReport r;
  r.kind = NormKind::DualitySup;
  r.order = k1;
  r.value = y.norm();
  r.field_id = "f";
  r.grid_id = g.id() + ":" + basis.label();
  return r;
}

}  // namespace blab::sobolev
