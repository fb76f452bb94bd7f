#include "blab/flow/chart.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blab/numerics/ode.hpp"

namespace blab::flow {

namespace {

double bump(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
double bump_derivative(double u) { return u > 0.0 ? std::exp(-1.0 / u) / (u * u) : 0.0; }

// Interior distance to boundary component c (negative outside).
double component_depth(const Domain& d, const Point& x, int c) {
  const double r = x.norm();
  if (d.kind() == geometry::DomainKind::Annulus && c == 1) return r - d.inner_radius();
  return 1.0 - r;
}

}  // namespace

double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = bump(u), b = bump(1.0 - u);
  return a / (a + b);
}

double smooth_step_derivative(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double a = bump(u), b = bump(1.0 - u);
  const double da = bump_derivative(u), db = bump_derivative(1.0 - u);
  return (da * b + a * db) / ((a + b) * (a + b));
}

double cutoff(double t) { return 1.0 - smooth_step(2.0 * t - 0.5); }
double cutoff_derivative(double t) { return -2.0 * smooth_step_derivative(2.0 * t - 0.5); }

CollarChart::CollarChart(const Domain& domain, FlowParams params)
    : CollarChart(domain, geometry::canonical_fields(domain), params) {}

CollarChart::CollarChart(const Domain& domain, const CanonicalFields& fields, FlowParams params)
    : domain_(domain), fields_(fields), params_(params) {
  if (params_.steps < 1) throw ParameterError("flow step count must be positive");
  if (params_.panels < 1) throw ParameterError("quadrature panel count must be positive");
  const auto g4 = geometry::gauss_legendre(4, 0.0, 1.0);
  const double h = 1.0 / params_.panels;
  for (int p = 0; p < params_.panels; ++p) {
    const double hi = -p * h;
    for (int q = 3; q >= 0; --q) {
      rule_.nodes.push_back(hi - h + h * g4.nodes[q]);
      rule_.weights.push_back(h * g4.weights[q]);
    }
  }
  for (int c = 0; c < domain_.boundary_components(); ++c) {
    const double R = domain_.component_radius(c);
    Point p = domain_.n() == 2 ? Point(Complex(R), Complex(0.0)) : Point(Complex(R));
    for (int i = 0; i < 2048; ++i) p = step(p, -2.0 / 2048);
    v_depth_.push_back(component_depth(domain_, p, c));
  }
}

Point CollarChart::step(const Point& x, double h) const {
  const VectorField& N = fields_.N;
  return numerics::rk4_step([&N](const Point& y) { return N.real_direction(y); }, x, h);
}

void CollarChart::check_escape(const Point& y, int component) const {
  if (!std::isfinite(y.norm2()) || y.norm() > 8.0)
    throw FlowEscapeError("flow trajectory left the chart outward");
  const double depth = component_depth(domain_, y, component);
  if (depth > v_depth_[component] * (1.0 + 1e-6) + 1e-9)
    throw FlowEscapeError("flow trajectory left the collar neighbourhood V");
}

Point CollarChart::flow(double t, const Point& x) const {
  if (std::abs(t) > 2.0 + 1e-12) throw ParameterError("flow time must satisfy |t| <= 2");
  if (t == 0.0) return x;
  const int c = domain_.n() == 1 ? domain_.nearest_component(x) : 0;
  check_escape(x, c);
  const int n = std::max(1, static_cast<int>(std::ceil(params_.steps * std::abs(t) - 1e-9)));
  const double h = t / n;
  Point y = x;
  for (int i = 0; i < n; ++i) {
    y = step(y, h);
    check_escape(y, c);
  }
  return y;
}

double CollarChart::try_hitting_time(const Point& x) const {
  const double r0 = domain_.defining(x);
  if (std::abs(r0) <= 1e-15) return 0.0;
  const double dir = r0 < 0.0 ? 1.0 : -1.0;
  const double h = dir / params_.steps;
  auto crossed = [&](const Point& y) { return dir > 0 ? domain_.defining(y) >= 0.0
                                                      : domain_.defining(y) <= 0.0; };
  Point y = x;
  for (int i = 0; i < 2 * params_.steps; ++i) {
    const Point z = step(y, h);
    if (!std::isfinite(z.norm2())) return -1.0;
    if (crossed(z)) {
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        const double m = 0.5 * (lo + hi);
        if (crossed(step(y, m * h)))
          hi = m;
        else
          lo = m;
      }
      return (i + 0.5 * (lo + hi)) * h;
    }
    y = z;
  }
  return -1.0;
}

double CollarChart::hitting_time(const Point& x) const {
  const double t = try_hitting_time(x);
  if (t < 0.0 && domain_.defining(x) <= 0.0)
    throw NotInCollarError("no boundary crossing within flow time 2");
  return t;
}

bool CollarChart::in_collar(const Point& x) const {
  const double t = try_hitting_time(x);
  return t >= 0.0 && t < 1.0;
}

double CollarChart::zeta(const Point& x) const {
  const double t = try_hitting_time(x);
  return t < 0.0 ? 0.0 : cutoff(t);
}

CollarChart::Trajectory CollarChart::trajectory(const Point& x) const {
  const double tx = hitting_time(x);
  Trajectory tr;
  const int c = domain_.n() == 1 ? domain_.nearest_component(x) : 0;
  Point y = x;
  double s = 0.0;
  for (double sq : rule_.nodes) {
    const double gap = s - sq;
    const int n = std::max(1, static_cast<int>(std::ceil(params_.steps * gap - 1e-9)));
    for (int i = 0; i < n; ++i) y = step(y, -gap / n);
    check_escape(y, c);
    s = sq;
    tr.x.push_back(y);
    tr.t.push_back(tx - sq);
  }
  return tr;
}

Complex CollarChart::antiderivative(const CollarFn& g, const Point& x, double tx, int mu,
                                    const std::vector<Complex>& gamma) const {
  if (tx < 0.0 || tx >= 1.0) return 0.0;
  const int c = domain_.n() == 1 ? domain_.nearest_component(x) : 0;
  Point y = x;
  double s = 0.0;
  Complex acc = 0.0;
  for (std::size_t q = 0; q < rule_.nodes.size(); ++q) {
    const double sq = rule_.nodes[q];
    const double gap = s - sq;
    const int n = std::max(1, static_cast<int>(std::ceil(params_.steps * gap - 1e-9)));
    for (int i = 0; i < n; ++i) y = step(y, -gap / n);
    check_escape(y, c);
    s = sq;
    Complex k = 0.0;
    for (std::size_t i = gamma.size(); i-- > 0;) k = k * sq + gamma[i];
    acc += rule_.weights[q] * std::pow(sq, mu) * k * g(y, tx - sq);
  }
  return acc;
}

Complex CollarChart::antiderivative(const CollarFn& g, const Point& x) const {
  return antiderivative(g, x, try_hitting_time(x));
}

std::vector<Complex> CollarChart::antiderivative(const CollarFn& g,
                                                 const std::vector<Point>& points) const {
  std::vector<Complex> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = antiderivative(g, points[i]);
  return out;
}

bergman::GridFunction CollarChart::antiderivative(
    const CollarFn& g, std::shared_ptr<const geometry::QuadratureGrid> grid) const {
  geometry::check_same_domain(grid->domain, domain_, "antiderivative");
  return {grid, antiderivative(g, grid->nodes)};
}

double CollarChart::hardy_majorant(const CollarFn& g, const Point& x, double tx, int mu) const {
  if (tx < 0.0 || tx >= 1.0) return 0.0;
  const Trajectory tr = trajectory(x);
  double acc = 0.0;
  for (std::size_t q = 0; q < tr.x.size(); ++q)
    acc += rule_.weights[q] * std::pow(tr.t[q], mu) * std::abs(g(tr.x[q], tr.t[q]));
  return acc;
}

Complex CollarChart::normal_derivative(const CollarFn& g, const Point& x, double tx,
                                       double h) const {
  auto at = [&](double e) { return g(step(x, e), tx - e); };
  return (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
}

std::string CollarChart::provenance() const {
  std::ostringstream os;
  os.precision(12);
  os << "domain=" << domain_.name() << " n_scale=" << fields_.n_scale
     << " collar_depth=" << fields_.collar_depth << " M=" << params_.steps
     << " Q=" << params_.panels;
  return os.str();
}

CollarFn masked(PointFn p) {
  return [p = std::move(p)](const Point& x, double t) -> Complex {
    const double z = cutoff(t);
    return z == 0.0 ? Complex(0.0) : z * p(x);
  };
}

Hardy1D hardy_1d(const std::function<double(double)>& f, int r, int nodes) {
  if (r < 0) throw ParameterError("Hardy exponent must be non-negative");
  const auto outer = geometry::gauss_legendre(nodes, 0.0, 1.0);
  Hardy1D out;
  for (int i = 0; i < nodes; ++i) {
    const double x = outer.nodes[i];
    const auto inner = geometry::gauss_legendre(nodes, x, 1.0);
    double F = 0.0;
    for (int j = 0; j < nodes; ++j) F += inner.weights[j] * f(inner.nodes[j]);
    out.lhs2 += outer.weights[i] * std::pow(x, 2 * r) * F * F;
    out.rhs2 += outer.weights[i] * std::pow(x, 2 * r + 2) * f(x) * f(x);
  }
  const double c = 2.0 / (2 * r + 1);
  out.rhs2 *= c * c;
  return out;
}

}  // namespace blab::flow
