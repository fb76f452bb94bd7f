#include "blab/geometry/quadrature.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace blab::geometry {

namespace {
// Legendre P_n(x) and its derivative.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}
}  // namespace

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ParameterError("Gauss-Legendre rule needs n >= 1");
  Rule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

std::string QuadratureGrid::id() const {
  std::ostringstream os;
  os << domain.name() << ":quad:nr=" << nr << ":ntheta=" << ntheta;
  return os.str();
}

double QuadratureGrid::integrate(const std::vector<double>& values) const {
  if (values.size() != nodes.size())
    throw ContractError("integrand size does not match quadrature grid");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * values[i];
  return s;
}

Complex QuadratureGrid::integrate(const std::vector<Complex>& values) const {
  if (values.size() != nodes.size())
    throw ContractError("integrand size does not match quadrature grid");
  Complex s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * values[i];
  return s;
}

QuadratureGrid quadrature_grid(const Domain& domain, int nr, int ntheta, double delta) {
  if (nr < 4 || ntheta < 4) throw ParameterError("quadrature resolution must be >= 4");
  if (!(delta >= 0.0 && delta <= 0.1)) throw ParameterError("margin delta must lie in [0, 0.1]");
  QuadratureGrid g;
  g.domain = domain;
  g.nr = nr;
  g.ntheta = ntheta;
  g.margin = delta;
  const double dth = 2 * kPi / ntheta;
  if (domain.kind() == DomainKind::Ball2) {
    const Rule1D rr = gauss_legendre(nr, 0.0, 1.0);
    // u = sin^2(phi): cos(phi) sin(phi) dphi = du / 2 and |z2|^2 = R^2 u.
    const Rule1D ru = gauss_legendre(nr, 0.0, 1.0);
    g.nodes.reserve(static_cast<std::size_t>(nr) * nr * ntheta * ntheta);
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < nr; ++j) {
        const double R = rr.nodes[i], u = ru.nodes[j];
        const double w = rr.weights[i] * ru.weights[j] * 0.5 * R * R * R * dth * dth;
        for (int a = 0; a < ntheta; ++a)
          for (int b = 0; b < ntheta; ++b) {
            g.nodes.emplace_back(std::polar(R * std::sqrt(1.0 - u), a * dth),
                                 std::polar(R * std::sqrt(u), b * dth));
            g.weights.push_back(w);
          }
      }
    return g;
  }
  const double r_in = domain.kind() == DomainKind::Annulus ? domain.inner_radius() : 0.0;
  const Rule1D rr = gauss_legendre(nr, r_in, 1.0);
  for (int i = 0; i < nr; ++i)
    for (int k = 0; k < ntheta; ++k) {
      g.nodes.emplace_back(std::polar(rr.nodes[i], k * dth));
      g.weights.push_back(rr.weights[i] * rr.nodes[i] * dth);
    }
  return g;
}

Point PolarEvalGrid::node(int i, int k) const { return Point(std::polar(radii[i], angles[k])); }

std::vector<double> PolarEvalGrid::weights() const {
  std::vector<double> wr(nr, dr);
  if (nr % 2 == 1 && nr >= 3) {
    for (int i = 0; i < nr; ++i) wr[i] = dr / 3.0 * (i == 0 || i == nr - 1 ? 1 : (i % 2 ? 4 : 2));
  } else {
    wr.front() *= 0.5;
    wr.back() *= 0.5;
  }
  const double dth = 2 * kPi / ntheta;
  std::vector<double> w(size());
  for (int i = 0; i < nr; ++i)
    for (int k = 0; k < ntheta; ++k) w[i * ntheta + k] = wr[i] * radii[i] * dth;
  return w;
}

std::string PolarEvalGrid::id() const {
  std::ostringstream os;
  os << domain.name() << ":fd:nr=" << nr << ":ntheta=" << ntheta << ":delta=" << delta;
  return os.str();
}

PolarEvalGrid polar_eval_grid(const Domain& domain, int nr, int ntheta, double delta) {
  if (domain.kind() == DomainKind::Ball2)
    throw ContractError("polar evaluation grids are defined for planar domains only");
  if (nr < 2 || ntheta < 1) throw ParameterError("evaluation grid needs nr >= 2, ntheta >= 1");
  if (!(delta > 0.0 && delta < 0.1)) throw ParameterError("inset delta must lie in (0, 0.1)");
  PolarEvalGrid g;
  g.domain = domain;
  g.nr = nr;
  g.ntheta = ntheta;
  g.delta = delta;
  const double r_in = domain.kind() == DomainKind::Annulus ? domain.inner_radius() : 0.0;
  g.r0 = r_in + delta;
  g.dr = (1.0 - delta - g.r0) / (nr - 1);
  for (int i = 0; i < nr; ++i) g.radii.push_back(g.r0 + i * g.dr);
  for (int k = 0; k < ntheta; ++k) g.angles.push_back(2 * kPi * k / ntheta);
  return g;
}

std::vector<Point> sup_grid(const Domain& domain, int nr, int ntheta) {
  if (nr < 1 || ntheta < 1) throw ParameterError("sup grid resolution must be >= 1");
  std::vector<Point> pts;
  if (domain.kind() == DomainKind::Ball2) {
    pts.emplace_back(Complex(0), Complex(0));
    for (int i = 1; i <= nr; ++i)
      for (int j = 0; j <= nr; ++j) {
        const double R = double(i) / nr, phi = j * kPi / (2.0 * nr);
        for (int a = 0; a < ntheta; ++a)
          for (int b = 0; b < ntheta; ++b)
            pts.emplace_back(std::polar(R * std::cos(phi), 2 * kPi * a / ntheta),
                             std::polar(R * std::sin(phi), 2 * kPi * b / ntheta));
      }
    return pts;
  }
  const double r_in = domain.kind() == DomainKind::Annulus ? domain.inner_radius() : 0.0;
  if (r_in == 0.0) pts.emplace_back(Complex(0));
  const int i0 = r_in == 0.0 ? 1 : 0;
  for (int i = i0; i <= nr; ++i) {
    const double r = r_in + (1.0 - r_in) * i / nr;
    for (int k = 0; k < ntheta; ++k) pts.emplace_back(std::polar(r, 2 * kPi * k / ntheta));
  }
  return pts;
}

void write_csv(const QuadratureGrid& grid, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out << std::setprecision(17);
  out << (grid.domain.n() == 1 ? "x,y,weight\n" : "x1,y1,x2,y2,weight\n");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int c = 0; c < grid.domain.real_dim(); ++c) out << grid.nodes[i][c] << ',';
    out << grid.weights[i] << '\n';
  }
}

}  // namespace blab::geometry
