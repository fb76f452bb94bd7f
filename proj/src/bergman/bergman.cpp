#include "blab/bergman/bergman.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace blab::bergman {

using geometry::DomainKind;

double monomial_l2_norm(const Domain& domain, MultiIndex e) {
  switch (domain.kind()) {
    case DomainKind::Disk:
      if (e.a < 0) throw ParameterError("negative exponent on the disk");
      return std::sqrt(kPi / (e.a + 1.0));
    case DomainKind::Annulus: {
      const double rho = domain.inner_radius();
      if (e.a == -1) return std::sqrt(2 * kPi * std::log(1.0 / rho));
      return std::sqrt(kPi * (1.0 - std::pow(rho, 2.0 * e.a + 2.0)) / (e.a + 1.0));
    }
    case DomainKind::Ball2: {
      if (e.a < 0 || e.b < 0) throw ParameterError("negative exponent on the ball");
      const double lg = std::lgamma(e.a + 1.0) + std::lgamma(e.b + 1.0) - std::lgamma(e.a + e.b + 3.0);
      return kPi * std::exp(0.5 * lg);
    }
  }
  return 0.0;
}

OrthonormalBasis::OrthonormalBasis(Domain domain, std::vector<MultiIndex> exponents)
    : domain_(domain), exps_(std::move(exponents)) {
  norms_.reserve(exps_.size());
  for (const auto& e : exps_) norms_.push_back(monomial_l2_norm(domain_, e));
}

int OrthonormalBasis::index_of(MultiIndex e) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] == e) return static_cast<int>(i);
  return -1;
}

std::string OrthonormalBasis::label() const {
  std::ostringstream os;
  os << domain_.name() << ":monomial:" << exps_.size();
  return os.str();
}

Complex OrthonormalBasis::value(std::size_t i, const Point& p, MultiIndex d) const {
  const MultiIndex& e = exps_[i];
  Complex v = monomial_derivative(p.z(0), e.a, d.a);
  if (domain_.n() == 2) v *= monomial_derivative(p.z(1), e.b, d.b);
  return v / norms_[i];
}

int default_basis_size(const Domain& domain) {
  return domain.kind() == DomainKind::Ball2 ? 10 : 32;
}

OrthonormalBasis build_basis(const Domain& domain, int size) {
  if (size < 1) throw ParameterError("basis size must be at least 1");
  std::vector<MultiIndex> e;
  switch (domain.kind()) {
    case DomainKind::Disk:
      for (int k = 0; k < size; ++k) e.push_back({k, 0});
      break;
    case DomainKind::Annulus:
      for (int k = -(size / 2); k <= (size + 1) / 2 - 1; ++k) e.push_back({k, 0});
      break;
    case DomainKind::Ball2:
      for (int d = 0; d <= size; ++d)
        for (int a = d; a >= 0; --a) e.push_back({a, d - a});
      break;
  }
  return OrthonormalBasis(domain, std::move(e));
}

GridFunction sample(std::shared_ptr<const QuadratureGrid> grid,
                    const std::function<Complex(const Point&)>& f) {
  GridFunction g;
  g.values.reserve(grid->size());
  for (const Point& p : grid->nodes) g.values.push_back(f(p));
  g.grid = std::move(grid);
  return g;
}

CoefficientVector project(const GridFunction& f, const OrthonormalBasis& basis) {
  if (!f.grid) throw ContractError("grid function without grid");
  geometry::check_same_domain(f.grid->domain, basis.domain(), "project");
  if (f.values.size() != f.grid->size()) throw ContractError("grid function size mismatch");
  CoefficientVector out;
  out.basis_label = basis.label();
  out.c.assign(basis.size(), 0.0);
  const auto& g = *f.grid;
  for (std::size_t q = 0; q < g.size(); ++q) {
    const Complex fw = f.values[q] * g.weights[q];
    if (fw == 0.0) continue;
    for (std::size_t i = 0; i < basis.size(); ++i)
      out.c[i] += fw * std::conj(basis.value(i, g.nodes[q]));
  }
  return out;
}

static void check_label(const CoefficientVector& c, const OrthonormalBasis& basis) {
  if (c.basis_label != basis.label() || c.c.size() != basis.size())
    throw ContractError("coefficient vector does not belong to basis " + basis.label());
}

std::vector<Complex> synthesize(const CoefficientVector& c, const OrthonormalBasis& basis,
                                const std::vector<Point>& points, MultiIndex order) {
  check_label(c, basis);
  std::vector<Complex> out(points.size(), 0.0);
  for (std::size_t q = 0; q < points.size(); ++q)
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (c.c[i] != 0.0) out[q] += c.c[i] * basis.value(i, points[q], order);
  return out;
}

HolomorphicFunction as_holomorphic(const CoefficientVector& c, const OrthonormalBasis& basis) {
  check_label(c, basis);
  if (basis.domain().n() == 1) {
    std::map<int, Complex> m;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (c.c[i] != 0.0) m[basis.exponent(i).a] = c.c[i] / basis.monomial_norm(i);
    auto h = laurent_polynomial("expansion", m);
    return h;
  }
  HolomorphicFunction h;
  h.id = "expansion";
  h.n = 2;
  h.eval = [c, basis](const Point& p, MultiIndex o) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (c.c[i] != 0.0) s += c.c[i] * basis.value(i, p, o);
    return s;
  };
  return h;
}

namespace {

void check_kernel_args(const Domain& domain, const Point& z, const Point& w) {
  if (z.dim != domain.real_dim() || w.dim != domain.real_dim())
    throw ContractError("kernel arguments have the wrong dimension");
  if (!domain.in_closure(z) || !domain.in_closure(w))
    throw DomainError("kernel arguments must lie in the domain");
}

}  // namespace

Complex kernel_eval(const Domain& domain, const Point& z, const Point& w, int size) {
  check_kernel_args(domain, z, w);
  switch (domain.kind()) {
    case DomainKind::Disk: {
      const Complex d = 1.0 - z.z(0) * std::conj(w.z(0));
      if (std::abs(d) < 1e-12) throw NearSingularError("kernel evaluated at |1 - z conj(w)| < 1e-12");
      return 1.0 / (kPi * d * d);
    }
    case DomainKind::Ball2: {
      const Complex d = 1.0 - z.z(0) * std::conj(w.z(0)) - z.z(1) * std::conj(w.z(1));
      if (std::abs(d) < 1e-12) throw NearSingularError("kernel evaluated at |1 - <z,w>| < 1e-12");
      return 2.0 / (kPi * kPi * d * d * d);
    }
    case DomainKind::Annulus: {
      const double rho = domain.inner_radius();
      const double q = std::abs(z.z(0)) * std::abs(w.z(0));
      if (q > 1.0 - 1e-12 || q < rho * rho + 1e-12)
        throw NearSingularError("annulus kernel evaluated at a boundary singularity");
      const Complex zw = z.z(0) * std::conj(w.z(0));
      Complex s = 0.0;
      for (int k = -(size / 2); k <= (size + 1) / 2 - 1; ++k) {
        const double n = monomial_l2_norm(domain, {k, 0});
        s += std::pow(zw, k) / (n * n);
      }
      return s;
    }
  }
  return 0.0;
}

double kernel_truncation_bound(const Domain& domain, const Point& z, const Point& w, int size) {
  if (domain.kind() != DomainKind::Annulus) return 0.0;
  check_kernel_args(domain, z, w);
  const double q = std::abs(z.z(0)) * std::abs(w.z(0));
  double bound = 0.0;
  for (int sign : {1, -1}) {
    const int first = sign > 0 ? (size + 1) / 2 : size / 2 + 1;
    for (int j = first; j < first + 200000; ++j) {
      const int k = sign * j;
      const double n = monomial_l2_norm(domain, {k, 0});
      const double term = std::pow(q, k) / (n * n);
      bound += term;
      if (term < 1e-18 * (bound + 1e-300) || term < 1e-300) break;
    }
  }
  return bound;
}

double gram_defect(const OrthonormalBasis& basis, const QuadratureGrid& grid) {
  geometry::check_same_domain(grid.domain, basis.domain(), "gram_defect");
  const Eigen::Index nq = static_cast<Eigen::Index>(grid.size());
  const Eigen::Index nb = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd V(nq, nb);
  for (Eigen::Index q = 0; q < nq; ++q) {
    const double sw = std::sqrt(grid.weights[q]);
    for (Eigen::Index i = 0; i < nb; ++i) V(q, i) = sw * basis.value(i, grid.nodes[q]);
  }
  const Eigen::MatrixXcd G = V.adjoint() * V;
  return (G - Eigen::MatrixXcd::Identity(nb, nb)).cwiseAbs().maxCoeff();
}

void write_csv(const CoefficientVector& c, const OrthonormalBasis& basis, const std::string& path) {
  check_label(c, basis);
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out << std::setprecision(17);
  out << (basis.domain().n() == 1 ? "index,k,re,im\n" : "index,a,b,re,im\n");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out << i << ',' << basis.exponent(i).a << ',';
    if (basis.domain().n() == 2) out << basis.exponent(i).b << ',';
    out << c.c[i].real() << ',' << c.c[i].imag() << '\n';
  }
}

}  // namespace blab::bergman
