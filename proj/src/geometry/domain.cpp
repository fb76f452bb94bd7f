#include "blab/geometry/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace blab::geometry {

std::string to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::Disk:
      return "disk";
    case DomainKind::Annulus:
      return "annulus";
    case DomainKind::Ball2:
      return "ball2";
  }
  return "unknown";
}

DomainKind parse_domain_kind(const std::string& name) {
  if (name == "disk") return DomainKind::Disk;
  if (name == "annulus") return DomainKind::Annulus;
  if (name == "ball2") return DomainKind::Ball2;
  throw ParameterError("unknown domain kind '" + name + "'");
}

Domain make_domain(DomainKind kind, double rho) {
  Domain d;
  d.kind_ = kind;
  if (kind == DomainKind::Annulus) {
    if (!(rho > 0.0 && rho < 1.0)) {
      std::ostringstream os;
      os << "annulus inner radius must lie in (0,1), got " << rho;
      throw ParameterError(os.str());
    }
    d.inner_ = rho;
  }
  return d;
}

void check_same_domain(const Domain& a, const Domain& b, const char* what) {
  if (a.kind() != b.kind() || a.inner_radius() != b.inner_radius())
    throw ContractError(std::string(what) + ": domain mismatch (" + a.name() +
                        " vs " + b.name() + ")");
}

std::string Domain::name() const {
  if (kind_ == DomainKind::Annulus) {
    std::ostringstream os;
    os << "annulus(rho=" << inner_ << ")";
    return os.str();
  }
  return to_string(kind_);
}

double Domain::defining(const Point& p) const {
  const double r2 = p.norm2();
  switch (kind_) {
    case DomainKind::Disk:
    case DomainKind::Ball2:
      return r2 - 1.0;
    case DomainKind::Annulus:
      return (r2 - 1.0) * (r2 - inner_ * inner_);
  }
  return 0.0;
}

Complex Domain::defining_dzbar(const Point& p, int j) const {
  const Complex z = p.z(j);
  if (kind_ == DomainKind::Annulus) {
    const double r2 = p.norm2();
    return z * (2.0 * r2 - 1.0 - inner_ * inner_);
  }
  return z;
}

std::array<double, 4> Domain::defining_gradient(const Point& p) const {
  // For real rho, grad = 2 (Re, Im) of d rho / d zbar.
  std::array<double, 4> g{};
  for (int j = 0; j < n(); ++j) {
    const Complex c = defining_dzbar(p, j);
    g[2 * j] = 2.0 * c.real();
    g[2 * j + 1] = 2.0 * c.imag();
  }
  return g;
}

double Domain::volume() const {
  switch (kind_) {
    case DomainKind::Disk:
      return kPi;
    case DomainKind::Annulus:
      return kPi * (1.0 - inner_ * inner_);
    case DomainKind::Ball2:
      return kPi * kPi / 2.0;
  }
  return 0.0;
}

bool Domain::in_closure(const Point& p, double tol) const {
  return exterior_distance(p) <= tol;
}

double Domain::exterior_distance(const Point& p) const {
  const double r = p.norm();
  double e = std::max(0.0, r - 1.0);
  if (kind_ == DomainKind::Annulus) e = std::max(e, inner_ - r);
  return e;
}

double Domain::boundary_distance(const Point& p) const {
  const double r = p.norm();
  const double tol = 1e-12;
  double d = 1.0 - r;
  if (kind_ == DomainKind::Annulus) d = std::min(d, r - inner_);
  if (d < -tol) {
    std::ostringstream os;
    os << "point at radius " << r << " lies outside " << name();
    throw DomainError(os.str());
  }
  return std::max(d, 0.0);
}

int Domain::nearest_component(const Point& p) const {
  if (kind_ != DomainKind::Annulus) return 0;
  const double r = p.norm();
  return std::abs(1.0 - r) <= std::abs(r - inner_) ? 0 : 1;
}

std::vector<Point> Domain::boundary_samples(int count) const {
  if (count <= 0) throw ParameterError("boundary sample count must be positive");
  std::vector<Point> out;
  if (kind_ == DomainKind::Ball2) {
    // Torus slices (cos(phi) e^{i a}, sin(phi) e^{i b}).
    const int m = std::max(1, static_cast<int>(std::lround(std::cbrt(count))));
    for (int i = 0; i < m; ++i) {
      const double phi = (i + 0.5) * kPi / (2.0 * m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          const double ta = 2 * kPi * a / m, tb = 2 * kPi * b / m + 0.3;
          out.emplace_back(std::polar(std::cos(phi), ta), std::polar(std::sin(phi), tb));
        }
    }
    return out;
  }
  for (int b = 0; b < boundary_components(); ++b)
    for (int k = 0; k < count; ++k)
      out.emplace_back(std::polar(component_radius(b), 2 * kPi * k / count));
  return out;
}

}  // namespace blab::geometry
