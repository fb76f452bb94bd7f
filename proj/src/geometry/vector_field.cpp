#include "blab/geometry/vector_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blab/numerics/ode.hpp"

namespace blab::geometry {

VectorField::VectorField(std::string id, int dim, CoefficientFn fn, Tags tags)
    : id_(std::move(id)), dim_(dim), fn_(std::move(fn)), tags_(tags) {
  if (dim_ != 2 && dim_ != 4) throw ParameterError("vector field dimension must be 2 or 4");
}

VectorField VectorField::from_complex_form(
    std::string id, int n,
    std::function<void(const Point&, std::array<Complex, 2>&, std::array<Complex, 2>&)> fn,
    Tags tags) {
  auto coeffs = [fn, n](const Point& p) {
    std::array<Complex, 2> a{}, b{};
    fn(p, a, b);
    Coefficients c{};
    for (int j = 0; j < n; ++j) {
      c[2 * j] = 0.5 * (a[j] + b[j]);
      c[2 * j + 1] = 0.5 * kI * (b[j] - a[j]);
    }
    return c;
  };
  return VectorField(std::move(id), 2 * n, coeffs, tags);
}

Complex VectorField::holomorphic_part(const Point& p, int j) const {
  const Coefficients c = fn_(p);
  return c[2 * j] + kI * c[2 * j + 1];
}

Complex VectorField::antiholomorphic_part(const Point& p, int j) const {
  const Coefficients c = fn_(p);
  return c[2 * j] - kI * c[2 * j + 1];
}

Point VectorField::real_direction(const Point& p) const {
  const Coefficients c = fn_(p);
  Point d;
  d.dim = dim_;
  for (int i = 0; i < dim_; ++i) d.x[i] = c[i].real();
  return d;
}

VectorField VectorField::conjugate() const {
  auto f = fn_;
  Tags t = tags_;
  return VectorField("conj(" + id_ + ")", dim_,
                     [f](const Point& p) {
                       Coefficients c = f(p);
                       for (auto& v : c) v = std::conj(v);
                       return c;
                     },
                     t);
}

VectorField VectorField::complex_structure() const {
  auto f = fn_;
  const int n = dim_ / 2;
  Tags t{tags_.real, tags_.transversal && tags_.real, tags_.tangential && tags_.real};
  return VectorField("J(" + id_ + ")", dim_,
                     [f, n](const Point& p) {
                       const Coefficients c = f(p);
                       Coefficients out{};
                       for (int j = 0; j < n; ++j) {
                         out[2 * j] = -c[2 * j + 1];
                         out[2 * j + 1] = c[2 * j];
                       }
                       return out;
                     },
                     t);
}

VectorField VectorField::scaled(Complex a, std::string id) const {
  auto f = fn_;
  Tags t = tags_;
  t.real = t.real && a.imag() == 0.0;
  if (a == 0.0) t.transversal = false;
  return VectorField(id.empty() ? id_ + "*c" : std::move(id), dim_,
                     [f, a](const Point& p) {
                       Coefficients c = f(p);
                       for (auto& v : c) v *= a;
                       return c;
                     },
                     t);
}

VectorField VectorField::plus(const VectorField& other, std::string id) const {
  if (other.dim_ != dim_) throw ContractError("vector field dimension mismatch");
  auto f = fn_;
  auto g = other.fn_;
  Tags t{tags_.real && other.tags_.real, tags_.tangential && other.tags_.tangential, false};
  return VectorField(id.empty() ? id_ + "+" + other.id_ : std::move(id), dim_,
                     [f, g](const Point& p) {
                       Coefficients c = f(p);
                       const Coefficients d = g(p);
                       for (int i = 0; i < 4; ++i) c[i] += d[i];
                       return c;
                     },
                     t);
}

Complex VectorField::apply_to_defining(const Domain& domain, const Point& p) const {
  const auto g = domain.defining_gradient(p);
  const Coefficients c = fn_(p);
  Complex s = 0.0;
  for (int i = 0; i < dim_; ++i) s += c[i] * g[i];
  return s;
}

Complex VectorField::derivative(const std::function<Complex(const Point&)>& f, const Point& p,
                                double h) const {
  const Coefficients c = fn_(p);
  Point vr, vi;
  vr.dim = vi.dim = dim_;
  for (int i = 0; i < dim_; ++i) {
    vr.x[i] = c[i].real();
    vi.x[i] = c[i].imag();
  }
  auto dir = [&](const Point& v) -> Complex {
    const double len = v.norm();
    if (len == 0.0) return 0.0;
    const double e = h / len;
    const Point u = v * e;
    return (-f(p + u * 2.0) + 8.0 * f(p + u) - 8.0 * f(p - u) + f(p - u * 2.0)) / (12.0 * e);
  };
  return dir(vr) + kI * dir(vi);
}

Complex VectorField::apply_holomorphic(const Point& p, const std::array<Complex, 2>& dh) const {
  Complex s = 0.0;
  for (int j = 0; j < dim_ / 2; ++j) s += holomorphic_part(p, j) * dh[j];
  return s;
}

double default_collar_depth(const Domain& domain) {
  return domain.kind() == DomainKind::Annulus ? 0.25 * (1.0 - domain.inner_radius()) : 0.75;
}

namespace {

VectorField make_ln(const Domain& d) {
  const int n = d.n();
  return VectorField::from_complex_form(
      "Ln", n,
      [d, n](const Point& p, std::array<Complex, 2>& a, std::array<Complex, 2>& b) {
        for (int j = 0; j < n; ++j) {
          a[j] = d.defining_dzbar(p, j);
          b[j] = 0.0;
        }
      });
}

VectorField make_t0(const Domain& d) {
  const int n = d.n();
  return VectorField::from_complex_form(
      "T0", n,
      [d, n](const Point& p, std::array<Complex, 2>& a, std::array<Complex, 2>& b) {
        for (int j = 0; j < n; ++j) {
          const Complex r = d.defining_dzbar(p, j);
          a[j] = kI * r;
          b[j] = -kI * std::conj(r);
        }
      },
      {true, true, false});
}

// Flow time under `field` from the boundary point p backwards until the
// boundary distance reaches `depth`.
double time_to_depth(const Domain& d, const VectorField& field, const Point& p, double depth) {
  numerics::RealField back = [&field](const Point& x) { return field.real_direction(x) * -1.0; };
  auto dist = [&d](const Point& x) {
    const double r = x.norm();
    double e = 1.0 - r;
    if (d.kind() == DomainKind::Annulus) e = std::min(e, r - d.inner_radius());
    return e;
  };
  const double h = 1.0 / 1024;
  Point x = p;
  double t = 0.0;
  for (int step = 0; step < 1024 * 200; ++step) {
    const Point y = numerics::rk4_step(back, x, h);
    if (dist(y) >= depth) {
      double lo = 0.0, hi = h;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double m = 0.5 * (lo + hi);
        if (dist(numerics::rk4_step(back, x, m)) >= depth)
          hi = m;
        else
          lo = m;
      }
      return t + 0.5 * (lo + hi);
    }
    x = y;
    t += h;
  }
  throw FlowEscapeError("collar depth not reached by the normal flow");
}

}  // namespace

CanonicalFields canonical_fields(const Domain& domain) {
  return canonical_fields(domain, default_collar_depth(domain));
}

CanonicalFields canonical_fields(const Domain& domain, double collar_depth) {
  if (!(collar_depth > 0.0)) throw ParameterError("collar depth must be positive");
  if (domain.kind() == DomainKind::Annulus) {
    const double rho = domain.inner_radius();
    const double r_mid = std::sqrt(0.5 * (1.0 + rho * rho));
    if (1.0 - collar_depth <= r_mid)
      throw ParameterError("annulus collar reaches the zero set of the normal field");
  } else if (collar_depth >= 1.0) {
    throw ParameterError("collar depth must be below 1");
  }
  CanonicalFields cf;
  cf.collar_depth = collar_depth;
  cf.Ln = make_ln(domain);
  cf.T0 = make_t0(domain);
  const VectorField n0 = cf.T0.complex_structure().scaled(-1.0, "N0");
  const Point p = domain.kind() == DomainKind::Ball2 ? Point(Complex(1.0), Complex(0.0))
                                                     : Point(Complex(1.0));
  const double t_edge = time_to_depth(domain, n0, p, collar_depth);
  cf.n_scale = t_edge / 2.0;
  cf.N = n0.scaled(cf.n_scale, "N");
  cf.N = VectorField("N", n0.dim(), [f = cf.N](const Point& x) { return f(x); },
                     {true, false, true});
  cf.T1 = VectorField("T1", n0.dim(),
                      [f = cf.N.complex_structure().scaled(-1.0)](const Point& x) { return f(x); },
                      {true, true, false});
  return cf;
}

double transversality_measure(const VectorField& X, const Domain& domain, int samples) {
  double scale = 0.0;
  for (const Point& p : domain.boundary_samples(samples))
    for (const Complex& c : X(p)) scale = std::max(scale, std::abs(c));
  if (tangency_defect(X, domain, samples) > 1e-8 * std::max(scale, 1.0))
    throw ContractError("transversality measure needs a tangential field, got " + X.id());
  double m = std::numeric_limits<double>::infinity();
  for (const Point& p : domain.boundary_samples(samples)) {
    Complex num = 0.0;
    double den = 0.0;
    for (int j = 0; j < domain.n(); ++j) {
      const Complex rz = std::conj(domain.defining_dzbar(p, j));  // rho_{z_j}
      num += X.holomorphic_part(p, j) * rz;
      den += std::norm(rz);
    }
    m = std::min(m, std::abs(num / (kI * den)));
  }
  return m;
}

double tangency_defect(const VectorField& X, const Domain& domain, int samples) {
  double m = 0.0;
  for (const Point& p : domain.boundary_samples(samples)) {
    const auto g = domain.defining_gradient(p);
    double gn = 0.0;
    for (double v : g) gn += v * v;
    m = std::max(m, std::abs(X.apply_to_defining(domain, p)) / std::sqrt(gn));
  }
  return m;
}

}  // namespace blab::geometry
