#include "blab/bergman/holomorphic.hpp"

#include <cmath>
#include <sstream>

namespace blab::bergman {

Complex monomial_derivative(Complex z, int k, int j) {
  if (j < 0) throw ParameterError("derivative order must be non-negative");
  double f = 1.0;
  for (int i = 0; i < j; ++i) f *= (k - i);
  if (f == 0.0) return 0.0;
  const int e = k - j;
  if (e == 0) return f;
  return f * std::pow(z, e);
}

HolomorphicFunction laurent_polynomial(std::string id, std::map<int, Complex> coeffs) {
  for (auto it = coeffs.begin(); it != coeffs.end();)
    it = it->second == 0.0 ? coeffs.erase(it) : std::next(it);
  HolomorphicFunction h;
  h.id = std::move(id);
  h.n = 1;
  h.eval = [coeffs](const Point& p, MultiIndex o) {
    const Complex z = p.z(0);
    Complex s = 0.0;
    for (const auto& [m, c] : coeffs) s += c * monomial_derivative(z, m, o.a);
    return s;
  };
  h.laurent = [coeffs](int m) {
    auto it = coeffs.find(m);
    return it == coeffs.end() ? Complex(0.0) : it->second;
  };
  h.mmin = coeffs.empty() ? 0 : coeffs.begin()->first;
  h.mmax = coeffs.empty() ? -1 : coeffs.rbegin()->first;
  return h;
}

HolomorphicFunction power_family(Complex a, double p) {
  if (!(std::abs(a) < 1.0)) throw ParameterError("power family needs |a| < 1");
  HolomorphicFunction h;
  std::ostringstream os;
  os << "(1-" << a.real() << "z)^-" << p;
  h.id = os.str();
  h.n = 1;
  h.eval = [a, p](const Point& x, MultiIndex o) {
    // d^j (1 - a z)^{-p} = (p)_j a^j (1 - a z)^{-p-j}
    double poch = 1.0;
    for (int i = 0; i < o.a; ++i) poch *= (p + i);
    return poch * std::pow(a, o.a) * std::pow(1.0 - a * x.z(0), -p - o.a);
  };
  h.laurent = [a, p](int m) -> Complex {
    if (m < 0) return 0.0;
    const double lg = std::lgamma(p + m) - std::lgamma(p) - std::lgamma(m + 1.0);
    return std::exp(lg) * std::pow(a, m);
  };
  h.mmin = 0;
  h.mmax = INT_MAX;
  return h;
}

HolomorphicFunction constant(Complex c, int n) {
  HolomorphicFunction h;
  h.id = "const";
  h.n = n;
  h.eval = [c](const Point&, MultiIndex o) { return o.a == 0 && o.b == 0 ? c : Complex(0.0); };
  if (n == 1) {
    h.laurent = [c](int m) { return m == 0 ? c : Complex(0.0); };
    h.mmin = 0;
    h.mmax = 0;
  }
  return h;
}

}  // namespace blab::bergman
