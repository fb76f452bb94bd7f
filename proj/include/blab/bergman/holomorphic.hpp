#pragma once

#include <climits>
#include <functional>
#include <map>
#include <string>

#include "blab/core.hpp"

namespace blab::bergman {

/// Exponent of the monomial z1^a z2^b.  For n = 1 only `a` is used; on the
/// annulus `a` may be negative.
struct MultiIndex {
  int a = 0;
  int b = 0;
  int total() const { return a + b; }
  bool operator==(const MultiIndex& o) const { return a == o.a && b == o.b; }
  bool operator<(const MultiIndex& o) const { return a != o.a ? a < o.a : b < o.b; }
};

/// Holomorphic function given through its complex derivatives.
///   eval(p, j) = d^j f / dz^j (n = 1) or d^{j} f / dz1^{j.a} dz2^{j.b}.
/// Planar functions may also expose Laurent coefficients a_m, m in
/// [mmin, mmax] (mmax = INT_MAX for an infinite series).
struct HolomorphicFunction {
  std::string id;
  int n = 1;
  std::function<Complex(const Point&, MultiIndex)> eval;
  std::function<Complex(int)> laurent;
  int mmin = 0;
  int mmax = -1;

  Complex operator()(const Point& p) const { return eval(p, {}); }
  Complex derivative(const Point& p, int order) const { return eval(p, {order, 0}); }
  bool has_laurent() const { return static_cast<bool>(laurent); }
};

/// d^j z^k / dz^j.
Complex monomial_derivative(Complex z, int k, int j);

/// Finite Laurent polynomial sum_m c_m z^m.
HolomorphicFunction laurent_polynomial(std::string id, std::map<int, Complex> coeffs);

/// (1 - a z)^{-p}, |a| < 1.
HolomorphicFunction power_family(Complex a, double p);

HolomorphicFunction constant(Complex c, int n = 1);

}  // namespace blab::bergman
