#pragma once

#include <memory>
#include <string>
#include <vector>

#include "blab/geometry/domain.hpp"

namespace blab::geometry {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [a, b].
Rule1D gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Tensor quadrature on the domain.
///   disk/annulus: Gauss-Legendre in r (weights include r), trapezoid in theta.
///   ball2: z = (R cos(phi) e^{i t1}, R sin(phi) e^{i t2}) with
///          dV = R^3 cos(phi) sin(phi) dR dphi dt1 dt2; GL in R and in
///          u = sin^2(phi), which makes monomial integrands polynomial.
/// Planar nodes are ordered radius-major: index = i_r * ntheta + i_theta.
struct QuadratureGrid {
  Domain domain;
  int nr = 0;
  int ntheta = 0;
  double margin = 1e-3;  // inset used by derivative-evaluation grids
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  std::string id() const;
  double integrate(const std::vector<double>& values) const;
  Complex integrate(const std::vector<Complex>& values) const;
};

/// Throws ParameterError for nr, ntheta < 4 or delta outside [0, 0.1].
QuadratureGrid quadrature_grid(const Domain& domain, int nr, int ntheta,
                               double delta = 1e-3);

/// Uniform polar grid inset by delta from the boundary (and from the origin
/// on the disk), used for finite-difference derivatives of sampled data.
/// Integration weights are composite Simpson in r (trapezoid if nr is even)
/// times r, trapezoid in theta.  Planar domains only.
struct PolarEvalGrid {
  Domain domain;
  int nr = 0;
  int ntheta = 0;
  double delta = 1e-3;
  double r0 = 0.0;
  double dr = 0.0;
  std::vector<double> radii;
  std::vector<double> angles;

  std::size_t size() const { return radii.size() * angles.size(); }
  Point node(int i, int k) const;
  std::vector<double> weights() const;
  std::string id() const;
};

PolarEvalGrid polar_eval_grid(const Domain& domain, int nr, int ntheta,
                              double delta = 1e-3);

/// Dense grid for sup norms; contains the origin (disk, ball2) and the
/// boundary circles.
std::vector<Point> sup_grid(const Domain& domain, int nr, int ntheta);

void write_csv(const QuadratureGrid& grid, const std::string& path);

}  // namespace blab::geometry
