#pragma once

#include <string>
#include <vector>

#include "blab/core.hpp"

namespace blab::geometry {

enum class DomainKind { Disk, Annulus, Ball2 };

std::string to_string(DomainKind kind);
DomainKind parse_domain_kind(const std::string& name);

/// Model domain with its standard defining function rho (negative inside).
///   disk:    |z|^2 - 1
///   annulus: (|z|^2 - 1)(|z|^2 - rho^2)
///   ball2:   |z1|^2 + |z2|^2 - 1
class Domain {
 public:
  Domain() = default;

  DomainKind kind() const { return kind_; }
  double inner_radius() const { return inner_; }
  int n() const { return kind_ == DomainKind::Ball2 ? 2 : 1; }
  int real_dim() const { return 2 * n(); }
  std::string name() const;

  double defining(const Point& p) const;
  /// d rho / d zbar_j.
  Complex defining_dzbar(const Point& p, int j) const;
  /// Real gradient of rho; entries beyond real_dim() are zero.
  std::array<double, 4> defining_gradient(const Point& p) const;

  double volume() const;
  bool in_closure(const Point& p, double tol = 1e-12) const;
  /// Euclidean distance to the boundary for points of the closure.
  /// Throws DomainError for exterior points.
  double boundary_distance(const Point& p) const;
  /// Distance to the closure; zero on the closure.
  double exterior_distance(const Point& p) const;

  /// Boundary components are circles (planar domains) or the unit sphere.
  int boundary_components() const { return kind_ == DomainKind::Annulus ? 2 : 1; }
  double component_radius(int b) const { return b == 0 ? 1.0 : inner_; }
  /// Identifies the boundary component nearest to p.
  int nearest_component(const Point& p) const;

  /// `count` points per boundary component.
  std::vector<Point> boundary_samples(int count) const;

  friend Domain make_domain(DomainKind kind, double rho);

 private:
  DomainKind kind_ = DomainKind::Disk;
  double inner_ = 0.0;
};

/// Throws ParameterError for rho outside (0, 1) on the annulus.
Domain make_domain(DomainKind kind, double rho = 0.5);

void check_same_domain(const Domain& a, const Domain& b, const char* what);

}  // namespace blab::geometry
