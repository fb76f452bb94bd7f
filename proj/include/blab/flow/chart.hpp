#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "blab/bergman/bergman.hpp"
#include "blab/geometry/quadrature.hpp"
#include "blab/geometry/vector_field.hpp"

namespace blab::flow {

using geometry::CanonicalFields;
using geometry::Domain;
using geometry::VectorField;
using PointFn = std::function<Complex(const Point&)>;
/// Function on the collar evaluated with the flow time t = t_x already known.
using CollarFn = std::function<Complex(const Point& x, double t)>;

struct FlowParams {
  int steps = 64;   // M: RK4 steps per unit flow time
  int panels = 32;  // Q: Gauss panels on [-1, 0], four nodes each
};

/// C^infinity step: 0 for u <= 0, 1 for u >= 1,
///   S(u) = e^{-1/u} / (e^{-1/u} + e^{-1/(1-u)}).
double smooth_step(double u);
double smooth_step_derivative(double u);

/// Cutoff in the flow time: 1 for t <= 1/4, 0 for t >= 3/4.
double cutoff(double t);
double cutoff_derivative(double t);

/// Points inside the collar carry their flow time to the boundary, t_x,
/// defined by phi(t_x, x) in bOmega.  U = {t_x < 1}, V = {t_x <= 2}.
class CollarChart {
 public:
  explicit CollarChart(const Domain& domain, FlowParams params = {});
  CollarChart(const Domain& domain, const CanonicalFields& fields, FlowParams params = {});

  const Domain& domain() const { return domain_; }
  const CanonicalFields& fields() const { return fields_; }
  const VectorField& normal() const { return fields_.N; }
  double n_scale() const { return fields_.n_scale; }
  const FlowParams& params() const { return params_; }

  /// phi(t, x): RK4 with ceil(M |t|) equal steps.  Throws ParameterError for
  /// |t| > 2 and FlowEscapeError when the trajectory leaves V or runs off to
  /// infinity.
  Point flow(double t, const Point& x) const;

  /// t_x by marching the flow and bisecting on the defining function.
  /// Throws NotInCollarError when no sign change occurs for |t| <= 2.
  double hitting_time(const Point& x) const;
  /// t_x, or a negative value when x is outside V.
  double try_hitting_time(const Point& x) const;
  bool in_collar(const Point& x) const;
  double zeta(const Point& x) const;

  /// Composite four-point Gauss rule on [-1, 0] with Q panels, nodes descending.
  const geometry::Rule1D& rule() const { return rule_; }

  /// Positions phi(s_q, x) at the rule nodes with flow times t_x - s_q.
  struct Trajectory {
    std::vector<Point> x;
    std::vector<double> t;
  };
  Trajectory trajectory(const Point& x) const;

  /// int_{-1}^0 s^mu gamma(s) g(phi(s, x)) ds for x in U, gamma a polynomial
  /// in s (coefficients in ascending order); 0 outside U.
  Complex antiderivative(const CollarFn& g, const Point& x, double tx, int mu = 0,
                         const std::vector<Complex>& gamma = {1.0}) const;
  Complex antiderivative(const CollarFn& g, const Point& x) const;
  std::vector<Complex> antiderivative(const CollarFn& g, const std::vector<Point>& points) const;
  bergman::GridFunction antiderivative(const CollarFn& g,
                                       std::shared_ptr<const geometry::QuadratureGrid> grid) const;

  /// B_mu g(x) = int_{-1}^0 t_{phi(s,x)}^mu |g(phi(s, x))| ds on U, 0 outside.
  double hardy_majorant(const CollarFn& g, const Point& x, double tx, int mu) const;

  /// N g at x by fourth-order differences along the flow.
  Complex normal_derivative(const CollarFn& g, const Point& x, double tx, double h = 1e-3) const;

  /// Boundary distance of the inner edge of V for each boundary component.
  const std::vector<double>& v_depth() const { return v_depth_; }

  std::string provenance() const;

 private:
  Point step(const Point& x, double h) const;
  void check_escape(const Point& y, int component) const;

  Domain domain_;
  CanonicalFields fields_;
  FlowParams params_;
  geometry::Rule1D rule_;
  std::vector<double> v_depth_;
};

/// zeta(t) p(x): the collar-supported test functions.
CollarFn masked(PointFn p);

/// Closed one-dimensional Hardy case on [0, 1]:
///   lhs2 = int_0^1 x^{2r} (int_x^1 f)^2 dx,
///   rhs2 = (2 / (2r + 1))^2 int_0^1 t^{2r+2} f(t)^2 dt.
struct Hardy1D {
  double lhs2 = 0.0;
  double rhs2 = 0.0;
};
Hardy1D hardy_1d(const std::function<double(double)>& f, int r, int nodes = 64);

}  // namespace blab::flow
