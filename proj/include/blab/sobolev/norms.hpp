#pragma once

#include <functional>
#include <string>
#include <vector>

#include "blab/bergman/bergman.hpp"
#include "blab/geometry/quadrature.hpp"
#include "blab/geometry/vector_field.hpp"

namespace blab::sobolev {

using bergman::CoefficientVector;
using bergman::GridFunction;
using bergman::HolomorphicFunction;
using bergman::OrthonormalBasis;
using geometry::Domain;
using geometry::PolarEvalGrid;
using geometry::QuadratureGrid;
using geometry::VectorField;
using PointFn = std::function<Complex(const Point&)>;

enum class NormKind { Hk, HkT, WeightedNeg, SupWeighted, DualitySup };
std::string to_string(NormKind kind);

struct NormReport {
  NormKind kind = NormKind::Hk;
  int order = 0;  // k, or m for sup-weighted norms
  double value = 0.0;
  std::string field_id;
  std::string grid_id;
  bool divergent = false;

  static std::string csv_header() { return "kind,k,value,field,grid,divergent"; }
  std::string csv_row() const;
};

inline constexpr int kMaxSobolevOrder = 3;

/// H^k norm of a holomorphic function using analytic complex derivatives:
/// ||f||_k^2 = sum_{|g| <= k} prod_j (g_j + 1) ||d^g f||^2.
NormReport sobolev_norm(const HolomorphicFunction& f, int k, const QuadratureGrid& grid);
NormReport sobolev_norm(const CoefficientVector& c, const OrthonormalBasis& basis, int k,
                        const QuadratureGrid& grid);

/// H^k norm of sampled data by fourth-order finite differences on the
/// inset polar grid.  Throws ResolutionError when the grid has fewer than
/// five nodes in a direction.
NormReport sobolev_norm_fd(const PointFn& f, int k, const PolarEvalGrid& grid,
                           std::string id = "f");

/// Planar function sum_m u_m(r) e^{i m theta}.
struct ModalFunction {
  std::string id = "modal";
  std::vector<std::pair<int, std::function<Complex(double)>>> modes;
  Complex operator()(const Point& p) const;
};

/// (sum_{j<=k} ||T^j f||^2)^{1/2} with T^j applied mode by mode.  T must be
/// a purely angular rotation-invariant field w(r) d/dtheta (e.g. a multiple
/// of T0); otherwise ContractError.
NormReport t_sobolev_norm(const ModalFunction& f, const VectorField& T, int k,
                          const QuadratureGrid& grid);
/// Same norm with T^j applied by repeated finite differences.
NormReport t_sobolev_norm_fd(const PointFn& f, const VectorField& T, int k,
                             const PolarEvalGrid& grid, std::string id = "f");

/// W_k(h) = ||d^k h||, d the boundary distance.
NormReport weighted_negative_norm(const PointFn& h, int k, const QuadratureGrid& grid,
                                  std::string id = "h");
NormReport weighted_negative_norm(const GridFunction& h, int k);

/// S_m(h) = max |h| d^{m + 2n} over the dense sup grid.
NormReport sup_weighted_norm(const PointFn& h, int m, const Domain& domain, int nr = 200,
                             int ntheta = 256, std::string id = "h");
/// Same maximum over explicit points.
double sup_weighted(const PointFn& h, int m, const Domain& domain,
                    const std::vector<Point>& points);

/// sqrt(v* G^{-1} v), v_i = (f, e_i), G_ij = int d^{2 k1} conj(e_i) e_j.
/// Throws ConditioningError when the factorization fails or G is
/// numerically singular.
NormReport duality_sup(const GridFunction& f, int k1, const OrthonormalBasis& basis);

/// Finite-difference derivative fields on an inset polar grid
/// (row-major: index = i_r * ntheta + i_theta).
struct PolarFD {
  explicit PolarFD(const PolarEvalGrid& grid);
  std::vector<Complex> sample(const PointFn& f) const;
  std::vector<Complex> d_r(const std::vector<Complex>& v) const;
  std::vector<Complex> d_theta(const std::vector<Complex>& v) const;
  std::vector<Complex> d_x(const std::vector<Complex>& v) const;
  std::vector<Complex> d_y(const std::vector<Complex>& v) const;
  /// X v for a complex field X.
  std::vector<Complex> apply(const VectorField& X, const std::vector<Complex>& v) const;
  double l2(const std::vector<Complex>& v) const;

  PolarEvalGrid grid;
  std::vector<double> weights;
};

}  // namespace blab::sobolev
