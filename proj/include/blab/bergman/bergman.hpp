#pragma once

#include <memory>
#include <string>
#include <vector>

#include "blab/bergman/holomorphic.hpp"
#include "blab/geometry/quadrature.hpp"

namespace blab::bergman {

using geometry::Domain;
using geometry::QuadratureGrid;

/// Orthonormal monomial basis of the Bergman space.
///   disk:    z^k / ||z^k||, k = 0..size-1
///   annulus: z^k / ||z^k||, -floor(size/2) <= k <= ceil(size/2) - 1
///   ball2:   z1^a z2^b / ||.||, a + b <= size
class OrthonormalBasis {
 public:
  OrthonormalBasis() = default;
  OrthonormalBasis(Domain domain, std::vector<MultiIndex> exponents);

  const Domain& domain() const { return domain_; }
  std::size_t size() const { return exps_.size(); }
  const MultiIndex& exponent(std::size_t i) const { return exps_[i]; }
  double monomial_norm(std::size_t i) const { return norms_[i]; }
  /// Index of the monomial, or -1.
  int index_of(MultiIndex e) const;
  std::string label() const;

  /// e_i(p) and its complex derivative of order `d`.
  Complex value(std::size_t i, const Point& p, MultiIndex d = {}) const;

 private:
  Domain domain_;
  std::vector<MultiIndex> exps_;
  std::vector<double> norms_;
};

/// L^2 norm of z^e on the domain (closed form).
double monomial_l2_norm(const Domain& domain, MultiIndex e);

/// Throws ParameterError for size < 1.
OrthonormalBasis build_basis(const Domain& domain, int size);
int default_basis_size(const Domain& domain);

/// Values on a quadrature grid.
struct GridFunction {
  std::shared_ptr<const QuadratureGrid> grid;
  std::vector<Complex> values;
};

GridFunction sample(std::shared_ptr<const QuadratureGrid> grid,
                    const std::function<Complex(const Point&)>& f);

struct CoefficientVector {
  std::string basis_label;
  std::vector<Complex> c;
};

/// c_i = (f, e_i) by quadrature.
CoefficientVector project(const GridFunction& f, const OrthonormalBasis& basis);

/// sum_i c_i d^order e_i at each point.
std::vector<Complex> synthesize(const CoefficientVector& c, const OrthonormalBasis& basis,
                                const std::vector<Point>& points, MultiIndex order = {});

/// Planar expansions as a holomorphic function with Laurent coefficients.
HolomorphicFunction as_holomorphic(const CoefficientVector& c, const OrthonormalBasis& basis);

/// Bergman kernel K(z, w).  Annulus: series truncated to the build_basis range.
Complex kernel_eval(const Domain& domain, const Point& z, const Point& w, int size = 64);
/// Bound on the neglected tail of the annulus series (0 on disk and ball2).
double kernel_truncation_bound(const Domain& domain, const Point& z, const Point& w, int size = 64);

/// Max |(e_i, e_j) - delta_ij| on the grid.
double gram_defect(const OrthonormalBasis& basis, const QuadratureGrid& grid);

void write_csv(const CoefficientVector& c, const OrthonormalBasis& basis, const std::string& path);

}  // namespace blab::bergman
