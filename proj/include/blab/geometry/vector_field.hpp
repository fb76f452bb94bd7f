#pragma once

#include <functional>
#include <string>

#include "blab/geometry/domain.hpp"

namespace blab::geometry {

struct FieldTags {
  bool real = false;
  bool tangential = false;
  bool transversal = false;
};

/// Complex vector field sum_i c_i(x) d/dx_i on R^{2n}, coordinates
/// ordered (x1, y1, x2, y2).  In complex notation
///   c_x dx + c_y dy = (c_x + i c_y) dz + (c_x - i c_y) dzbar.
class VectorField {
 public:
  using Coefficients = std::array<Complex, 4>;
  using CoefficientFn = std::function<Coefficients(const Point&)>;

  using Tags = FieldTags;

  VectorField() = default;
  VectorField(std::string id, int dim, CoefficientFn fn, Tags tags = {});

  /// Builds the field from its dz_j and dzbar_j coefficients.
  static VectorField from_complex_form(
      std::string id, int n,
      std::function<void(const Point&, std::array<Complex, 2>& a, std::array<Complex, 2>& b)> fn,
      Tags tags = {});

  const std::string& id() const { return id_; }
  int dim() const { return dim_; }
  const Tags& tags() const { return tags_; }
  bool valid() const { return static_cast<bool>(fn_); }

  Coefficients operator()(const Point& p) const { return fn_(p); }
  /// dz_j coefficient.
  Complex holomorphic_part(const Point& p, int j) const;
  /// dzbar_j coefficient.
  Complex antiholomorphic_part(const Point& p, int j) const;
  /// Real part of the coefficients as a displacement (for real fields).
  Point real_direction(const Point& p) const;

  VectorField conjugate() const;
  /// Pointwise complex structure: on each pair (c_x, c_y) -> (-c_y, c_x).
  VectorField complex_structure() const;
  VectorField scaled(Complex a, std::string id = "") const;
  VectorField plus(const VectorField& other, std::string id = "") const;

  /// sum_i c_i d(rho)/dx_i.
  Complex apply_to_defining(const Domain& domain, const Point& p) const;

  /// X f at p by fourth-order central differences along Re c and Im c.
  Complex derivative(const std::function<Complex(const Point&)>& f, const Point& p,
                     double h = 1e-3) const;

  /// X h for h holomorphic given dh/dz_j.
  Complex apply_holomorphic(const Point& p, const std::array<Complex, 2>& dh) const;

 private:
  std::string id_;
  int dim_ = 2;
  CoefficientFn fn_;
  Tags tags_;
};

/// Canonical fields of the model domain.
///   Ln = sum rho_{zbar_j} dz_j,  T0 = i(Ln - conj(Ln)),
///   T1 = -J N (so that J T1 = N),  N = s * (-J T0) (outward).
/// The scale s makes the flow time from the boundary to the inner edge of
/// the collar (boundary distance `collar_depth` from the outer component)
/// equal to 2.
struct CanonicalFields {
  VectorField Ln;
  VectorField T0;
  VectorField T1;
  VectorField N;
  double n_scale = 1.0;
  double collar_depth = 0.75;
};

/// Default collar depth: 0.75 on disk and ball2, 0.25 (1 - rho) on the annulus.
double default_collar_depth(const Domain& domain);

CanonicalFields canonical_fields(const Domain& domain);
CanonicalFields canonical_fields(const Domain& domain, double collar_depth);

/// Minimum over boundary samples of |a|, where
///   a = sum_j A_j rho_{z_j} / (i |d rho|^2),  |d rho|^2 = sum_j |rho_{z_j}|^2,
/// and A_j are the dz_j coefficients of X.  T0 has a = 1.  Throws
/// ContractError unless X is tangential on the boundary samples.
double transversality_measure(const VectorField& X, const Domain& domain, int samples = 64);

/// Max over boundary samples of |X rho| / |grad rho|.
double tangency_defect(const VectorField& X, const Domain& domain, int samples = 64);

}  // namespace blab::geometry
