#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "blab/bergman/holomorphic.hpp"
#include "blab/flow/operator_expr.hpp"
#include "blab/geometry/quadrature.hpp"

namespace blab::decomposition {

using bergman::HolomorphicFunction;
using flow::CollarChart;
using flow::CollarField;
using flow::CollarGridPtr;
using flow::OperatorExpr;
using geometry::VectorField;

/// Field data for the decomposition.  The tangential field T is written as
/// T = scale * (T1 + L); `Tbar` is the conjugate of T1 + L, and (N - i Tbar)
/// annihilates holomorphic functions.
struct Context {
  CollarGridPtr grid;
  VectorField T;
  VectorField Tbar;
  Complex scale = 1.0;

  /// Throws ContractError when T is not tangential or its T0 coefficient
  /// varies along the boundary.
  static Context make(const CollarChart& chart, const VectorField& T, int ntau, int ntheta,
                      double tau_min);
  std::string provenance() const;
};

/// zeta h on the collar grid.
CollarField zeta_h(const Context& ctx, const HolomorphicFunction& h);
/// Tbar(zeta h) with Tbar h taken from the complex derivative of h.
CollarField tbar_zeta_h(const Context& ctx, const HolomorphicFunction& h);

/// (N - i Tbar)[zeta h] in the reduced form ((N - i Tbar) zeta) h.
CollarField cr_reduction(const Context& ctx, const HolomorphicFunction& h);
/// (N - i Tbar)[zeta h] by spectral differentiation of the samples.
CollarField cr_direct(const Context& ctx, const HolomorphicFunction& h);
/// (N - i Tbar) h at the grid nodes (vanishes for holomorphic h).
CollarField cr_defect(const Context& ctx, const HolomorphicFunction& h);

/// sup |zeta h - i^k (A Tbar)^k [zeta h] - sum_{j<k} i^j (A Tbar)^j A (N - i Tbar)[zeta h]|
/// for 1 <= k <= 3.  Throws ResolutionError when zeta h is under-resolved
/// in theta.
double zetah_residual(const Context& ctx, const HolomorphicFunction& h, int k);

/// Relative energy in the top eighth of the angular spectrum.
double angular_tail(const CollarField& f);

/// G_m^l for l <= k (k <= 2 unless `any_order`), keyed by (l, m):
///   (A Tbar)^l = sum_m Tbar^m G_m^l.
std::map<std::pair<int, int>, OperatorExpr> g_operators(int k, const VectorField& Tbar,
                                                        bool any_order = false);
/// True when every term of G_m^l has nu <= l - m and |alpha| >= nu.
bool g_tag_ok(const OperatorExpr& G, int l, int m);

struct DecompositionResult {
  int k = 0;
  std::vector<CollarField> components;  // H_0 .. H_k
  double residual = 0.0;                // sup |zeta h - sum_m Tbar^m H_m|
  std::vector<double> norms;            // ||H_m||
  std::vector<double> sobolev;          // ||H_m||_k on the collar grid
  double w_k = 0.0;                     // W_k(h)
  std::vector<double> norm_ratios;      // ||H_m|| / W_k(h)

  static std::string csv_header() { return "j,norm,sobolev_k,ratio,residual"; }
  std::vector<std::string> csv_rows() const;
};

/// H_k = G_k^k[i^k zeta h],
/// H_m = i^k G_m^k[zeta h] + sum_{j=m}^{k-1} i^j G_m^j[A (N - i Tbar)[zeta h]].
/// W_k(h) is evaluated on `wgrid`.
DecompositionResult h_components(const Context& ctx, const HolomorphicFunction& h, int k,
                                 const geometry::QuadratureGrid& wgrid);

}  // namespace blab::decomposition
