#include "blab/decomposition/decomposition.hpp"

#include <cmath>
#include <sstream>

#include "blab/numerics/spectral.hpp"
#include "blab/sobolev/norms.hpp"

namespace blab::decomposition {

using flow::apply;
using flow::apply_field;
using flow::cutoff;
using flow::cutoff_derivative;
using flow::tail_integral;

namespace {

// Signed T0 coefficient a of X at p: a = sum_j A_j rho_{z_j} / (i |d rho|^2).
Complex t0_coefficient(const VectorField& X, const geometry::Domain& d, const Point& p) {
  Complex num = 0.0;
  double den = 0.0;
  for (int j = 0; j < d.n(); ++j) {
    const Complex rz = std::conj(d.defining_dzbar(p, j));
    num += X.holomorphic_part(p, j) * rz;
    den += std::norm(rz);
  }
  return num / (kI * den);
}

Complex ipow(int j) {
  static const Complex v[4] = {1.0, kI, -1.0, -kI};
  return v[j % 4];
}

CollarField apply_tbar(const Context& ctx, const CollarField& f) {
  return apply_field(ctx.Tbar, f);
}

}  // namespace

Context Context::make(const CollarChart& chart, const VectorField& T, int ntau, int ntheta,
                      double tau_min) {
  const auto& d = chart.domain();
  if (geometry::transversality_measure(T, d) <= 1e-12)
    throw ContractError("field is not complex transversal: " + T.id());
  const auto& T1 = chart.fields().T1;
  const auto samples = d.boundary_samples(32);
  const Complex a = t0_coefficient(T, d, samples[0]);
  for (const Point& p : samples) {
    if (d.nearest_component(p) != 0) continue;
    if (std::abs(t0_coefficient(T, d, p) - a) > 1e-8 * std::abs(a))
      throw ContractError("T0 coefficient of " + T.id() + " varies along the boundary");
  }
  const Complex a1 = t0_coefficient(T1, d, samples[0]);
  Context ctx;
  ctx.grid = flow::make_collar_grid(chart, ntau, ntheta, tau_min, 0);
  ctx.T = T;
  ctx.scale = a / a1;
  const VectorField tn = T.scaled(1.0 / ctx.scale);
  ctx.Tbar = VectorField("Tbar[" + T.id() + "]", tn.dim(),
                         [f = tn.conjugate()](const Point& x) { return f(x); }, tn.tags());
  return ctx;
}

std::string Context::provenance() const {
  std::ostringstream os;
  os.precision(12);
  os << "T=" << T.id() << " T=scale*(T1+L) scale=" << scale.real()
     << (scale.imag() != 0.0 ? "+" + std::to_string(scale.imag()) + "i" : "") << " grid=" << grid->id();
  return os.str();
}

CollarField zeta_h(const Context& ctx, const HolomorphicFunction& h) {
  return flow::sample(ctx.grid, flow::masked([&h](const Point& x) { return h(x); }));
}

CollarField tbar_zeta_h(const Context& ctx, const HolomorphicFunction& h) {
  const auto& act = ctx.grid->action(ctx.Tbar);
  CollarField out = flow::zeros(ctx.grid);
  for (int j = 0; j < ctx.grid->rows(); ++j) {
    const double t = ctx.grid->tau()[j];
    const double z = cutoff(t), dz = cutoff_derivative(t);
    if (z == 0.0 && dz == 0.0) continue;
    for (int k = 0; k < ctx.grid->cols(); ++k) {
      const Point& x = ctx.grid->position(j, k);
      const Complex th = ctx.Tbar.apply_holomorphic(x, {h.derivative(x, 1), 0.0});
      out.v(j, k) = dz * act.Xtau(j, k) * h(x) + z * th;
    }
  }
  return out;
}

CollarField cr_reduction(const Context& ctx, const HolomorphicFunction& h) {
  const auto& act = ctx.grid->action(ctx.Tbar);
  CollarField out = flow::zeros(ctx.grid);
  for (int j = 0; j < ctx.grid->rows(); ++j) {
    const double dz = cutoff_derivative(ctx.grid->tau()[j]);
    if (dz == 0.0) continue;
    for (int k = 0; k < ctx.grid->cols(); ++k)
      out.v(j, k) = -dz * (1.0 + kI * act.Xtau(j, k)) * h(ctx.grid->position(j, k));
  }
  return out;
}

CollarField cr_direct(const Context& ctx, const HolomorphicFunction& h) {
  const CollarField f = zeta_h(ctx, h);
  return apply_field(ctx.grid->chart().normal(), f) - apply_tbar(ctx, f) * kI;
}

CollarField cr_defect(const Context& ctx, const HolomorphicFunction& h) {
  const VectorField& N = ctx.grid->chart().normal();
  CollarField out = flow::zeros(ctx.grid);
  for (int j = 0; j < ctx.grid->rows(); ++j)
    for (int k = 0; k < ctx.grid->cols(); ++k) {
      const Point& x = ctx.grid->position(j, k);
      const std::array<Complex, 2> dh{h.derivative(x, 1), 0.0};
      out.v(j, k) = N.apply_holomorphic(x, dh) - kI * ctx.Tbar.apply_holomorphic(x, dh);
    }
  return out;
}

double angular_tail(const CollarField& f) {
  Eigen::MatrixXcd c = f.v;
  numerics::RowFFT::forward(c);
  const int n = static_cast<int>(c.cols());
  double top = 0.0, all = 0.0;
  for (int k = 0; k < n; ++k) {
    const double e = c.col(k).squaredNorm();
    all += e;
    if (std::abs(numerics::RowFFT::wavenumber(k, n)) >= 3 * n / 8) top += e;
  }
  return all > 0.0 ? std::sqrt(top / all) : 0.0;
}

double zetah_residual(const Context& ctx, const HolomorphicFunction& h, int k) {
  if (k < 1 || k > 3) throw ParameterError("zeta-h identity is checked for 1 <= k <= 3");
  const CollarField f = zeta_h(ctx, h);
  if (angular_tail(f) > 1e-8)
    throw ResolutionError("zeta h under-resolved in theta on " + ctx.grid->id());
  CollarField v = tail_integral(tbar_zeta_h(ctx, h));
  for (int j = 1; j < k; ++j) v = tail_integral(apply_tbar(ctx, v));
  CollarField cur = tail_integral(cr_reduction(ctx, h));
  CollarField acc = cur;
  for (int j = 1; j < k; ++j) {
    cur = tail_integral(apply_tbar(ctx, cur));
    acc = acc + cur * ipow(j);
  }
  return (f - v * ipow(k) - acc).sup();
}

std::map<std::pair<int, int>, OperatorExpr> g_operators(int k, const VectorField& Tbar,
                                                        bool any_order) {
  if (k < 0 || (k > 2 && !any_order))
    throw ParameterError("G-operators are constructed for k <= 2");
  std::map<std::pair<int, int>, OperatorExpr> G;
  G.emplace(std::make_pair(0, 0), flow::op_identity());
  const OperatorExpr A = flow::op_antideriv();
  const OperatorExpr X = flow::op_field_power(Tbar, 1);
  auto binom = [](int n, int r) {
    double b = 1.0;
    for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
    return b;
  };
  for (int l = 1; l <= k; ++l)
    for (int j = 0; j <= l; ++j) {
      std::vector<std::pair<Complex, OperatorExpr>> terms;
      if (j >= 1) terms.emplace_back(1.0, flow::compose({A, G.at({l - 1, j - 1})}));
      for (int m = std::max(j + 1, 1); m <= l; ++m)
        terms.emplace_back(binom(m, j), flow::compose({flow::iterated_commutator(A, X, m - j),
                                                       G.at({l - 1, m - 1})}));
      G.emplace(std::make_pair(l, j),
                terms.size() == 1 && terms[0].first == 1.0 ? terms[0].second : flow::sum(terms));
    }
  return G;
}

bool g_tag_ok(const OperatorExpr& G, int l, int m) {
  for (const auto& t : G.tag().terms) {
    if (t.ell != l) return false;
    if (t.nu > l - m || t.alpha_sum() < t.nu) return false;
  }
  return true;
}

std::vector<std::string> DecompositionResult::csv_rows() const {
  std::vector<std::string> rows;
  for (int j = 0; j <= k; ++j) {
    std::ostringstream os;
    os.precision(12);
    os << j << "," << norms[j] << "," << sobolev[j] << "," << norm_ratios[j] << "," << residual;
    rows.push_back(os.str());
  }
  return rows;
}

DecompositionResult h_components(const Context& ctx, const HolomorphicFunction& h, int k,
                                 const geometry::QuadratureGrid& wgrid) {
  if (k < 0 || k > 2) throw ParameterError("components are constructed for k <= 2");
  const auto G = g_operators(k, ctx.Tbar);
  const CollarField f = zeta_h(ctx, h);
  const CollarField ac = tail_integral(cr_reduction(ctx, h));
  DecompositionResult r;
  r.k = k;
  for (int m = 0; m <= k; ++m) {
    CollarField Hm = apply(G.at({k, m}), f) * ipow(k);
    for (int j = m; j < k; ++j) Hm = Hm + apply(G.at({j, m}), ac) * ipow(j);
    r.components.push_back(Hm);
  }
  CollarField sum = flow::zeros(ctx.grid);
  for (int m = k; m >= 0; --m) {
    // Horner: Tbar(...Tbar(H_k) + H_{k-1}...) + H_0
    sum = (m == k ? r.components[m] : apply_tbar(ctx, sum) + r.components[m]);
  }
  r.residual = (f - sum).sup();
  r.w_k = sobolev::weighted_negative_norm([&h](const Point& x) { return h(x); }, k, wgrid, h.id)
              .value;
  for (int m = 0; m <= k; ++m) {
    r.norms.push_back(flow::l2(r.components[m]));
    r.sobolev.push_back(flow::sobolev_norm(r.components[m], k));
    r.norm_ratios.push_back(r.w_k > 0.0 ? r.norms[m] / r.w_k : 0.0);
  }
  return r;
}

}  // namespace blab::decomposition
