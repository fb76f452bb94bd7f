#include <algorithm>
#include <cmath>

#include "blab/decomposition/decomposition.hpp"
#include "blab/geometry/quadrature.hpp"
#include "common.hpp"

namespace blab::experiments {

using namespace detail;
using decomposition::Context;

ReportBundle run_decomposition(const ScenarioConfig& c) {
  ReportBundle b = start(c);
  const flow::CollarChart chart(c.domains[0].make(), flow::FlowParams{c.flow.M, c.flow.Q});
  const auto& T0 = chart.fields().T0;
  b.provenance.emplace_back("chart", chart.provenance());
  b.provenance.emplace_back("n_scale", cell(chart.n_scale()));

  // zeta h identity on the full collar, then on the doubled grid
  {
    const auto& g = c.collar;
    const Context base = Context::make(chart, T0, g.ntau, g.ntheta, g.tau_min);
    const Context fine = Context::make(chart, T0, 2 * g.ntau, 2 * g.ntheta, g.tau_min);
    b.provenance.emplace_back("zetah.base", base.provenance());
    b.provenance.emplace_back("zetah.fine", fine.provenance());
    const std::vector<bergman::HolomorphicFunction> hs = {
        bergman::constant(1.0), bergman::laurent_polynomial("z", {{1, 1.0}}),
        bergman::power_family(0.9, 1.0)};
    Table& t = b.table("zetah", {"h", "k", "residual", "residual_fine", "tolerance", "reduction"});
    bool ok_abs = true, ok_ref = true;
    double worst_rel = 0.0, worst_red = 1e300;
    for (const auto& h : hs)
      for (int k = 1; k <= 3; ++k) {
        const double tol = c.tol("zetah_k" + std::to_string(k));
        const double r0 = decomposition::zetah_residual(base, h, k);
        const double r1 = decomposition::zetah_residual(fine, h, k);
        const double red = r1 > 0.0 ? r0 / r1 : (r0 > 0.0 ? 1e300 : 1.0);
        ok_abs = ok_abs && r0 <= tol;
        ok_ref = ok_ref && red >= c.tol("zetah_refine");
        worst_rel = std::max(worst_rel, r0 / tol);
        worst_red = std::min(worst_red, red);
        t.add({cell(h.id), cell(k), cell(r0), cell(r1), cell(tol), cell(red)});
      }
    b.criteria.push_back({3, "zeta-h identity", ok_abs && ok_ref,
                          "max residual/tolerance = " + sci(worst_rel) +
                              ", min reduction on doubling = " + sci(worst_red) +
                              " >= " + sci(c.tol("zetah_refine"))});
  }

  // components of h_a on the inset grid
  {
    const auto& g = c.inset;
    const Context base = Context::make(chart, T0, g.ntau, g.ntheta, g.tau_min);
    const Context fine = Context::make(chart, T0, 2 * g.ntau, 2 * g.ntheta, g.tau_min);
    b.provenance.emplace_back("components.base", base.provenance());
    b.provenance.emplace_back("components.fine", fine.provenance());
    const auto wgrid = geometry::quadrature_grid(chart.domain(), c.grid.nr, c.grid.ntheta, c.grid.delta);
    b.provenance.emplace_back("components.wgrid", wgrid.id());
    const std::vector<double> as = {0.9, 0.99, 0.999};
    Table& t = b.table("components", {"k", "a", "j", "norm", "w_k", "ratio", "sobolev_k",
                                      "sobolev_k_fine", "growth", "residual"});
    bool ok_res = true, ok_growth = true;
    double worst_res = 0.0, worst_growth = 0.0, worst_env = 0.0;
    for (int k = 1; k <= c.k; ++k) {
      const double tol = c.tol("residual_k" + std::to_string(k));
      std::vector<std::vector<double>> ratios(k + 1);
      for (double a : as) {
        const auto h = bergman::power_family(a, 0.75);
        const auto r0 = decomposition::h_components(base, h, k, wgrid);
        const auto r1 = decomposition::h_components(fine, h, k, wgrid);
        ok_res = ok_res && r0.residual <= tol;
        worst_res = std::max(worst_res, r0.residual / tol);
        for (int j = 0; j <= k; ++j) {
          const double growth = r1.sobolev[j] / r0.sobolev[j];
          ok_growth = ok_growth && growth <= c.tol("sobolev_growth");
          worst_growth = std::max(worst_growth, growth);
          ratios[j].push_back(r0.norm_ratios[j]);
          t.add({cell(k), cell(a), cell(j), cell(r0.norms[j]), cell(r0.w_k), cell(r0.norm_ratios[j]),
                 cell(r0.sobolev[j]), cell(r1.sobolev[j]), cell(growth), cell(r0.residual)});
        }
      }
      for (const auto& r : ratios) {
        const auto [lo, hi] = std::minmax_element(r.begin(), r.end());
        worst_env = std::max(worst_env, *hi / *lo);
      }
    }
    const bool ok_env = worst_env <= c.tol("envelope");
    b.criteria.push_back({4, "antiderivative decomposition", ok_res && ok_env && ok_growth,
                          "max residual/tolerance = " + sci(worst_res) + ", ratio envelope " +
                              leq(worst_env, c.tol("envelope")) + ", Sobolev growth " +
                              leq(worst_growth, c.tol("sobolev_growth"))});
  }
  return b;
}

}  // namespace blab::experiments
