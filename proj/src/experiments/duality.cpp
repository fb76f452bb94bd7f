#include <algorithm>
#include <cmath>
#include <memory>

#include "blab/bergman/bergman.hpp"
#include "blab/sobolev/norms.hpp"
#include "common.hpp"

namespace blab::experiments {

using namespace detail;

ReportBundle run_duality(const ScenarioConfig& c) {
  ReportBundle b = start(c);
  const geometry::Domain dom = c.domains[0].make();
  const auto grid = std::make_shared<const geometry::QuadratureGrid>(
      geometry::quadrature_grid(dom, c.grid.nr, c.grid.ntheta, c.grid.delta));
  b.provenance.emplace_back("grid", grid->id());
  std::vector<bergman::HolomorphicFunction> fam;
  for (int m = 0; m < c.family_size; ++m) fam.push_back(band_limited(c.seed, 3000 + m, 0, 8, 0.7, "f"));

  double worst_drift = 1.0;
  bool holds = true;
  std::string detail;
  for (int k = 1; k <= c.k; ++k) {
    std::vector<double> cemp;
    std::vector<std::vector<double>> lhs, rhs;
    for (int s = 0; s < 2; ++s) {
      const auto basis = bergman::build_basis(dom, c.basis_size << s);
      b.provenance.emplace_back("basis." + std::to_string(s), basis.label());
      Table& t = b.table("duality_k" + std::to_string(k) + "_b" + std::to_string(basis.size()),
                         {"k1", "f", "dualitySup", "norm_k2", "ratio"});
      double ce = 0.0;
      lhs.emplace_back();
      rhs.emplace_back();
      for (const auto& f : fam) {
        const auto gf = bergman::sample(grid, [&f](const Point& p) { return f(p); });
        const double ds = sobolev::duality_sup(gf, k, basis).value;
        const double nk = sobolev::sobolev_norm(f, k, *grid).value;
        ce = std::max(ce, nk / ds);
        lhs.back().push_back(nk);
        rhs.back().push_back(ds);
        t.add({cell(k), cell(f.id), cell(ds), cell(nk), cell(nk / ds)});
      }
      cemp.push_back(ce);
    }
    for (std::size_t i = 0; i < fam.size(); ++i)
      for (int s = 0; s < 2; ++s) holds = holds && lhs[s][i] <= cemp[s] * rhs[s][i];
    const double drift = std::max(cemp[1] / cemp[0], cemp[0] / cemp[1]);
    worst_drift = std::max(worst_drift, drift);
    Table& ts = b.table("duality_constants", {"k", "basis_size", "c_emp"});
    ts.add({cell(k), cell(c.basis_size), cell(cemp[0])});
    ts.add({cell(k), cell(2 * c.basis_size), cell(cemp[1])});
    detail += "k=" + std::to_string(k) + ": c_emp " + sci(cemp[0]) + " -> " + sci(cemp[1]) + "; ";
  }
  const bool ok = c.family_size > 0 && holds && worst_drift < c.tol("c_emp_drift");
  b.criteria.push_back({8, "duality lower bound", ok,
                        detail + "drift " + sci(worst_drift) + " < " + sci(c.tol("c_emp_drift")) +
                            " over " + std::to_string(c.family_size) + " functions"});
  return b;
}

}  // namespace blab::experiments
