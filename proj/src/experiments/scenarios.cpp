#include "blab/experiments/scenarios.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "blab/flow/collar.hpp"
#include "blab/flow/operator_expr.hpp"
#include "blab/geometry/quadrature.hpp"
#include "common.hpp"

#ifndef BLAB_VERSION
#define BLAB_VERSION "unknown"
#endif

namespace blab::experiments {

namespace detail {

ReportBundle start(const ScenarioConfig& c) {
  ReportBundle b;
  b.scenario = to_string(c.scenario);
  b.config_echo = to_json(c);
  b.provenance.emplace_back("blab", BLAB_VERSION);
  b.provenance.emplace_back("eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                         std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                         std::to_string(EIGEN_MINOR_VERSION));
  b.provenance.emplace_back("compiler", __VERSION__);
  b.provenance.emplace_back("seed", std::to_string(c.seed));
  return b;
}

}  // namespace detail

using namespace detail;

ReportBundle run_scenario(const ScenarioConfig& config) {
  validate(config);
  const Stopwatch sw;
  ReportBundle b;
  switch (config.scenario) {
    case Scenario::Ftc: b = run_ftc(config); break;
    case Scenario::Hardy: b = run_hardy(config); break;
    case Scenario::Decomposition: b = run_decomposition(config); break;
    case Scenario::ConjSmoothing: b = run_conj_smoothing(config); break;
    case Scenario::PartialSmoothing: b = run_partial_smoothing(config); break;
    case Scenario::Duality: b = run_duality(config); break;
  }
  b.seconds = sw.seconds();
  return b;
}

ReportBundle run_ftc(const ScenarioConfig& c) {
  ReportBundle b = start(c);
  const Stopwatch sw;
  Table& t = b.table("ftc", {"domain", "member", "sup_error", "nodes"});
  double worst = 0.0;
  for (const auto& ds : c.domains) {
    const flow::CollarChart chart(ds.make(), flow::FlowParams{c.flow.M, c.flow.Q});
    b.provenance.emplace_back("chart." + chart.domain().name(), chart.provenance());
    const auto grid = geometry::polar_eval_grid(chart.domain(), c.grid.nr, c.grid.ntheta, c.grid.delta);
    // flow times are shared by all members
    std::vector<Point> pts;
    std::vector<double> tx;
    for (std::size_t i = 0; i < grid.radii.size(); ++i)
      for (std::size_t k = 0; k < grid.angles.size(); ++k) {
        pts.push_back(grid.node(static_cast<int>(i), static_cast<int>(k)));
        tx.push_back(chart.try_hitting_time(pts.back()));
      }
    for (int m = 0; m < c.family_size; ++m) {
      const flow::CollarFn g = flow::masked(smooth_poly(c.seed, m));
      const flow::CollarFn ng = [&](const Point& x, double s) {
        return chart.normal_derivative(g, x, s);
      };
      double err = 0.0;
      for (std::size_t q = 0; q < pts.size(); ++q) {
        const Complex lhs = tx[q] < 0.0 ? Complex(0.0) : g(pts[q], tx[q]);
        err = std::max(err, std::abs(lhs - chart.antiderivative(ng, pts[q], tx[q])));
      }
      worst = std::max(worst, err);
      t.add({chart.domain().name(), cell(m), cell(err), cell(static_cast<int>(pts.size()))});
    }
  }
  const double secs = sw.seconds();
  const bool ok = worst <= c.tol("ftc_sup") && secs < c.tol("runtime_s");
  b.criteria.push_back({1, "FTC identity", ok,
                        "sup|g - A[Ng]| = " + leq(worst, c.tol("ftc_sup")) + ", runtime " +
                            sci(secs) + " s < " + sci(c.tol("runtime_s")) + " s"});
  return b;
}

ReportBundle run_hardy(const ScenarioConfig& c) {
  ReportBundle b = start(c);
  const flow::CollarChart chart(c.domains[0].make(), flow::FlowParams{c.flow.M, c.flow.Q});
  const auto grid = flow::make_collar_grid(chart, c.collar.ntau, c.collar.ntheta, c.collar.tau_min);
  b.provenance.emplace_back("chart", chart.provenance());
  b.provenance.emplace_back("collar_grid", grid->id());
  Table& t = b.table("hardy", {"member", "mu", "ell", "ratio", "bound"});
  const double slack = c.tol("hardy_slack");
  double excess = -1e300;
  for (int m = 0; m < c.family_size; ++m) {
    const flow::CollarField g = flow::sample(grid, flow::masked(smooth_poly(c.seed, 1000 + m)));
    for (int mu : {0, 1})
      for (int ell = 0; ell <= 8; ++ell) {
        const double r = flow::weighted_ratio(flow::op_Bmu(mu), g, ell);
        const double bound = 2.0 / (2 * ell + 1);
        excess = std::max(excess, r - bound);
        t.add({cell(m), cell(mu), cell(ell), cell(r), cell(bound)});
      }
  }
  const flow::Hardy1D h = flow::hardy_1d([](double) { return 1.0; }, 0);
  Table& t1 = b.table("hardy_1d", {"r", "lhs2", "rhs2", "lhs2_exact", "rhs2_exact"});
  t1.add({cell(0), cell(h.lhs2), cell(h.rhs2), cell(1.0 / 3.0), cell(4.0 / 3.0)});
  const double e1 = std::max(std::abs(h.lhs2 - 1.0 / 3.0), std::abs(h.rhs2 - 4.0 / 3.0));
  const bool ok = (c.family_size == 0 || excess <= slack) && e1 <= c.tol("hardy_1d");
  b.criteria.push_back({2, "Hardy / S-class", ok,
                        "max(ratio - 2/(2l+1)) = " + leq(excess, slack) + " over " +
                            std::to_string(c.family_size) + " members; 1-D closed case error " +
                            leq(e1, c.tol("hardy_1d"))});
  return b;
}

}  // namespace blab::experiments
