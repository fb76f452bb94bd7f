#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "blab/bergman/bergman.hpp"
#include "blab/geometry/vector_field.hpp"
#include "blab/sobolev/norms.hpp"
#include "common.hpp"

namespace blab::experiments {

using namespace detail;
using bergman::CoefficientVector;
using bergman::OrthonormalBasis;
using geometry::QuadratureGrid;

namespace {

using GridPtr = std::shared_ptr<const QuadratureGrid>;

CoefficientVector project_fn(const GridPtr& g, const OrthonormalBasis& basis,
                             const std::function<Complex(const Point&)>& f) {
  return bergman::project(bergman::sample(g, f), basis);
}

double l2_on(const QuadratureGrid& g, const std::function<Complex(const Point&)>& f) {
  std::vector<double> v;
  v.reserve(g.size());
  for (const auto& p : g.nodes) v.push_back(std::norm(f(p)));
  return std::sqrt(g.integrate(v));
}

// |conj(f) g| d^{k+4} <= (|f| d^2)(|g| d^{k+2}) compared exactly: squares of
// both sides evaluated in rational arithmetic from the double samples.
struct ProductCheck {
  long nodes = 0;
  long violations = 0;
  bool s_norm_ok = true;
};

ProductCheck product_bound(const bergman::HolomorphicFunction& f, const bergman::HolomorphicFunction& g,
                           int k, const geometry::Domain& d, const std::vector<Point>& pts) {
  ProductCheck out;
  mpq_class sup_lhs = 0, sup_f = 0, sup_g = 0;
  for (const Point& p : pts) {
    const Complex fv = f(p), gv = g(p);
    const mpq_class fr(fv.real()), fi(fv.imag()), gr(gv.real()), gi(gv.imag());
    const mpq_class dist(d.boundary_distance(p));
    mpq_class d2 = dist * dist;
    mpq_class w0 = d2 * d2;  // d^4
    mpq_class wk = 1;
    for (int i = 0; i < k; ++i) wk *= d2;  // d^{2k}
    const mpq_class pr = fr * gr + fi * gi, pi = fr * gi - fi * gr;
    const mpq_class lhs = (pr * pr + pi * pi) * wk * w0 * w0;
    const mpq_class af = (fr * fr + fi * fi) * w0;
    const mpq_class ag = (gr * gr + gi * gi) * wk * w0;
    ++out.nodes;
    if (lhs > af * ag) ++out.violations;
    if (lhs > sup_lhs) sup_lhs = lhs;
    if (af > sup_f) sup_f = af;
    if (ag > sup_g) sup_g = ag;
  }
  out.s_norm_ok = sup_lhs <= sup_f * sup_g;
  return out;
}

}  // namespace

ReportBundle run_conj_smoothing(const ScenarioConfig& c) {
  ReportBundle b = start(c);
  for (const auto& ds : c.domains) {
    const geometry::Domain dom = ds.make();
    const std::string dn = dom.name();
    const auto grid = std::make_shared<const QuadratureGrid>(
        geometry::quadrature_grid(dom, c.grid.nr, c.grid.ntheta, c.grid.delta));
    const auto basis = bergman::build_basis(dom, c.basis_size);
    b.provenance.emplace_back("grid." + dn, grid->id());
    b.provenance.emplace_back("basis." + dn, basis.label());

    if (ds.kind == geometry::DomainKind::Disk) {
      Table& t = b.table("conj_disk", {"f", "a0_re", "a0_im", "err_l2", "max_nonconstant"});
      double worst = 0.0;
      std::vector<bergman::HolomorphicFunction> fam = {
          bergman::laurent_polynomial("1+2z", {{0, 1.0}, {1, 2.0}})};
      for (int m = 0; m < c.family_size; ++m) fam.push_back(band_limited(c.seed, m, 0, 8, 0.8, "p"));
      for (const auto& f : fam) {
        const auto cv = project_fn(grid, basis, [&](const Point& p) { return std::conj(f(p)); });
        const auto bf = bergman::as_holomorphic(cv, basis);
        const Complex a0 = f(Point(Complex(0.0)));
        const double err = l2_on(*grid, [&](const Point& p) { return bf(p) - std::conj(a0); });
        double off = 0.0;
        for (std::size_t i = 0; i < basis.size(); ++i)
          if (basis.exponent(i).a != 0) off = std::max(off, std::abs(cv.c[i]));
        if (f.id != "1+2z") worst = std::max(worst, err);
        auto row = std::vector<std::string>{cell(f.id)};
        for (auto& s : cells(a0)) row.push_back(s);
        row.push_back(cell(err));
        row.push_back(cell(off));
        t.add(row);
      }
      b.criteria.push_back({5, "disk conjugate-holomorphic smoothing", worst <= c.tol("disk_constant"),
                            "max ||B(conj f) - conj(a0)|| = " + leq(worst, c.tol("disk_constant")) +
                                " over " + std::to_string(c.family_size) + " polynomials"});
    } else if (ds.kind == geometry::DomainKind::Annulus) {
      const double rho = dom.inner_radius();
      const double exact = (1 - rho * rho) / (2 * std::log(1 / rho));
      const auto grid2 = std::make_shared<const QuadratureGrid>(
          geometry::quadrature_grid(dom, 2 * c.grid.nr, 2 * c.grid.ntheta, c.grid.delta));
      const auto basis2 = bergman::build_basis(dom, 2 * c.basis_size);
      b.provenance.emplace_back("grid_fine." + dn, grid2->id());
      b.provenance.emplace_back("basis_fine." + dn, basis2.label());

      const auto cz = project_fn(grid, basis, [](const Point& p) { return std::conj(p.z(0)); });
      const int im1 = basis.index_of({-1, 0});
      const Complex coef = cz.c[im1] / basis.monomial_norm(im1);
      const double coef_err = std::abs(coef - exact);
      Table& tc = b.table("conj_annulus_coefficient", {"rho", "coef_re", "coef_im", "exact", "error"});
      {
        auto row = std::vector<std::string>{cell(rho)};
        for (auto& s : cells(coef)) row.push_back(s);
        row.push_back(cell(exact));
        row.push_back(cell(coef_err));
        tc.add(row);
      }

      Table& tn = b.table("conj_annulus_norms", {"m", "k", "norm", "norm_fine", "drift"});
      double worst_drift = 0.0;
      bool finite = true;
      for (int m = 1; m <= 3; ++m) {
        auto zb = [m](const Point& p) { return std::pow(std::conj(p.z(0)), m); };
        const auto c1 = project_fn(grid, basis, zb);
        const auto c2 = project_fn(grid2, basis2, zb);
        for (int k = 0; k <= c.k; ++k) {
          const double n1 = sobolev::sobolev_norm(c1, basis, k, *grid).value;
          const double n2 = sobolev::sobolev_norm(c2, basis2, k, *grid2).value;
          const double drift = std::abs(n2 - n1) / n1;
          finite = finite && std::isfinite(n1) && std::isfinite(n2);
          worst_drift = std::max(worst_drift, drift);
          tn.add({cell(m), cell(k), cell(n1), cell(n2), cell(drift)});
        }
      }

      Table& tr = b.table("conj_annulus_ratios", {"f", "k", "norm_Bfbar_k", "norm_f", "ratio"});
      double worst_env = 1.0;
      for (int k = 0; k <= c.k; ++k) {
        double lo = 1e300, hi = 0.0;
        for (int m = 0; m < c.family_size; ++m) {
          const auto f = band_limited(c.seed, m, -3, 3, 0.5, "q");
          const auto cv = project_fn(grid, basis, [&](const Point& p) { return std::conj(f(p)); });
          const double nb = sobolev::sobolev_norm(cv, basis, k, *grid).value;
          const double nf = sobolev::sobolev_norm(f, 0, *grid).value;
          lo = std::min(lo, nb / nf);
          hi = std::max(hi, nb / nf);
          tr.add({cell(f.id), cell(k), cell(nb), cell(nf), cell(nb / nf)});
        }
        if (c.family_size > 0) worst_env = std::max(worst_env, hi / lo);
      }
      const bool ok = coef_err <= c.tol("annulus_coefficient") && finite &&
                      worst_drift <= c.tol("refine_drift") && worst_env <= c.tol("ratio_envelope");
      b.criteria.push_back({6, "annulus conjugate-holomorphic smoothing", ok,
                            "z^-1 coefficient " + sci(coef.real()) + " vs " + sci(exact) + " error " +
                                leq(coef_err, c.tol("annulus_coefficient")) + ", refinement drift " +
                                leq(worst_drift, c.tol("refine_drift")) + ", ratio envelope " +
                                leq(worst_env, c.tol("ratio_envelope"))});
    }

    // pointwise product bound
    const auto pts = geometry::sup_grid(dom, 60, 64);
    const bool annulus = ds.kind == geometry::DomainKind::Annulus;
    Table& tp = b.table("product_bound_" + dn, {"pair", "k", "nodes", "violations", "s_norm_ok"});
    long violations = 0, nodes = 0;
    bool s_ok = true;
    for (int m = 0; m < c.family_size; ++m) {
      const auto f = band_limited(c.seed, 2000 + 2 * m, annulus ? -3 : 0, 5, 0.8, "f");
      const auto g = band_limited(c.seed, 2001 + 2 * m, annulus ? -3 : 0, 5, 0.8, "g");
      for (int k = 0; k <= 3; ++k) {
        const ProductCheck pc = product_bound(f, g, k, dom, pts);
        violations += pc.violations;
        nodes += pc.nodes;
        s_ok = s_ok && pc.s_norm_ok;
        tp.add({cell(m), cell(k), cell(static_cast<int>(pc.nodes)), cell(static_cast<int>(pc.violations)),
                cell(pc.s_norm_ok ? 1 : 0)});
      }
    }
    b.criteria.push_back({9, "pointwise product bound", violations == 0 && s_ok,
                          dn + ": " + std::to_string(violations) + " violations at " + std::to_string(nodes) +
                              " node checks (exact rational comparison), S-norm bound " +
                              (s_ok ? "holds" : "fails")});
  }
  return b;
}

ReportBundle run_partial_smoothing(const ScenarioConfig& c) {
  ReportBundle b = start(c);
  const geometry::Domain dom = c.domains[0].make();
  const auto cf = geometry::canonical_fields(dom);
  sobolev::ModalFunction f;
  f.id = "|2|z|-1|^0.3 e^{3i theta}";
  f.modes = {{3, [](double r) { return Complex(std::pow(std::abs(2 * r - 1), 0.3)); }}};
  const std::function<Complex(const Point&)> fp = [&f](const Point& p) { return f(p); };

  // ||f||_{k,T0} with modal T-derivatives
  Table& tt = b.table("t_norm", {"nr", "ntheta", "k", "t_norm"});
  std::vector<double> tnorm;
  std::vector<GridPtr> grids;
  for (int s = 0; s < 2; ++s) {
    grids.push_back(std::make_shared<const QuadratureGrid>(
        geometry::quadrature_grid(dom, c.grid.nr << s, c.grid.ntheta << s, c.grid.delta)));
    tnorm.push_back(sobolev::t_sobolev_norm(f, cf.T0, c.k, *grids.back()).value);
    tt.add({cell(grids.back()->nr), cell(grids.back()->ntheta), cell(c.k), cell(tnorm.back())});
    b.provenance.emplace_back("grid." + std::to_string(s), grids.back()->id());
  }
  const double t_drift = std::abs(tnorm[1] - tnorm[0]) / tnorm[0];

  // FD ||f||_1 under two doublings
  Table& tf = b.table("fd_h1", {"nr", "ntheta", "fd_norm_1", "growth", "growth_squared"});
  double min_growth = 1e300;
  double prev = 0.0;
  for (int s = 0; s < 3; ++s) {
    const auto pg = geometry::polar_eval_grid(dom, c.grid.nr << s, c.grid.ntheta << s, c.grid.delta);
    const double v = sobolev::sobolev_norm_fd(fp, 1, pg, f.id).value;
    const double growth = s ? v / prev - 1.0 : 0.0;
    const double growth2 = s ? (v * v) / (prev * prev) - 1.0 : 0.0;
    if (s) min_growth = std::min(min_growth, growth);
    tf.add({cell(pg.nr), cell(pg.ntheta), cell(v), s ? cell(growth) : "", s ? cell(growth2) : ""});
    prev = v;
  }

  // Bergman projection: only the z^3 coefficient survives
  Table& tb = b.table("bf_coefficients", {"basis", "exponent", "coef_re", "coef_im"});
  Table& tbn = b.table("bf_norm", {"basis", "grid", "k", "norm"});
  double off = 0.0;
  std::vector<double> bnorm;
  for (int s = 0; s < 2; ++s) {
    const auto basis = bergman::build_basis(dom, c.basis_size << s);
    const auto cv = project_fn(grids[s], basis, fp);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto row = std::vector<std::string>{cell(basis.label()), cell(basis.exponent(i).a)};
      for (auto& x : cells(cv.c[i])) row.push_back(x);
      tb.add(row);
      if (basis.exponent(i).a != 3) off = std::max(off, std::abs(cv.c[i]));
    }
    bnorm.push_back(sobolev::sobolev_norm(cv, basis, c.k, *grids[s]).value);
    tbn.add({cell(basis.label()), cell(grids[s]->id()), cell(c.k), cell(bnorm.back())});
  }
  const double b_drift = std::abs(bnorm[1] - bnorm[0]) / bnorm[0];

  const bool ok = t_drift < c.tol("t_norm_drift") && min_growth > c.tol("fd_growth") &&
                  off <= c.tol("off_coefficient") && b_drift < c.tol("bf_drift");
  b.criteria.push_back({7, "partial smoothing", ok,
                        "T-norm drift " + sci(t_drift) + " < " + sci(c.tol("t_norm_drift")) +
                            ", FD H^1 growth per doubling " + sci(min_growth) + " > " +
                            sci(c.tol("fd_growth")) + ", off-z^3 coefficients " +
                            leq(off, c.tol("off_coefficient")) + ", ||Bf||_" + std::to_string(c.k) +
                            " drift " + sci(b_drift) + " < " + sci(c.tol("bf_drift"))});
  return b;
}

}  // namespace blab::experiments
