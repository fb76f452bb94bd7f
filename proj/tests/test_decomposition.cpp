#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "blab/decomposition/decomposition.hpp"

using namespace blab;
using namespace blab::decomposition;
using bergman::constant;
using bergman::laurent_polynomial;
using bergman::power_family;
using geometry::DomainKind;
using geometry::make_domain;

namespace {

const CollarChart& chart() {
  static const CollarChart c(make_domain(DomainKind::Disk));
  return c;
}

const Context& ctx(int ntau = 128, int ntheta = 64) {
  static std::map<std::pair<int, int>, Context> cache;
  auto key = std::make_pair(ntau, ntheta);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, Context::make(chart(), chart().fields().T0, ntau, ntheta, 0.0)).first;
  return it->second;
}

HolomorphicFunction zfun() { return laurent_polynomial("z", {{1, 1.0}}); }

}  // namespace

TEST(Context, NormalisationOfT0) {
  const Context& c = ctx();
  EXPECT_NEAR(c.scale.real(), -1.0 / chart().n_scale(), 1e-12);
  EXPECT_NEAR(c.scale.imag(), 0.0, 1e-14);
  EXPECT_THROW(Context::make(chart(), chart().normal(), 16, 16, 0.0), ContractError);
}

TEST(CrReduction, ZeroSupportAndDirectForm) {
  EXPECT_EQ(cr_reduction(ctx(), constant(0.0)).sup(), 0.0);
  const CollarField r = cr_reduction(ctx(), zfun());
  const auto& tau = ctx().grid->tau();
  for (int j = 0; j < ctx().grid->rows(); ++j) {
    const double z = flow::cutoff(tau[j]);
    if (z == 0.0 || z == 1.0) EXPECT_LE(r.v.row(j).cwiseAbs().maxCoeff(), 1e-12) << tau[j];
  }
  const Context& fine = ctx(256, 32);
  EXPECT_LT((cr_direct(fine, zfun()) - cr_reduction(fine, zfun())).sup(), 1e-6);
}

TEST(CrReduction, CauchyRiemannIdentity) {
  for (const auto& h : {constant(2.0), zfun(), power_family(0.8, 1.0),
                        laurent_polynomial("p", {{0, 1.0}, {3, Complex(0.5, -1.0)}})}) {
    EXPECT_LT(cr_defect(ctx(), h).sup(), 1e-12) << h.id;
    // spectral derivatives of the samples
    const Context& c = ctx(128, 256);
    const CollarField s = flow::sample(c.grid, flow::PointFn([&h](const Point& x) { return h(x); }));
    const CollarField d = flow::apply_field(chart().normal(), s) - flow::apply_field(c.Tbar, s) * kI;
    EXPECT_LT(d.sup(), 1e-8 * std::max(1.0, s.sup())) << h.id;
  }
}

TEST(ZetaH, ResidualExamples) {
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(zetah_residual(ctx(), constant(0.0), k), 0.0);
  EXPECT_LE(zetah_residual(ctx(), constant(1.0), 1), 1e-6);
  EXPECT_LE(zetah_residual(ctx(), zfun(), 2), 1e-5);
  EXPECT_THROW(zetah_residual(ctx(), zfun(), 4), ParameterError);
  EXPECT_THROW(zetah_residual(ctx(128, 16), power_family(0.95, 1.0), 1), ResolutionError);
}

TEST(ZetaH, ResidualDecreasesUnderRefinement) {
  const double coarse = zetah_residual(ctx(64, 32), zfun(), 2);
  const double fine = zetah_residual(ctx(128, 64), zfun(), 2);
  EXPECT_GE(coarse / fine, 4.0);
}

TEST(GOperators, FirstOrder) {
  const auto G = g_operators(1, ctx().Tbar);
  EXPECT_EQ(G.size(), 3u);  // includes G_0^0 = I
  EXPECT_EQ(G.at({1, 1}).id(), "(A[mu=0] o I)");
  EXPECT_EQ(G.at({1, 0}).tag().terms.size(), 2u);
  EXPECT_TRUE(G.at({1, 0}).tag().contains({1, {0}, 0}));
  EXPECT_TRUE(G.at({1, 0}).tag().contains({1, {1}, 1}));
  EXPECT_THROW(g_operators(3, ctx().Tbar), ParameterError);
}

TEST(GOperators, TagBounds) {
  const auto G = g_operators(2, ctx().Tbar);
  for (const auto& [key, e] : G) EXPECT_TRUE(g_tag_ok(e, key.first, key.second)) << e.tag().str();
  for (const auto& t : G.at({2, 0}).tag().terms) {
    EXPECT_LE(t.nu, 2);
    EXPECT_GE(t.alpha_sum(), t.nu);
  }
}

TEST(GOperators, OperationalIdentity) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  const Complex a(nd(rng), nd(rng)), b(nd(rng), nd(rng));
  const CollarField g = flow::sample(ctx().grid, flow::masked([a, b](const Point& x) {
    return a + b * x[0] * x[1] + x[0] * x[0];
  }));
  const auto G = g_operators(2, ctx().Tbar);
  const auto A = flow::op_antideriv();
  const auto X = flow::op_field_power(ctx().Tbar, 1);
  const auto AX = flow::compose({A, X});
  const CollarField lhs = flow::apply(flow::compose({AX, AX}), g);
  CollarField rhs = flow::zeros(ctx().grid);
  for (int m = 0; m <= 2; ++m)
    rhs = rhs + flow::apply(flow::compose({flow::op_field_power(ctx().Tbar, m), G.at({2, m})}), g);
  EXPECT_LT((lhs - rhs).sup(), 1e-6 * std::max(1.0, lhs.sup()));
}

TEST(Components, Examples) {
  const auto wgrid = geometry::quadrature_grid(chart().domain(), 32, 64);
  const auto r1 = h_components(ctx(), constant(1.0), 1, wgrid);
  EXPECT_EQ(r1.components.size(), 2u);
  EXPECT_LE(r1.residual, 1e-5);
  EXPECT_TRUE(std::isfinite(r1.norm_ratios[0]) && std::isfinite(r1.norm_ratios[1]));
  const auto r0 = h_components(ctx(), constant(0.0), 2, wgrid);
  for (const auto& H : r0.components) EXPECT_EQ(H.sup(), 0.0);
  EXPECT_EQ(r0.residual, 0.0);
  const auto r2 = h_components(ctx(), zfun(), 2, wgrid);
  EXPECT_LE(r2.residual, 1e-4);
}

TEST(Components, Linearity) {
  const auto wgrid = geometry::quadrature_grid(chart().domain(), 16, 32);
  const Complex al(0.3, -1.2), be(2.0, 0.5);
  const auto h1 = zfun();
  const auto h2 = laurent_polynomial("q", {{0, 1.0}, {2, Complex(0.0, 1.0)}});
  const auto h12 = laurent_polynomial("mix", {{0, be}, {1, al}, {2, be * kI}});
  for (int k : {1, 2}) {
    const auto a = h_components(ctx(), h1, k, wgrid);
    const auto b = h_components(ctx(), h2, k, wgrid);
    const auto c = h_components(ctx(), h12, k, wgrid);
    for (int m = 0; m <= k; ++m) {
      const CollarField d = c.components[m] - (a.components[m] * al + b.components[m] * be);
      EXPECT_LT(d.sup(), 1e-10 * std::max(1.0, c.components[m].sup()));
    }
  }
}

TEST(Components, CorrectionsVanishDeepInside) {
  // A (N - i Tbar)[zeta h] vanishes for tau >= 3/4, whatever h is.
  for (const auto& h : {constant(1.0), zfun(), power_family(0.5, 2.0)}) {
    const CollarField c = flow::tail_integral(cr_reduction(ctx(), h));
    for (int j = 0; j < ctx().grid->rows(); ++j)
      if (ctx().grid->tau()[j] >= 0.75) EXPECT_LT(c.v.row(j).cwiseAbs().maxCoeff(), 1e-6 * c.sup());
  }
}
