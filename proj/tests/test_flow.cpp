#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "blab/flow/chart.hpp"
#include "blab/flow/collar.hpp"
#include "blab/flow/operator_expr.hpp"

using namespace blab;
using namespace blab::flow;
using geometry::DomainKind;
using geometry::make_domain;

namespace {

const CollarChart& disk_chart() {
  static const CollarChart c(make_domain(DomainKind::Disk));
  return c;
}

const CollarChart& annulus_chart() {
  static const CollarChart c(make_domain(DomainKind::Annulus, 0.5));
  return c;
}

// Smooth polynomial in (x, y) with seeded coefficients.
PointFn random_poly(std::uint64_t seed, int degree = 3) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<std::tuple<int, int, Complex>> terms;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b) terms.emplace_back(a, b, Complex(nd(rng), nd(rng)));
  return [terms](const Point& p) {
    Complex s = 0.0;
    for (const auto& [a, b, c] : terms) s += c * std::pow(p[0], a) * std::pow(p[1], b);
    return s;
  };
}

}  // namespace

TEST(Cutoff, PlateausAndSmoothness) {
  EXPECT_EQ(cutoff(0.0), 1.0);
  EXPECT_EQ(cutoff(0.25), 1.0);
  EXPECT_EQ(cutoff(0.75), 0.0);
  EXPECT_EQ(cutoff(1.5), 0.0);
  EXPECT_NEAR(cutoff(0.5), 0.5, 1e-15);
  // derivatives up to order four by differences on the transition band
  const double h = 1e-3;
  double maxd[5] = {0, 0, 0, 0, 0};
  for (double t = 0.2; t <= 0.8; t += 1e-3) {
    const double f0 = cutoff(t), fp = cutoff(t + h), fm = cutoff(t - h);
    const double fpp = cutoff(t + 2 * h), fmm = cutoff(t - 2 * h);
    const double d1 = (fp - fm) / (2 * h);
    const double d2 = (fp - 2 * f0 + fm) / (h * h);
    const double d3 = (fpp - 2 * fp + 2 * fm - fmm) / (2 * h * h * h);
    const double d4 = (fpp - 4 * fp + 6 * f0 - 4 * fm + fmm) / (h * h * h * h);
    for (double d : {d1, d2, d3, d4}) ASSERT_TRUE(std::isfinite(d));
    maxd[1] = std::max(maxd[1], std::abs(d1));
    maxd[2] = std::max(maxd[2], std::abs(d2));
    maxd[3] = std::max(maxd[3], std::abs(d3));
    maxd[4] = std::max(maxd[4], std::abs(d4));
    const double e = 1e-4;
    const double d1a = (-cutoff(t + 2 * e) + 8 * cutoff(t + e) - 8 * cutoff(t - e) + cutoff(t - 2 * e)) / (12 * e);
    EXPECT_NEAR(cutoff_derivative(t), d1a, 1e-8);
  }
  EXPECT_LT(maxd[1], 10.0);
  EXPECT_LT(maxd[2], 1e2);
  EXPECT_LT(maxd[3], 1e3);
  EXPECT_LT(maxd[4], 1e5);
}

TEST(Flow, IdentityAtZeroAndClosedForm) {
  const auto& c = disk_chart();
  const Point x(Complex(0.3, -0.4));
  const Point y = c.flow(0.0, x);
  EXPECT_EQ(y.x, x.x);
  const double s = c.n_scale();
  EXPECT_NEAR(s, std::log(2.0), 1e-10);
  for (double t : {-1.0, -0.37, 0.5, 1.0}) {
    const Point z = c.flow(t, Point(Complex(0.5)));
    EXPECT_NEAR(z.norm(), 0.5 * std::exp(s * t), 1e-10) << t;
  }
}

TEST(Flow, GroupProperty) {
  const auto& c = disk_chart();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double r = 0.55 + 0.4 * u(rng), th = 2 * kPi * u(rng);
    const double a = -0.4 * u(rng), b = -0.4 * u(rng);
    const Point x(std::polar(r, th));
    const Point p = c.flow(a, c.flow(b, x));
    const Point q = c.flow(a + b, x);
    EXPECT_LT((p - q).norm(), 1e-9);
  }
}

TEST(Flow, EscapeAndRange) {
  const auto& c = disk_chart();
  EXPECT_THROW(c.flow(2.5, Point(Complex(0.9))), ParameterError);
  // t_x = 1.5, flowing back 1 leaves V
  const Point x(Complex(std::exp(-1.5 * c.n_scale())));
  EXPECT_THROW(c.flow(-1.0, x), FlowEscapeError);
}

TEST(HittingTime, BoundaryAndClosedForm) {
  for (const CollarChart* c : {&disk_chart(), &annulus_chart()})
    for (const Point& p : c->domain().boundary_samples(16))
      EXPECT_NEAR(c->hitting_time(p), 0.0, 1e-8);
  const auto& c = disk_chart();
  const Point x(std::polar(std::exp(-0.3 * c.n_scale()), 1.1));
  EXPECT_NEAR(c.hitting_time(x), 0.3, 1e-8);
  for (double r : {0.5, 0.77, 0.999})
    EXPECT_NEAR(c.hitting_time(Point(Complex(r))), -std::log(r) / c.n_scale(), 1e-8);
  EXPECT_THROW(c.hitting_time(Point(Complex(0.1))), NotInCollarError);
  EXPECT_FALSE(c.in_collar(Point(Complex(0.3))));
  EXPECT_TRUE(c.in_collar(Point(Complex(0.8))));
}

TEST(HittingTime, ComparableToBoundaryDistance) {
  for (const CollarChart* c : {&disk_chart(), &annulus_chart()}) {
    double lo = 1e300, hi = 0.0;
    for (const Point& p : c->domain().boundary_samples(8))
      for (int i = 1; i <= 40; ++i) {
        const double tx = i / 40.0 * 0.999;
        const Point x = c->flow(-tx, p);
        const double t = c->hitting_time(x);
        EXPECT_GT(t, 0.0);
        const double q = t / c->domain().boundary_distance(x);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
    EXPECT_GT(lo, 0.1);
    EXPECT_LT(hi / lo, 10.0);
  }
}

TEST(Antiderivative, ZeroAndRadialClosedForm) {
  const auto& c = disk_chart();
  const CollarFn zero = [](const Point&, double) { return Complex(0.0); };
  EXPECT_EQ(c.antiderivative(zero, Point(Complex(0.8))), Complex(0.0));
  const double s = c.n_scale();
  const CollarFn g = [](const Point& x, double t) {
    return t <= 2.0 ? Complex(x.norm()) : Complex(0.0);
  };
  for (double r : {0.55, 0.7, 0.95, 1.0}) {
    const Point x(std::polar(r, 0.3));
    EXPECT_NEAR(std::abs(c.antiderivative(g, x) - r * (1 - std::exp(-s)) / s), 0.0, 1e-10);
  }
}

TEST(Antiderivative, FundamentalTheorem) {
  for (const CollarChart* c : {&disk_chart(), &annulus_chart()}) {
    const auto grid = geometry::polar_eval_grid(c->domain(), 21, 16, 1e-3);
    double worst = 0.0;
    for (int seed = 0; seed < 3; ++seed) {
      const CollarFn g = masked(random_poly(100 + seed));
      const CollarFn ng = [&](const Point& x, double t) { return c->normal_derivative(g, x, t); };
      for (std::size_t i = 0; i < grid.radii.size(); ++i)
        for (std::size_t k = 0; k < grid.angles.size(); ++k) {
          const Point x = grid.node(i, k);
          const double tx = c->try_hitting_time(x);
          const Complex lhs = tx < 0.0 ? Complex(0.0) : g(x, tx);
          worst = std::max(worst, std::abs(lhs - c->antiderivative(ng, x, tx)));
        }
    }
    EXPECT_LT(worst, 1e-6) << c->domain().name();
  }
}

TEST(Hardy1D, ClosedCase) {
  const Hardy1D h = hardy_1d([](double) { return 1.0; }, 0);
  EXPECT_NEAR(h.lhs2, 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(h.rhs2, 4.0 / 3.0, 1e-10);
}

class CollarTest : public ::testing::Test {
 protected:
  void SetUp() override { grid = make_collar_grid(disk_chart(), 96, 64); }
  CollarField g(std::uint64_t seed) const { return sample(grid, masked(random_poly(seed))); }
  CollarGridPtr grid;
};

TEST_F(CollarTest, PositionsAndArea) {
  const double s = disk_chart().n_scale();
  for (int j = 0; j < grid->rows(); j += 7)
    for (int k = 0; k < grid->cols(); k += 5) {
      const Complex z = std::polar(std::exp(-s * grid->tau()[j]), grid->theta()[k]);
      EXPECT_LT(std::abs(grid->position(j, k).z(0) - z), 1e-11);
    }
  const CollarField one = sample(grid, PointFn([](const Point&) { return Complex(1.0); }));
  EXPECT_NEAR(std::pow(l2(one), 2), 0.75 * kPi, 1e-12);
}

TEST_F(CollarTest, DerivativesAndNormalField) {
  const CollarField z = sample(grid, PointFn([](const Point& p) { return p.z(0); }));
  const CollarField dz = apply(op_diff(1, 0), z);
  EXPECT_LT((dz.v.array() - 1.0).abs().maxCoeff(), 1e-11);
  const CollarField f = g(3);
  const CollarField nf = apply_field(disk_chart().normal(), f);
  EXPECT_LT((nf.v + d_tau(f).v).cwiseAbs().maxCoeff(), 1e-9 * f.sup() * 100);
}

TEST_F(CollarTest, AntiderivativeMatchesTrajectoryQuadrature) {
  const CollarFn gf = masked(random_poly(5));
  const CollarField a = apply(op_antideriv(), sample(grid, gf));
  const auto& c = disk_chart();
  double worst = 0.0;
  for (int j = 0; j < grid->rows(); j += 3)
    for (int k = 0; k < grid->cols(); k += 9) {
      const double tau = grid->tau()[j];
      if (tau >= 1.0) continue;
      worst = std::max(worst, std::abs(a.v(j, k) - c.antiderivative(gf, grid->position(j, k), tau)));
    }
  EXPECT_LT(worst, 1e-8);
}

TEST_F(CollarTest, KernelIdentity) {
  const CollarField x = g(6);
  const CollarField a = apply(op_antideriv({0.0, 1.0}, 0), x);
  const CollarField b = apply(op_antideriv({1.0}, 1), x);
  EXPECT_LT((a - b).sup(), 1e-13);
  EXPECT_EQ(op_antideriv({0.0, 1.0}, 0).tag().str(), op_antideriv({1.0}, 1).tag().str());
}

TEST_F(CollarTest, FtcThroughExpressions) {
  const CollarField x = g(8);
  const auto ftc = compose({op_antideriv(), op_field_power(disk_chart().normal(), 1)});
  EXPECT_LT((apply(ftc, x) - x).sup(), 1e-6);
}

TEST_F(CollarTest, LinearityAndCommutators) {
  const CollarField x = g(9);
  const auto A = op_antideriv();
  EXPECT_LT(apply(sum({{1.0, A}, {-1.0, A}}), x).sup(), 1e-15);
  EXPECT_LT(apply(commutator(A, A), x).sup(), 1e-13);
  const auto X = op_diff(1, 0);
  const CollarField c = apply(commutator(A, X), x);
  const CollarField d = apply(compose({A, X}), x) - apply(compose({X, A}), x);
  EXPECT_LT((c - d).sup(), 1e-12);
}

TEST(ClassTags, CommutatorRules) {
  const auto X = op_diff(1, 0);
  for (int mu : {0, 1, 2}) {
    const auto c = commutator(op_antideriv({1.0}, mu), X);
    EXPECT_EQ(c.tag().terms.size(), 2u);
    EXPECT_TRUE(c.tag().contains({1, {mu}, 0}));
    EXPECT_TRUE(c.tag().contains({1, {mu + 1}, 1}));
  }
  const auto c2 = iterated_commutator(op_antideriv(), X, 2);
  for (const auto& t : c2.tag().terms) {
    EXPECT_EQ(t.ell, 1);
    EXPECT_EQ(t.alpha[0], t.nu);
    EXPECT_LE(t.nu, 2);
  }
  const auto d2 = commutator(op_antideriv(), op_diff(1, 1));
  EXPECT_TRUE(d2.tag().contains({1, {0}, 1}));
  EXPECT_TRUE(d2.tag().contains({1, {1}, 2}));
  EXPECT_EQ(d2.tag().s_tag().k, 1);
  EXPECT_EQ(d2.tag().s_tag().nu, 2);
  const auto AA = compose({op_antideriv({1.0}, 1), op_antideriv()});
  EXPECT_EQ(AA.tag().terms.size(), 1u);
  EXPECT_EQ(AA.tag().terms[0].ell, 2);
  EXPECT_EQ(AA.tag().s_tag().k, 3);
}

TEST_F(CollarTest, HardyMajorantBounds) {
  for (int seed = 0; seed < 20; ++seed) {
    const CollarField x = g(200 + seed);
    for (int mu : {0, 1})
      for (int ell = 0; ell <= 8; ++ell) {
        const double r = weighted_ratio(op_Bmu(mu), x, ell);
        EXPECT_LE(r, 2.0 / (2 * ell + 1) + 0.05) << seed << " " << mu << " " << ell;
      }
  }
  EXPECT_THROW(weighted_ratio(op_Bmu(0), zeros(grid), 0), DegenerateInputError);
  EXPECT_THROW(weighted_ratio(op_Bmu(0), g(1), 9), ParameterError);
}

TEST_F(CollarTest, MajorantDominatesAntiderivative) {
  const CollarField x = g(11);
  const CollarField b = apply(op_Bmu(0), x);
  const CollarField a = apply(op_antideriv(), x);
  EXPECT_LE((a.v.cwiseAbs() - b.v.real()).maxCoeff(), 1e-8);
  const CollarField pos = {grid, x.v.cwiseAbs().cast<Complex>()};
  EXPECT_LT((apply(op_Bmu(0), pos) - apply(op_antideriv(), pos)).sup(), 1e-14);
}

TEST_F(CollarTest, SClassSoundness) {
  const std::vector<OperatorExpr> exprs = {
      op_antideriv(),
      op_antideriv({1.0}, 1),
      commutator(op_antideriv(), op_diff(1, 0)),
      commutator(op_antideriv(), op_diff(0, 2)),
      iterated_commutator(op_antideriv(), op_diff(0, 1), 2),
      compose({op_antideriv(), op_antideriv()}),
      op_Bmu(1),
  };
  for (const auto& e : exprs) {
    double worst = 0.0;
    for (int seed = 0; seed < 5; ++seed) {
      const CollarField x = g(300 + seed);
      const double r0 = weighted_ratio(e, x, 0), r8 = weighted_ratio(e, x, 8);
      EXPECT_LE(r8, 3.0 * r0) << e.id();
      worst = std::max(worst, r8 / r0);
    }
    RecordProperty(e.id(), std::to_string(worst));
  }
}

TEST_F(CollarTest, CutoffReproduction) {
  const PointFn p = random_poly(12);
  const CollarFn bumped = [p](const Point& x, double t) {
    return p(x) + (t >= 0.75 ? Complex(std::exp(-1.0 / (t - 0.7)), 1.0) : Complex(0.0));
  };
  const CollarFn plain = [p](const Point& x, double) { return p(x); };
  const auto zeta = op_multiply("zeta", [](const Point&, double t) { return Complex(cutoff(t)); });
  const auto e = compose({commutator(op_antideriv(), op_diff(1, 0)), zeta});
  EXPECT_EQ((apply(e, sample(grid, bumped)) - apply(e, sample(grid, plain))).sup(), 0.0);
}
