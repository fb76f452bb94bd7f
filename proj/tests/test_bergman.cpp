#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "blab/bergman/bergman.hpp"

using namespace blab;
using namespace blab::bergman;
using geometry::DomainKind;
using geometry::make_domain;

namespace {

std::shared_ptr<const QuadratureGrid> grid_for(const Domain& d, int nr = 32, int nt = 64) {
  return std::make_shared<const QuadratureGrid>(geometry::quadrature_grid(d, nr, nt));
}

}  // namespace

TEST(Basis, DiskNormsAndOrthogonality) {
  const Domain d = make_domain(DomainKind::Disk);
  const auto g = grid_for(d);
  const auto basis = build_basis(d, 32);
  auto e = [&](int i) { return sample(g, [&](const Point& p) { return basis.value(i, p); }); };
  const auto c0 = project(e(0), basis);
  EXPECT_NEAR(std::abs(c0.c[0]), 1.0, 1e-10);
  const auto c3 = project(e(3), basis);
  EXPECT_NEAR(std::abs(c3.c[1]), 0.0, 1e-10);
  EXPECT_LE(gram_defect(basis, *g), 1e-8);
}

TEST(Basis, AnnulusLogNormAndGram) {
  const Domain d = make_domain(DomainKind::Annulus, 0.5);
  const auto g = grid_for(d);
  std::vector<double> v;
  for (const auto& p : g->nodes) v.push_back(1.0 / p.norm2());
  EXPECT_NEAR(g->integrate(v), 2 * kPi * std::log(2.0), 1e-8);
  const auto basis = build_basis(d, 32);
  EXPECT_EQ(basis.size(), 32u);
  EXPECT_EQ(basis.exponent(0).a, -16);
  EXPECT_EQ(basis.exponent(31).a, 15);
  EXPECT_LE(gram_defect(basis, *g), 1e-8);
}

TEST(Basis, BallGram) {
  const Domain d = make_domain(DomainKind::Ball2);
  const auto basis = build_basis(d, 6);
  EXPECT_EQ(basis.size(), 28u);
  EXPECT_LE(gram_defect(basis, *grid_for(d, 12, 16)), 1e-8);
}

TEST(Project, DiskExamples) {
  const Domain d = make_domain(DomainKind::Disk);
  const auto g = grid_for(d);
  const auto basis = build_basis(d, 32);
  const auto one = project(sample(g, [](const Point&) { return Complex(1.0); }), basis);
  EXPECT_NEAR(std::abs(one.c[0] - std::sqrt(kPi)), 0.0, 1e-10);
  for (std::size_t i = 1; i < basis.size(); ++i) EXPECT_NEAR(std::abs(one.c[i]), 0.0, 1e-10);

  const auto zb = project(sample(g, [](const Point& p) { return std::conj(p.z(0)); }), basis);
  for (const auto& c : zb.c) EXPECT_NEAR(std::abs(c), 0.0, 1e-10);

  const auto r2 = project(sample(g, [](const Point& p) { return Complex(p.norm2()); }), basis);
  const auto v = synthesize(r2, basis, {Point(Complex(0.5)), Point(Complex(0.1, -0.3))});
  EXPECT_NEAR(std::abs(v[0] - 0.5), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(v[1] - 0.5), 0.0, 1e-10);
}

TEST(Project, DomainMismatch) {
  const auto g = grid_for(make_domain(DomainKind::Disk));
  const auto basis = build_basis(make_domain(DomainKind::Annulus, 0.5), 8);
  EXPECT_THROW(project(sample(g, [](const Point&) { return Complex(1.0); }), basis), ContractError);
}

TEST(Synthesize, UnitAndZeroVectors) {
  const Domain d = make_domain(DomainKind::Disk);
  const auto basis = build_basis(d, 8);
  CoefficientVector c{basis.label(), std::vector<Complex>(8, 0.0)};
  EXPECT_EQ(synthesize(c, basis, {Point(Complex(0.3, 0.2))})[0], Complex(0.0));
  c.c[0] = 1.0;
  EXPECT_NEAR(std::abs(synthesize(c, basis, {Point(Complex(0.0))})[0] - 1.0 / std::sqrt(kPi)), 0.0,
              1e-15);
  // Derivative synthesis: e_2' = sqrt(3/pi) 2z.
  c.c[0] = 0.0;
  c.c[2] = 1.0;
  const Complex z(0.2, 0.4);
  EXPECT_NEAR(std::abs(synthesize(c, basis, {Point(z)}, {1, 0})[0] - std::sqrt(3 / kPi) * 2.0 * z),
              0.0, 1e-14);
  CoefficientVector wrong{"other", std::vector<Complex>(8, 0.0)};
  EXPECT_THROW(synthesize(wrong, basis, {Point(z)}), ContractError);
}

TEST(Kernel, ClosedFormsAndReproduction) {
  const Domain disk = make_domain(DomainKind::Disk);
  EXPECT_NEAR(kernel_eval(disk, Point(Complex(0)), Point(Complex(0))).real(), 1.0 / kPi, 1e-15);
  const Domain ball = make_domain(DomainKind::Ball2);
  const Point o(Complex(0), Complex(0));
  EXPECT_NEAR(kernel_eval(ball, o, o).real(), 2.0 / (kPi * kPi), 1e-15);

  // integral K(z, w) e_2(w) dA(w) = e_2(z).
  const auto g = grid_for(disk, 48, 64);
  const auto basis = build_basis(disk, 4);
  const Point z(Complex(0.3));
  std::vector<Complex> v;
  for (const auto& w : g->nodes) v.push_back(kernel_eval(disk, z, w) * basis.value(2, w));
  EXPECT_NEAR(std::abs(g->integrate(v) - basis.value(2, z)), 0.0, 1e-8);

  EXPECT_THROW(kernel_eval(disk, Point(Complex(1.0)), Point(Complex(1.0))), NearSingularError);
}

TEST(Kernel, SeriesConvergesToClosedForm) {
  const Domain disk = make_domain(DomainKind::Disk);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    const Point z(std::polar(0.7 * u(rng), 6.28 * u(rng)));
    const Point w(std::polar(0.7 * u(rng), 6.28 * u(rng)));
    const Complex exact = kernel_eval(disk, z, w);
    double prev = 1e300;
    for (int nb : {8, 16, 32, 64}) {
      const auto basis = build_basis(disk, nb);
      Complex s = 0.0;
      for (std::size_t i = 0; i < basis.size(); ++i) s += basis.value(i, z) * std::conj(basis.value(i, w));
      const double err = std::abs(s - exact);
      EXPECT_LE(err, std::max(prev, 1e-14));
      prev = err;
    }
  }
}

TEST(Kernel, AnnulusSeriesAgreesWithBasisAndBound) {
  const Domain ann = make_domain(DomainKind::Annulus, 0.5);
  const Point z(std::polar(0.7, 0.4)), w(std::polar(0.8, -1.0));
  const Complex k64 = kernel_eval(ann, z, w, 64);
  const Complex k128 = kernel_eval(ann, z, w, 128);
  const double bound = kernel_truncation_bound(ann, z, w, 64);
  EXPECT_LE(std::abs(k64 - k128), bound * (1 + 1e-9) + 1e-15);
  EXPECT_LT(bound, 1e-6);
}

TEST(Project, Idempotence) {
  const Domain d = make_domain(DomainKind::Annulus, 0.5);
  const auto g = grid_for(d);
  const auto basis = build_basis(d, 32);
  const auto c = project(sample(g, [](const Point& p) { return std::exp(p.x[0]) * std::conj(p.z(0)); }),
                         basis);
  const auto vals = synthesize(c, basis, g->nodes);
  const auto c2 = project(GridFunction{g, vals}, basis);
  for (std::size_t i = 0; i < c.c.size(); ++i) EXPECT_NEAR(std::abs(c.c[i] - c2.c[i]), 0.0, 1e-9);
}

TEST(Project, SelfAdjointOnGrid) {
  const Domain d = make_domain(DomainKind::Disk);
  const auto g = grid_for(d);
  const auto basis = build_basis(d, 32);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  auto random_bandlimited = [&]() {
    std::vector<Complex> a(10);
    for (auto& x : a) x = Complex(nd(rng), nd(rng));
    return [a](const Point& p) {
      Complex s = 0.0;
      const Complex z = p.z(0);
      for (int j = 0; j < 5; ++j) s += a[j] * std::pow(z, j) + a[5 + j] * std::pow(std::conj(z), j) * p.norm2();
      return s;
    };
  };
  for (int t = 0; t < 5; ++t) {
    const auto gf = sample(g, random_bandlimited());
    const auto gg = sample(g, random_bandlimited());
    const auto bf = synthesize(project(gf, basis), basis, g->nodes);
    const auto bg = synthesize(project(gg, basis), basis, g->nodes);
    Complex lhs = 0.0, rhs = 0.0;
    for (std::size_t q = 0; q < g->size(); ++q) {
      lhs += g->weights[q] * bf[q] * std::conj(gg.values[q]);
      rhs += g->weights[q] * gf.values[q] * std::conj(bg[q]);
    }
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-8);
  }
}

TEST(Project, ConjugateHolomorphicOnDiskHasOnlyConstant) {
  const Domain d = make_domain(DomainKind::Disk);
  const auto g = grid_for(d);
  const auto basis = build_basis(d, 32);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 5; ++t) {
    std::vector<Complex> a(9);
    for (auto& x : a) x = Complex(nd(rng), nd(rng));
    const auto c = project(sample(g,
                                  [&](const Point& p) {
                                    Complex s = 0.0;
                                    for (int m = 0; m <= 8; ++m) s += a[m] * std::pow(p.z(0), m);
                                    return std::conj(s);
                                  }),
                           basis);
    EXPECT_NEAR(std::abs(c.c[0] - std::conj(a[0]) * std::sqrt(kPi)), 0.0, 1e-9);
    for (std::size_t i = 1; i < c.c.size(); ++i) EXPECT_NEAR(std::abs(c.c[i]), 0.0, 1e-9);
  }
}

TEST(Holomorphic, PowerFamilyCoefficientsMatchValues) {
  const auto h = power_family(0.9, 0.75);
  const Complex z(0.3, 0.2);
  Complex s = 0.0;
  for (int m = 0; m < 400; ++m) s += h.laurent(m) * std::pow(z, m);
  EXPECT_NEAR(std::abs(s - h(Point(z))), 0.0, 1e-12);
  const double eps = 1e-5;
  const Complex fd = (h(Point(z + eps)) - h(Point(z - eps))) / (2 * eps);
  EXPECT_NEAR(std::abs(fd - h.derivative(Point(z), 1)), 0.0, 1e-8);
}
