#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <gtest/gtest.h>

#include "orbitlab/errors.hpp"
#include "orbitlab/manifold.hpp"

using namespace orbitlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(GridManifold, FlatNodesAndWeights) {
  auto m = GridManifold::flat(16);
  EXPECT_EQ(m->size(), 16u);
  EXPECT_EQ(m->dimension(), 1);
  EXPECT_NEAR(m->node(4), kPi / 2.0, 1e-15);
  EXPECT_NEAR(m->weights().sum(), 2.0 * kPi, 1e-13);
  EXPECT_NEAR(m->injectivity_radius(), kPi, 1e-13);
}

TEST(GridManifold, RejectsBadInput) {
  EXPECT_THROW(GridManifold::flat(15), InvalidParameter);
  EXPECT_THROW(GridManifold::create(16, 1.0, [](double) { return -1.0; }), InvalidParameter);
  EXPECT_THROW(GridManifold::cosine(16, 1.2), InvalidParameter);
}

TEST(RiemExp, FlatCircleExamples) {
  auto m = GridManifold::flat(32);
  EXPECT_NEAR(riem_exp(*m, 0.5, 1.0), 1.5, 1e-14);
  EXPECT_NEAR(riem_exp(*m, 6.0, 1.0), 7.0 - 2.0 * kPi, 1e-14);
  EXPECT_NEAR(riem_exp(*m, 0.5, -1.0), 2.0 * kPi - 0.5, 1e-14);
  EXPECT_NEAR(riem_log(*m, 0.5, 1.5), 1.0, 1e-14);
  EXPECT_NEAR(riem_log(*m, 6.0, 0.2), 0.2 + 2.0 * kPi - 6.0, 1e-13);
  EXPECT_THROW(riem_log(*m, 0.0, kPi), CutLocusError);
}

// Independent root solve of int_x^y (1 + a cos t) dt = c(x) v.
TEST(RiemExp, CosineMetricAgainstRootFind) {
  const double a = 0.3;
  auto m = GridManifold::cosine(64, a);
  auto primitive = [a](double t) { return t + a * std::sin(t); };
  for (double x : {0.2, 1.7, 4.4}) {
    for (double v : {0.3, -0.9, 1.6}) {
      const double target = primitive(x) + (1.0 + a * std::cos(x)) * v;
      std::uintmax_t iters = 100;
      auto res = boost::math::tools::bisect([&](double y) { return primitive(y) - target; }, x - 10.0, x + 10.0,
                                            boost::math::tools::eps_tolerance<double>(50), iters);
      const double y = std::fmod(0.5 * (res.first + res.second) + 4.0 * kPi, 2.0 * kPi);
      EXPECT_NEAR(riem_exp(*m, x, v), y, 1e-11) << x << " " << v;
      EXPECT_NEAR(riem_log(*m, x, y), v, 1e-11);
    }
  }
}

TEST(RiemExp, LogInvertsExpInsideInjectivityRadius) {
  auto m = GridManifold::cosine(64, 0.4);
  for (double x = 0.05; x < 2.0 * kPi; x += 0.61) {
    const double vmax = 0.45 * m->total_length() / m->conformal(x);
    for (double s : {-0.9, -0.3, 0.1, 0.8}) {
      const double v = s * vmax;
      EXPECT_NEAR(riem_log(*m, x, riem_exp(*m, x, v)), v, 1e-10);
    }
  }
}

TEST(GridFunction, DifferentiateAndIntegrate) {
  auto m = GridManifold::flat(64);
  auto f = ScalarField::sample(m, [](double x) { return std::sin(x); });
  const auto df = differentiate(f);
  for (std::size_t i = 0; i < m->size(); i += 7) EXPECT_NEAR(df[i], std::cos(m->node(i)), 1e-12);
  EXPECT_NEAR(interpolate(f, 0.123), std::sin(0.123), 1e-13);
  auto g = ScalarField::sample(m, [](double x) { return std::cos(x) * std::cos(x); });
  EXPECT_NEAR(integrate(g), kPi, 1e-12);
}

TEST(GridFunction, IntegrateUsesRiemannianDensity) {
  auto m = GridManifold::cosine(64, 0.5);
  auto one = ScalarField::constant(m, 1.0);
  EXPECT_NEAR(integrate(one), 2.0 * kPi, 1e-12);
  auto f = ScalarField::sample(m, [](double x) { return std::cos(x); });
  EXPECT_NEAR(integrate(f), 0.5 * kPi, 1e-12);
}

TEST(VectorField, DivergenceIncludesMetricTerm) {
  const double a = 0.3;
  auto m = GridManifold::cosine(64, a);
  VectorField x(ScalarField::sample(m, [](double t) { return std::sin(t); }));
  const auto div = x.divergence();
  for (std::size_t i = 0; i < m->size(); i += 5) {
    const double t = m->node(i);
    const double expected = std::cos(t) + std::sin(t) * (-a * std::sin(t)) / (1.0 + a * std::cos(t));
    EXPECT_NEAR(div[i], expected, 1e-11);
  }
}

TEST(GridFunction, MixingManifoldsThrows) {
  auto a = ScalarField::constant(GridManifold::flat(16), 1.0);
  auto b = ScalarField::constant(GridManifold::flat(16), 1.0);
  EXPECT_THROW(a + b, InvalidParameter);
}
