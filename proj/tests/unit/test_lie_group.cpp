#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "orbitlab/errors.hpp"
#include "orbitlab/lie_group.hpp"

using namespace orbitlab;

namespace {
constexpr double kPi = std::numbers::pi;

ScalarField fn(const ManifoldPtr& m, double (*f)(double)) { return ScalarField::sample(m, f); }
}  // namespace

TEST(Diffeo, RejectsFoldingDisplacement) {
  auto m = GridManifold::flat(32);
  EXPECT_THROW(Diffeo(ScalarField::sample(m, [](double x) { return 1.5 * std::sin(x); })), NonInvertibleError);
}

TEST(Diffeo, InverseAndCompose) {
  auto m = GridManifold::flat(64);
  Diffeo phi(ScalarField::sample(m, [](double x) { return 0.3 * std::sin(x) + 0.1; }));
  const auto inv = phi.inverse();
  for (double y : {0.1, 2.0, 5.9}) EXPECT_NEAR(phi(phi.inverse_at(y)), y, 1e-13);
  const auto id = compose(phi, inv);
  EXPECT_LT(id.displacement().samples().cwiseAbs().maxCoeff(), 1e-11);
}

TEST(GroupElement, RotationProductOracle) {
  auto m = GridManifold::flat(64);
  auto f = fn(m, [](double x) { return std::cos(x); });
  auto g = fn(m, [](double x) { return std::sin(2.0 * x); });
  GroupElement a{Diffeo::rotation(m, 0.4), f};
  GroupElement b{Diffeo::rotation(m, 1.1), g};
  const auto ab = multiply(a, b);
  for (std::size_t i = 0; i < m->size(); i += 3) {
    const double x = m->node(i);
    EXPECT_NEAR(ab.diffeo.displacement()[i], 1.5, 1e-13);
    EXPECT_NEAR(ab.func[i], std::sin(2.0 * (x - 0.4)) + std::cos(x), 1e-12);
  }
}

TEST(GroupElement, InverseIsTwoSided) {
  auto m = GridManifold::cosine(64, 0.2);
  GroupElement a{Diffeo(fn(m, [](double x) { return 0.2 * std::sin(x) + 0.05 * std::cos(2.0 * x); })),
                 fn(m, [](double x) { return std::cos(x) + 0.3; })};
  const auto id = GroupElement::identity(m);
  EXPECT_LT(distance(multiply(a, inverse(a)), id), 1e-10);
  EXPECT_LT(distance(multiply(inverse(a), a), id), 1e-10);
}

TEST(Flow, ClosedFormForSineField) {
  auto m = GridManifold::flat(64);
  VectorField x(fn(m, [](double t) { return std::sin(t); }));
  const auto phi = flow(x, 0.7);
  for (std::size_t i = 1; i < m->size(); i += 5) {
    const double x0 = m->node(i);
    double expected = 2.0 * std::atan(std::exp(0.7) * std::tan(0.5 * x0));
    if (x0 > kPi) expected += 2.0 * kPi;
    EXPECT_NEAR(phi(x0), expected, 1e-9) << x0;
  }
}

TEST(Flow, MixedSignTimes) {
  auto m = GridManifold::flat(32);
  VectorField x(fn(m, [](double t) { return 0.5 + 0.2 * std::cos(t); }));
  const auto pts = flow_points(x, m->nodes(), {0.5, -0.5, 0.0, 1.0});
  EXPECT_LT((pts[2] - m->nodes()).cwiseAbs().maxCoeff(), 1e-15);
  const auto back = flow_points(x, pts[0], {-0.5});
  EXPECT_LT((back[0] - m->nodes()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ExpGm, ConstantFieldClosedForm) {
  // exp(c d/dx, f) = (shift by c, (1/c) int_0^c f(x - s) ds)
  auto m = GridManifold::flat(64);
  const double c = 0.8;
  AlgebraElement z{VectorField(ScalarField::constant(m, c)), fn(m, [](double x) { return std::cos(x); })};
  const auto g = exp_gm(z);
  for (std::size_t i = 0; i < m->size(); i += 4) {
    const double x = m->node(i);
    EXPECT_NEAR(g.diffeo.displacement()[i], c, 1e-10);
    EXPECT_NEAR(g.func[i], (std::sin(x) - std::sin(x - c)) / c, 1e-10);
  }
}

TEST(ExpGm, PureFunctionIsTranslation) {
  auto m = GridManifold::flat(32);
  AlgebraElement z{VectorField::zero(m), fn(m, [](double x) { return std::sin(x); })};
  const auto g = exp_gm(z);
  EXPECT_LT(distance(g, GroupElement{Diffeo::identity(m), z.func}), 1e-15);
}

TEST(Bracket, AntisymmetricWithJacobi) {
  auto m = GridManifold::flat(64);
  AlgebraElement a{VectorField(fn(m, [](double x) { return std::sin(x); })), fn(m, [](double x) { return std::cos(2 * x); })};
  AlgebraElement b{VectorField(fn(m, [](double x) { return 0.3 + std::cos(x); })), fn(m, [](double x) { return std::sin(x); })};
  AlgebraElement c{VectorField(fn(m, [](double x) { return std::cos(3 * x); })), fn(m, [](double x) { return 0.5; })};
  const auto zero = AlgebraElement::zero(m);
  EXPECT_LT(distance(bracket(a, b) + bracket(b, a), zero), 1e-12);
  const auto jacobi = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
  EXPECT_LT(distance(jacobi, zero), 1e-9);
}

TEST(Bracket, HandComputedValue) {
  auto m = GridManifold::flat(32);
  AlgebraElement a{VectorField(ScalarField::constant(m, 1.0)), ScalarField::constant(m, 0.0)};
  AlgebraElement b{VectorField::zero(m), fn(m, [](double x) { return std::sin(x); })};
  const auto r = bracket(a, b);
  for (std::size_t i = 0; i < m->size(); ++i) EXPECT_NEAR(r.func[i], -std::cos(m->node(i)), 1e-13);
}

TEST(Adjoint, MatchesDerivativeOfConjugation) {
  auto m = GridManifold::flat(64);
  GroupElement a{Diffeo(fn(m, [](double x) { return 0.2 * std::sin(x); })), fn(m, [](double x) { return std::cos(x); })};
  AlgebraElement z{VectorField(fn(m, [](double x) { return 0.4 * std::cos(x); })), fn(m, [](double x) { return std::sin(2 * x); })};
  const double t = 1e-4;
  const auto plus = multiply(multiply(a, exp_gm(t * z)), inverse(a));
  const auto minus = multiply(multiply(a, exp_gm((-t) * z)), inverse(a));
  const auto ad = adjoint(a, z);
  for (std::size_t i = 0; i < m->size(); i += 4) {
    const double dfield = (plus.diffeo.displacement()[i] - minus.diffeo.displacement()[i]) / (2 * t);
    const double dfunc = (plus.func[i] - minus.func[i]) / (2 * t);
    EXPECT_NEAR(dfield, ad.field[i], 1e-6);
    EXPECT_NEAR(dfunc, ad.func[i], 1e-6);
  }
}
