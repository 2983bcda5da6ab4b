#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "orbitlab/errors.hpp"
#include "orbitlab/random.hpp"
#include "orbitlab/semiclassics.hpp"

using namespace orbitlab;

namespace {
constexpr double kPi = std::numbers::pi;

double gauss(double v, double s) { return std::exp(-0.5 * v * v / (s * s)); }

FiberSymbol separable(const ManifoldPtr& m, const FiberGrid& g, double sigma) {
  return FiberSymbol::sample(m, g, [=](double x, double v) { return cplx((1.0 + 0.4 * std::cos(x)) * gauss(v - 0.2, sigma)); });
}

double sup(const Eigen::MatrixXcd& a) { return a.cwiseAbs().maxCoeff(); }
}  // namespace

TEST(Fit, PowerLawAndRichardson) {
  std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> e;
  for (double x : h) e.push_back(3.0 * x * x);
  EXPECT_NEAR(fit_loglog_slope(h, e), 2.0, 1e-12);
  EXPECT_NEAR(std::abs(richardson(0.1, cplx(2.0 + 0.1 * 3.0), 0.05, cplx(2.0 + 0.05 * 3.0)) - 2.0), 0.0, 1e-14);
}

TEST(GroupoidQuantize, FlatClosedForm) {
  auto m = GridManifold::flat(128);
  const FiberGrid g{4.0, 256};
  const auto b = separable(m, g, 0.45);
  const double h = 0.0625;
  const auto fam = groupoid_quantize(b, {h});
  const auto& k = fam.kernel(h);
  for (std::size_t i = 0; i < 128; i += 9)
    for (std::size_t j = 0; j < 128; j += 1) {
      const double x = m->node(i), y = m->node(j);
      const double v = std::remainder(x - y, 2 * kPi) / h;
      const double expected = std::abs(v) < 3.6 ? (1 + 0.4 * std::cos(x)) * gauss(v - 0.2, 0.45) / h : 0.0;
      ASSERT_NEAR(std::abs(k.kernel()(i, j) - expected), 0.0, 1e-9 / h) << i << " " << j;
    }
  for (std::size_t i = 0; i < 128; ++i) EXPECT_NEAR(std::abs(h * k.kernel()(i, i) - b.values()(i, 128)), 0.0, 1e-14);
}

TEST(GroupoidQuantize, SupportRule) {
  auto m = GridManifold::flat(64);
  const auto b = separable(m, {8.0, 128}, 0.45);
  EXPECT_THROW(groupoid_quantize(b, {0.5}), SupportOverflowError);
  const auto zero = FiberSymbol::sample(m, {4.0, 64}, [](double, double) { return cplx{}; });
  const auto fam = groupoid_quantize(zero, {0.1, 0.05});
  EXPECT_EQ(sup(fam.kernel(0.05).kernel()), 0.0);
}

TEST(Dequantize, RoundTripOnCurvedCircle) {
  auto m = GridManifold::cosine(128, 0.3);
  const FiberGrid g{4.0, 128};
  const auto b = separable(m, g, 0.45);
  for (double h : {0.125, std::ldexp(1.0, -10)}) {
    const auto back = dequantize(canonical_kernel(b, h), h, g);
    EXPECT_LT(sup(back.values() - b.values()), 1e-10) << h;
  }
}

TEST(Trace, CanonicalExactPerturbedFirstOrder) {
  auto m = GridManifold::cosine(128, 0.3);
  const auto fam = groupoid_quantize(separable(m, {4.0, 128}, 0.45), dyadic_grid(3, 8));
  const auto r = trace_functional(fam);
  for (double e : r.errors) EXPECT_LT(e, 1e-10);
  const auto p = trace_functional(perturb(fam, [](double x, double y) { return cplx(std::cos(x - y) + 0.5, 0.2); }));
  EXPECT_NEAR(p.fitted_slope, 1.0, 0.15);
  EXPECT_LT(std::abs(p.extrapolated_limit - p.target), 1e-8);
}

TEST(Character, ReducesToTraceAndConstantPhase) {
  auto m = GridManifold::cosine(64, 0.3);
  const auto fam = groupoid_quantize(separable(m, {4.0, 128}, 0.45), dyadic_grid(3, 5));
  const auto t = trace_functional(fam);
  const auto c0 = character_pairing(fam, AlgebraElement::zero(m));
  for (std::size_t k = 0; k < t.values.size(); ++k) EXPECT_LT(std::abs(t.values[k] - c0.values[k]), 1e-12);
  const double c = 0.3;
  const auto cc = character_pairing(fam, {VectorField::zero(m), ScalarField::constant(m, c)});
  for (std::size_t k = 0; k < t.values.size(); ++k)
    EXPECT_LT(std::abs(cc.values[k] - std::polar(1.0, -2 * kPi * c) * t.values[k]), 1e-12);
}

TEST(Character, SeparableFlatOracle) {
  auto m = GridManifold::flat(256);
  const FiberGrid g{4.0, 256};
  const double s = 0.45;
  // a(x, p) = u(x) w(p) with w the transform of a Gaussian: w(p) = s sqrt(2 pi) exp(-2 pi^2 s^2 p^2)
  const auto b = FiberSymbol::sample(m, g, [=](double x, double v) { return cplx((1 + 0.4 * std::cos(x)) * gauss(v, s)); });
  const double b0 = 0.7;
  const AlgebraElement z{VectorField(ScalarField::constant(m, b0)), ScalarField::constant(m, 0.0)};
  const double expected = 2 * kPi * gauss(b0, s);
  EXPECT_NEAR(character_target(b, z).real(), expected, 1e-10);
  // Translation invariance makes every h exact here.
  const auto r = character_pairing(groupoid_quantize(b, dyadic_grid(3, 10)), z);
  for (double e : r.errors) EXPECT_LT(e, 1e-9);
}

TEST(Centralizer, ZeroIsIdentityAndPhaseForFunctions) {
  auto m = GridManifold::cosine(64, 0.3);
  const auto fam = groupoid_quantize(separable(m, {4.0, 128}, 0.45), {0.125});
  const auto same = centralizer_apply(Side::left, AlgebraElement::zero(m), fam);
  EXPECT_LT(sup(same.kernel(0.125).kernel() - fam.kernel(0.125).kernel()), 1e-13);
  EXPECT_LT(sup(same.symbol().values() - fam.symbol().values()), 1e-13);
  const auto f = ScalarField::sample(m, [](double x) { return 0.2 * std::sin(x); });
  const auto ph = centralizer_apply(Side::left, {VectorField::zero(m), f}, fam);
  for (std::size_t i = 0; i < 64; i += 5) {
    const cplx phase = std::polar(1.0, -2 * kPi * f[i]);
    EXPECT_LT(std::abs(ph.symbol().values()(i, 70) - phase * fam.symbol().values()(i, 70)), 1e-13);
    EXPECT_LT(std::abs(ph.kernel(0.125).kernel()(i, 3) - phase * fam.kernel(0.125).kernel()(i, 3)), 1e-12);
  }
}

TEST(Centralizer, DoubleCentralizerIdentity) {
  auto m = GridManifold::cosine(512, 0.3);
  const FiberGrid g{8.0, 256};
  Rng rng(21);
  const auto z = random_algebra_element(m, rng);
  const auto b1 = FiberSymbol::sample(m, g, [](double x, double v) { return cplx((1 + 0.3 * std::sin(x)) * gauss(v, 0.6), 0.2 * gauss(v - 0.5, 0.6)); });
  const auto b2 = FiberSymbol::sample(m, g, [](double x, double v) { return cplx(gauss(v + 0.4, 0.6) * (1 + 0.5 * std::cos(2 * x))); });
  const auto h = dyadic_grid(3, 5);
  const auto f1 = groupoid_quantize(b1, h);
  const auto f2 = groupoid_quantize(b2, h);
  const auto l2 = centralizer_apply(Side::left, z, f2);
  const auto r1 = centralizer_apply(Side::right, z, f1);
  for (double hv : h) {
    const auto lhs = pair_convolve(f1.kernel(hv), l2.kernel(hv)).kernel();
    const auto rhs = pair_convolve(r1.kernel(hv), f2.kernel(hv)).kernel();
    EXPECT_LT(sup(lhs - rhs) * hv, 1e-7) << hv;
  }
  EXPECT_LT(sup(tb_convolve(f1.symbol(), l2.symbol()).values() - tb_convolve(r1.symbol(), f2.symbol()).values()), 1e-7);
}

TEST(Covariance, PureFunctionPhaseAndTransport) {
  auto m = GridManifold::cosine(64, 0.3);
  const FiberGrid g{4.0, 128};
  const auto fam = groupoid_quantize(separable(m, g, 0.45), {0.125});
  const auto f = ScalarField::sample(m, [](double x) { return 0.3 * std::cos(x); });
  const GroupElement a{Diffeo::identity(m), f};
  const auto k = covariant_conjugate(a, fam, 0.125);
  for (std::size_t i = 0; i < 64; i += 7)
    for (std::size_t j = 0; j < 64; j += 3) {
      const cplx expected = std::polar(1.0, -2 * kPi * (f[i] - f[j]) / 0.125) * fam.kernel(0.125).kernel()(i, j);
      EXPECT_LT(std::abs(k.kernel()(i, j) - expected), 1e-12);
    }
  const auto pg = MomentumGrid::reciprocal(g);
  const auto sym = PhaseSymbol::sample(m, pg, [](double x, double p) { return cplx(gauss(p - std::sin(x), 0.45)); });
  const auto moved = symbol_transport(a, sym);
  const auto df = f.derivative();
  for (std::size_t i = 0; i < 64; i += 7)
    for (std::size_t k2 = 40; k2 < 90; k2 += 5)
      EXPECT_NEAR(std::abs(moved.values()(i, k2) - gauss(pg.node(k2) + df[i] - std::sin(m->node(i)), 0.45)), 0.0, 1e-10);
}

TEST(Covariance, TransportCoherenceAndKernelHomomorphism) {
  auto m = GridManifold::cosine(256, 0.3);
  const FiberGrid g{4.0, 256};
  Rng rng(31);
  const auto a = random_group_element(m, rng);
  const auto b = random_group_element(m, rng);
  const auto pg = MomentumGrid::reciprocal(g);
  const auto sym = PhaseSymbol::sample(m, pg, [](double x, double p) { return cplx(gauss(p - 0.5 * std::sin(x), 0.8)); });
  const auto lhs = symbol_transport(multiply(a, b), sym);
  const auto rhs = symbol_transport(a, symbol_transport(b, sym));
  EXPECT_LT(sup(lhs.values() - rhs.values()), 1e-8);
  const double h = 0.0625;
  const auto k = canonical_kernel(separable(m, g, 0.45), h);
  const auto one = covariant_conjugate(multiply(a, b), k, h);
  const auto two = covariant_conjugate(a, covariant_conjugate(b, k, h), h);
  EXPECT_LT(sup(one.kernel() - two.kernel()) * h, 1e-7);
}

TEST(Covariance, DequantizedConjugateConverges) {
  auto m = GridManifold::cosine(128, 0.3);
  const FiberGrid g{4.0, 128};
  Rng rng(41);
  GroupElement a{random_diffeo(m, rng, 0.3), random_field(m, rng, 0.3)};
  const auto b = separable(m, g, 0.45);
  const auto pg = MomentumGrid::reciprocal(g);
  const auto target = fiber_fourier(symbol_transport(a, fiber_fourier_inv(b, pg)), g);
  const auto hs = dyadic_grid(4, 8);
  const auto fam = groupoid_quantize(b, hs);
  std::vector<double> errs;
  for (double h : hs) errs.push_back(sup(dequantize(covariant_conjugate(a, fam, h), h, g).values() - target.values()));
  const auto r = make_error_report(hs, errs);
  EXPECT_GE(r.fitted_slope, 0.9);
}
