#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "orbitlab/errors.hpp"
#include "orbitlab/groupoid.hpp"
#include "orbitlab/random.hpp"

using namespace orbitlab;

namespace {
constexpr double kPi = std::numbers::pi;

double bump(double v, double r) {
  const double t = v / r;
  return std::abs(t) < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
}
}  // namespace

TEST(FiberFourier, GaussianSelfDuality) {
  auto m = GridManifold::flat(32);
  const FiberGrid vg{4.0, 256};
  const auto pg = MomentumGrid::reciprocal(vg);
  auto u = [](double x) { return 1.0 + 0.5 * std::cos(x); };
  const auto a = PhaseSymbol::sample(m, pg, [&](double x, double p) { return u(x) * std::exp(-kPi * p * p); });
  const auto b = fiber_fourier(a, vg);
  double err = 0.0, imag = 0.0;
  for (std::size_t i = 0; i < m->size(); ++i)
    for (std::size_t j = 0; j < vg.size; ++j) {
      const double v = vg.node(j);
      err = std::max(err, std::abs(b.values()(i, j) - u(m->node(i)) * std::exp(-kPi * v * v)));
      imag = std::max(imag, std::abs(b.values()(i, j).imag()));
    }
  EXPECT_LT(err, 1e-8);
  EXPECT_LT(imag, 1e-12);
  // even in v
  EXPECT_NEAR(std::abs(b.values()(3, 128 + 10) - b.values()(3, 128 - 10)), 0.0, 1e-13);
}

TEST(FiberFourier, RoundTripAndParseval) {
  auto m = GridManifold::cosine(32, 0.3);
  const FiberGrid vg{4.0, 256};
  const auto pg = MomentumGrid::reciprocal(vg);
  const auto a = PhaseSymbol::sample(m, pg, [](double x, double p) {
    return cplx(std::exp(-0.5 * (p - std::sin(x)) * (p - std::sin(x))), 0.3 * std::exp(-p * p));
  });
  const auto b = fiber_fourier(a, vg);
  const auto back = fiber_fourier_inv(b, pg);
  EXPECT_LT((back.values() - a.values()).cwiseAbs().maxCoeff(), 1e-9);
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t i = 0; i < m->size(); ++i) {
    lhs += b.values().row(i).squaredNorm() * b.fiber_weight(i);
    rhs += a.values().row(i).squaredNorm() * a.fiber_weight(i);
  }
  EXPECT_NEAR(lhs, rhs, 1e-8);
}

TEST(FiberFourier, ReciprocityEnforced) {
  auto m = GridManifold::flat(8);
  const FiberGrid vg{4.0, 64};
  const auto a = PhaseSymbol::sample(m, {0.2, 64}, [](double, double) { return cplx(1.0); });
  EXPECT_THROW(fiber_fourier(a, vg), GridMismatchError);
}

TEST(FiberSymbol, BandCheckAndInterpolation) {
  auto m = GridManifold::flat(32);
  const FiberGrid vg{4.0, 128};
  EXPECT_THROW(FiberSymbol::sample(m, vg, [](double, double v) { return cplx(std::exp(-v * v / 4.0)); }),
               SupportOverflowError);
  const auto b = FiberSymbol::sample(m, vg, [](double x, double v) { return cplx(std::cos(x) * std::exp(-3.0 * v * v)); });
  EXPECT_NEAR(b(0.37, 0.41).real(), std::cos(0.37) * std::exp(-3.0 * 0.41 * 0.41), 1e-10);
  EXPECT_EQ(b(0.37, 4.5), cplx{});
}

TEST(TbConvolve, DeltaIsUnit) {
  auto m = GridManifold::cosine(16, 0.2);
  const FiberGrid vg{4.0, 128};
  const auto b1 = FiberSymbol::sample(m, vg, [](double x, double v) { return cplx(bump(v - 0.3, 1.5) * (2 + std::sin(x)), 0.1 * bump(v, 2.0)); });
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(16, 128);
  for (std::size_t i = 0; i < 16; ++i) d(i, 64) = 1.0 / (m->conformal_samples()[i] * vg.step());
  const auto c = tb_convolve(b1, FiberSymbol(m, vg, d));
  EXPECT_LT((c.values() - b1.values()).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(TbConvolve, BoxesGiveTriangleAgainstBruteForce) {
  auto m = GridManifold::flat(8);
  const FiberGrid vg{4.0, 128};
  auto box = [](double, double v) { return cplx(std::abs(v) <= 1.0 ? 1.0 : 0.0); };
  const auto b = FiberSymbol::sample(m, vg, box);
  const auto c = tb_convolve(b, b);
  double err = 0.0;
  for (std::size_t r = 0; r < vg.size; ++r) {
    cplx acc{};
    for (std::size_t l = 0; l < vg.size; ++l) {
      const long j = static_cast<long>(r) + 64 - static_cast<long>(l);
      if (j < 0 || j >= 128) continue;
      acc += b.values()(0, j) * b.values()(0, l) * vg.step();
    }
    err = std::max(err, std::abs(acc - c.values()(0, r)));
  }
  EXPECT_LT(err, 1e-12);
  EXPECT_NEAR(c.values()(0, 64).real(), 33 * vg.step(), 1e-12);
}

TEST(TbConvolve, ProductOfSymbols) {
  auto m = GridManifold::cosine(16, 0.3);
  const FiberGrid vg{8.0, 256};
  const auto pg = MomentumGrid::reciprocal(vg);
  const auto b1 = FiberSymbol::sample(m, vg, [](double x, double v) { return cplx(bump(v, 3.0) * (1 + 0.5 * std::sin(x))); });
  const auto b2 = FiberSymbol::sample(m, vg, [](double x, double v) { return cplx(bump(v - 0.5, 2.0), std::cos(x) * bump(v, 2.5)); });
  const auto lhs = fiber_fourier_inv(tb_convolve(b1, b2), pg);
  const auto a1 = fiber_fourier_inv(b1, pg);
  const auto a2 = fiber_fourier_inv(b2, pg);
  EXPECT_LT((lhs.values() - a1.values().cwiseProduct(a2.values())).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(TbConvolve, WideSupportOverflows) {
  auto m = GridManifold::flat(8);
  const FiberGrid vg{4.0, 128};
  const auto b = FiberSymbol::sample(m, vg, [](double, double v) { return cplx(bump(v, 3.5)); });
  EXPECT_THROW(tb_convolve(b, b), SupportOverflowError);
}

TEST(PairConvolve, IdentityInvolutionRankOne) {
  auto m = GridManifold::cosine(32, 0.3);
  Rng rng(12);
  const auto u = random_wavefunction(m, rng);
  const auto v = random_wavefunction(m, rng);
  const auto s = random_wavefunction(m, rng);
  const auto t = random_wavefunction(m, rng);
  const L2Operator uv(m, Eigen::MatrixXcd(u.samples() * v.samples().transpose()));
  const L2Operator st(m, Eigen::MatrixXcd(s.samples() * t.samples().transpose()));
  EXPECT_LT((pair_convolve(L2Operator::identity(m), uv).kernel() - uv.kernel()).cwiseAbs().maxCoeff(), 1e-9);
  const auto prod = pair_convolve(uv, st);
  cplx vs{};
  for (std::size_t i = 0; i < m->size(); ++i) vs += v[i] * s[i] * m->weights()[i];
  EXPECT_LT((prod.kernel() - vs * Eigen::MatrixXcd(u.samples() * t.samples().transpose())).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((pair_convolve(uv, st).adjoint().kernel() - pair_convolve(st.adjoint(), uv.adjoint()).kernel())
                .cwiseAbs().maxCoeff(), 1e-12);
  // naive triple loop
  Eigen::MatrixXcd naive = Eigen::MatrixXcd::Zero(32, 32);
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j)
      for (int k = 0; k < 32; ++k) naive(i, j) += uv.kernel()(i, k) * m->weights()[k] * st.kernel()(k, j);
  EXPECT_LT((naive - prod.kernel()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Beta, FlatClosedFormAndBoundary) {
  auto m = GridManifold::flat(32);
  const auto p = beta_chart(*m, 0.1, {1.0, 2.0});
  ASSERT_FALSE(p.at_boundary());
  EXPECT_NEAR(std::get<PairPoint>(p.payload).y, 0.8, 1e-14);
  const auto z = beta_chart(*m, 0.1, {1.0, 0.0});
  EXPECT_NEAR(std::get<PairPoint>(z.payload).y, 1.0, 1e-15);
  const auto b = beta_chart(*m, 0.0, {1.0, 2.0});
  ASSERT_TRUE(b.at_boundary());
  EXPECT_EQ(std::get<TangentPoint>(b.payload).v, 2.0);
  auto c = GridManifold::cosine(64, 0.4);
  for (double v : {-3.0, 0.5, 2.0}) EXPECT_NEAR(beta_inverse(*c, beta_chart(*c, 0.05, {2.0, v})).v, v, 1e-10);
  EXPECT_THROW(beta_inverse(*m, {0.5, PairPoint{0.0, kPi}}), CutLocusError);
}

TEST(Haar, GaussianSubstitution) {
  auto m = GridManifold::flat(256);
  const FiberGrid vg{4.0, 256};
  auto g = [](double s) { return std::exp(-s * s); };
  const double x = 1.0;
  for (double h : {0.1, 0.05}) {
    const GroupoidFunction f = [&](const TangentGroupoidPoint& pt) {
      const auto& p = std::get<PairPoint>(pt.payload);
      return cplx(g(std::remainder(p.x - p.y, 2 * kPi) / pt.h));
    };
    EXPECT_NEAR(haar_integral(*m, vg, f, h, x).real(), std::sqrt(kPi), 1e-10);
  }
  const GroupoidFunction zero = [](const TangentGroupoidPoint&) { return cplx{}; };
  EXPECT_EQ(haar_integral(*m, vg, zero, 0.0, x), cplx{});
  EXPECT_EQ(haar_integral(*m, vg, zero, 0.3, x), cplx{});
}

TEST(Haar, PairGroupoidLeftInvariance) {
  auto m = GridManifold::cosine(64, 0.3);
  const FiberGrid vg{4.0, 64};
  auto k = [](double a, double b) { return cplx(std::cos(a) * std::sin(2 * b) + 1.0); };
  const double h = 0.25;
  const double x = m->node(5), y = m->node(17);
  // integral of F(gamma o gamma') over gamma' in the fiber at s(gamma) = y, with gamma = (x, y)
  const GroupoidFunction composed = [&](const TangentGroupoidPoint& pt) {
    return k(x, std::get<PairPoint>(pt.payload).y);
  };
  const GroupoidFunction direct = [&](const TangentGroupoidPoint& pt) {
    return k(std::get<PairPoint>(pt.payload).x, std::get<PairPoint>(pt.payload).y);
  };
  EXPECT_LT(std::abs(haar_integral(*m, vg, composed, h, y) - haar_integral(*m, vg, direct, h, x)), 1e-8);
}

TEST(Extension, ScalarIndependentOfVelocityAtBoundary) {
  const ScalarFamily g = [](double h, double x) { return cplx(std::sin(x) + h * h); };
  EXPECT_EQ(extend_scalar_eval(g, {0.0, TangentPoint{1.0, 0.0}}), extend_scalar_eval(g, {0.0, TangentPoint{1.0, 5.0}}));
  EXPECT_NEAR(extend_scalar_eval(g, {0.5, PairPoint{1.0, 2.0}}).real(), std::sin(1.0) + 0.25, 1e-15);
}

TEST(Extension, ConstantIdentityFamily) {
  auto m = GridManifold::flat(32);
  const auto f = DiffeoFamily::constant(Diffeo::identity(m));
  const auto r = extend_diffeo_eval(*m, f, {0.0, TangentPoint{1.0, 0.7}});
  EXPECT_NEAR(std::get<TangentPoint>(r.payload).v, 0.7, 1e-15);
  const auto s = extend_diffeo_eval(*m, f, {0.2, PairPoint{1.0, 2.0}});
  EXPECT_NEAR(std::get<PairPoint>(s.payload).y, 2.0, 1e-15);
}

TEST(Extension, FlowFamilyBoundaryAndContinuity) {
  auto m = GridManifold::cosine(64, 0.3);
  VectorField x(ScalarField::sample(m, [](double t) { return 0.5 + 0.3 * std::sin(t); }));
  const auto fam = DiffeoFamily::flow((-1.0) * x);
  const TangentPoint v{1.2, 0.8};
  const auto b = extend_diffeo_eval(*m, fam, {0.0, v});
  EXPECT_NEAR(std::get<TangentPoint>(b.payload).v, v.v - x(v.base), 1e-14);
  double prev = 1.0;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    const auto img = extend_diffeo_eval(*m, fam, beta_chart(*m, h, v));
    const double err = std::abs(beta_inverse(*m, img).v - std::get<TangentPoint>(b.payload).v);
    EXPECT_LT(err, 0.6 * prev);
    prev = err;
  }
}
