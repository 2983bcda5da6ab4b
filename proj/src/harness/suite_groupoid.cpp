#include <cmath>

#include "common.hpp"
#include "orbitlab/errors.hpp"

namespace orbitlab::harness {
namespace {

L2Operator smooth_kernel(const ManifoldPtr& m, Rng& rng) {
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m->size()), static_cast<Eigen::Index>(m->size()));
  for (int rank = 0; rank < 3; ++rank) {
    const auto u = random_wavefunction(m, rng);
    const auto v = random_wavefunction(m, rng);
    k += u.samples() * v.samples().transpose();
  }
  return L2Operator(m, std::move(k));
}

}  // namespace

SuiteResult groupoid_suite(const ExperimentConfig& cfg) {
  SuiteResult r{"groupoid", {}, {}};
  const auto m = cfg.manifold();
  Rng rng(cfg.seed ^ 0x67726f7570ULL ^ 0x6964ULL);

  {
    const auto k1 = smooth_kernel(m, rng), k2 = smooth_kernel(m, rng), k3 = smooth_kernel(m, rng);
    const double assoc = sup(pair_convolve(pair_convolve(k1, k2), k3).kernel() - pair_convolve(k1, pair_convolve(k2, k3)).kernel());
    r.checks.push_back(at_most("groupoid.pair_associativity", anchor::pair_groupoid, assoc, 1e-8));

    auto small = GridManifold::cosine(32, 0.3);
    const auto a = smooth_kernel(small, rng), b = smooth_kernel(small, rng);
    Eigen::MatrixXcd naive = Eigen::MatrixXcd::Zero(32, 32);
    for (int i = 0; i < 32; ++i)
      for (int j = 0; j < 32; ++j)
        for (int k = 0; k < 32; ++k) naive(i, j) += a.kernel()(i, k) * small->weights()[k] * b.kernel()(k, j);
    r.checks.push_back(at_most("groupoid.pair_naive", anchor::pair_groupoid, sup(naive - pair_convolve(a, b).kernel()), 1e-12));
  }
  {
    // Integrating F(gamma o gamma') over the source fiber of gamma = (x, y)
    // equals integrating F over the range fiber at x.
    const auto k = smooth_kernel(m, rng);
    const FiberGrid grid = cfg.velocity_grid();
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      const double x = m->node(static_cast<std::size_t>(rng.bits() % m->size()));
      const double y = m->node(static_cast<std::size_t>(rng.bits() % m->size()));
      const double h = rng.uniform(0.05, 1.0);
      const GroupoidFunction composed = [&](const TangentGroupoidPoint& pt) { return k(x, std::get<PairPoint>(pt.payload).y); };
      const GroupoidFunction direct = [&](const TangentGroupoidPoint& pt) {
        const auto& p = std::get<PairPoint>(pt.payload);
        return k(p.x, p.y);
      };
      worst = std::max(worst, std::abs(haar_integral(*m, grid, composed, h, y) - haar_integral(*m, grid, direct, h, x)));
    }
    r.checks.push_back(at_most("groupoid.haar_left_invariance", anchor::haar_invariance, worst, 1e-8));
  }
  {
    const auto report = haar_report(cfg);
    r.reports.push_back({"haar_continuity", report});
    r.checks.push_back(at_least("groupoid.haar_slope", anchor::haar_continuity, report.fitted_slope, 0.9));
  }
  {
    const FiberGrid grid = cfg.velocity_grid();
    const auto pg = MomentumGrid::reciprocal(grid);
    const auto b = preset_symbol("random", m, grid, rng);
    const auto a = fiber_fourier_inv(b, pg);
    r.checks.push_back(at_most("groupoid.fourier_roundtrip", anchor::fourier, sup(fiber_fourier(a, grid).values() - b.values()), 1e-9));
    double parseval = 0.0;
    for (std::size_t i = 0; i < m->size(); ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const double lhs = b.values().row(row).squaredNorm() * b.fiber_weight(i);
      const double rhs = a.values().row(row).squaredNorm() * a.fiber_weight(i);
      parseval = std::max(parseval, std::abs(lhs - rhs));
    }
    r.checks.push_back(at_most("groupoid.parseval", anchor::fourier, parseval, 1e-8));

    // Narrower factors so the convolution stays inside the band.
    const double s = 0.06 * grid.half_width;
    const auto amp = random_field(m, rng, 0.4);
    const auto b1 = FiberSymbol::sample(m, grid, [&](double x, double v) { return cplx((1.0 + amp(x)) * gauss(v - 0.5 * s, s)); });
    const auto b2 = FiberSymbol::sample(m, grid, [&](double x, double v) {
      return cplx(gauss(v + s, s), std::sin(x) * gauss(v, 1.5 * s));
    });
    const auto lhs = fiber_fourier_inv(tb_convolve(b1, b2), pg);
    const auto rhs = fiber_fourier_inv(b1, pg).values().cwiseProduct(fiber_fourier_inv(b2, pg).values());
    r.checks.push_back(at_most("groupoid.convolution_product", anchor::fourier, sup(lhs.values() - rhs), 1e-8));
  }
  {
    // Extension through the range map: no velocity dependence at h = 0, and
    // no more h-variation than g itself.
    const ScalarFamily g = [](double h, double x) { return cplx(std::sin(x) + h * std::cos(2 * x), h * h); };
    double boundary = 0.0, excess = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double x = rng.uniform(0.0, m->length());
      const double v = rng.uniform(-3.0, 3.0);
      const cplx at_zero = extend_scalar_eval(g, {0.0, TangentPoint{x, 0.0}});
      boundary = std::max(boundary, std::abs(extend_scalar_eval(g, beta_chart(*m, 0.0, {x, v})) - at_zero));
      for (double h : {0.5, 0.1, 0.01}) {
        const double lifted = std::abs(extend_scalar_eval(g, beta_chart(*m, h, {x, v})) - at_zero);
        excess = std::max(excess, lifted - std::abs(g(h, x) - g(0.0, x)));
      }
    }
    r.checks.push_back(at_most("groupoid.scalar_boundary", anchor::extension, boundary, 0.0));
    r.checks.push_back(at_most("groupoid.scalar_continuity", anchor::extension, excess, 0.0));
  }
  return r;
}

}  // namespace orbitlab::harness
