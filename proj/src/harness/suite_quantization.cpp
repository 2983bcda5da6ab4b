#include <cmath>

#include <boost/math/tools/roots.hpp>

#include "common.hpp"
#include "orbitlab/quantization.hpp"

namespace orbitlab::harness {
namespace {
const cplx I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;
}  // namespace

SuiteResult quantization_suite(const ExperimentConfig& cfg) {
  SuiteResult r{"quantization", {}, {}};
  const auto m = cfg.manifold();
  Rng rng(cfg.seed ^ 0x7175616e74ULL);
  const std::vector<double> hs{1.0, 0.125, std::ldexp(1.0, -6)};

  double unit = 0.0, hom = 0.0, selfadj = 0.0;
  for (double h : hs)
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_group_element(m, rng);
      const auto psi = random_wavefunction(m, rng);
      const auto out = rho(h, a).apply(psi);
      unit = std::max(unit, std::abs(std::sqrt(l2_inner(out, out).real()) - std::sqrt(l2_inner(psi, psi).real())));
      const auto z = random_algebra_element(m, rng);
      const auto q = quantize_affine(h, z);
      const auto chi = random_wavefunction(m, rng);
      selfadj = std::max(selfadj, std::abs(l2_inner(q.apply(psi), chi) - l2_inner(psi, q.apply(chi))));
    }
  // Composition resamples the phase exp(-2 pi i f / h), which N = 256 only
  // resolves for h of order one.
  for (double h : {1.0, 0.5, 0.25})
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_group_element(m, rng);
      const auto b = random_group_element(m, rng);
      const auto psi = random_wavefunction(m, rng);
      hom = std::max(hom, sup(rho(h, multiply(a, b)).apply(psi), rho(h, a).apply(rho(h, b).apply(psi))));
    }
  r.checks.push_back(at_most("quantization.unitarity", anchor::unitarity, unit, 1e-8));
  r.checks.push_back(at_most("quantization.homomorphism", anchor::homomorphism, hom, 1e-7));
  r.checks.push_back(at_most("quantization.self_adjoint", anchor::derived, selfadj, 1e-8));

  {
    // (d/dt) rho(exp(tZ)) psi at 0 against -(2 pi i / h) Q psi, by central differences.
    const double h = 0.5;
    const auto z = random_algebra_element(m, rng);
    const auto psi = random_wavefunction(m, rng);
    const Eigen::VectorXcd exact = (-2.0 * kPi * I / h) * quantize_affine(h, z).apply(psi).samples();
    std::vector<double> ts, errors;
    std::vector<Eigen::VectorXcd> d;
    for (int k = 3; k <= 8; ++k) {
      const double t = std::ldexp(1.0, -k);
      d.push_back((rho(h, exp_gm(t * z)).apply(psi).samples() - rho(h, exp_gm((-t) * z)).apply(psi).samples()) / (2 * t));
      ts.push_back(t);
      errors.push_back((d.back() - exact).cwiseAbs().maxCoeff());
    }
    const Eigen::VectorXcd rich = (4.0 * d[d.size() - 1] - d[d.size() - 2]) / 3.0;
    r.reports.push_back({"derived_representation", make_error_report(ts, errors)});
    r.checks.push_back(within("quantization.derived_slope", anchor::derived, fit_loglog_slope(ts, errors), 2.0, 0.2));
    r.checks.push_back(at_most("quantization.derived_limit", anchor::derived, (rich - exact).cwiseAbs().maxCoeff(), 1e-6));
  }
  {
    const double h = 0.5;
    const cplx k = -2.0 * kPi * I / h;
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
      const auto z1 = random_algebra_element(m, rng);
      const auto z2 = random_algebra_element(m, rng);
      const auto psi = random_wavefunction(m, rng);
      const auto q1 = quantize_affine(h, z1), q2 = quantize_affine(h, z2);
      const ComplexField lhs(m, k * k * (q1.apply(q2.apply(psi)).samples() - q2.apply(q1.apply(psi)).samples()));
      const ComplexField rhs(m, k * quantize_affine(h, bracket(z1, z2)).apply(psi).samples());
      worst = std::max(worst, sup(lhs, rhs));
    }
    r.checks.push_back(at_most("quantization.commutator", anchor::commutator, worst, 1e-5));
  }
  {
    // Riemannian measure of phi^{-1}([x - d, x + d]) over that of the interval,
    // with phi^{-1} from bisection.
    double worst = 0.0;
    const double d = 2e-4;
    for (int trial = 0; trial < 5; ++trial) {
      const Diffeo phi = random_diffeo(m, rng, 0.5);
      auto pre = [&](double y) {
        std::uintmax_t it = 200;
        const auto root = boost::math::tools::bisect([&](double x) { return phi(x) - y; }, y - 2 * m->length(),
                                                     y + 2 * m->length(), boost::math::tools::eps_tolerance<double>(52), it);
        return 0.5 * (root.first + root.second);
      };
      for (int k = 0; k < 10; ++k) {
        const double x = rng.uniform(0.0, m->length());
        const double oracle = (m->arclength(pre(x + d)) - m->arclength(pre(x - d))) / (m->arclength(x + d) - m->arclength(x - d));
        const double value = radon_nikodym(phi, x);
        worst = std::max(worst, std::abs(value - oracle) / oracle);
      }
    }
    r.checks.push_back(at_most("quantization.radon_nikodym", anchor::radon_nikodym, worst, 1e-6));
  }
  return r;
}

}  // namespace orbitlab::harness
