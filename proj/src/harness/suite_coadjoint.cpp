#include <cmath>

#include "common.hpp"
#include "orbitlab/coadjoint.hpp"

namespace orbitlab::harness {

SuiteResult coadjoint_suite(const ExperimentConfig& cfg) {
  SuiteResult r{"coadjoint", {}, {}};
  const auto m = cfg.manifold();
  Rng rng(cfg.seed ^ 0x636f61646aULL);
  const double len = m->length();
  auto node = [&] { return m->node(static_cast<std::size_t>(rng.bits() % m->size())); };
  auto gap = [&](double a, double b) { return std::abs(std::remainder(a - b, len)); };

  // 100 group elements against 10 covectors each: 1000 pairs.
  double agree = 0.0, equi = 0.0;
  for (int g = 0; g < 100; ++g) {
    const auto a = random_group_element(m, rng);
    const auto z = random_algebra_element(m, rng);
    // <mu(a.eta), Ad_a Z> = <mu(eta), Z>, which avoids resampling a^{-1}.
    const auto pushed = adjoint(a, z);
    for (int k = 0; k < 10; ++k) {
      const CovectorPoint eta{node(), rng.uniform(-3.0, 3.0)};
      const auto lhs = coadjoint_action(a, eta);
      const auto rhs = alpha0(a, eta);
      agree = std::max({agree, gap(lhs.base, rhs.base), std::abs(lhs.p - rhs.p)});
      equi = std::max(equi, std::abs(moment_pairing(rhs, pushed) - moment_pairing(eta, z)));
    }
  }
  r.checks.push_back(at_most("coadjoint.alpha0_agreement", anchor::natural_action, agree, 1e-9));
  r.checks.push_back(at_most("coadjoint.equivariance", anchor::equivariance, equi, 1e-8));

  double comoment = 0.0, pairing = 0.0;
  const double s = 1e-5;
  for (int g = 0; g < 100; ++g) {
    const auto z1 = random_algebra_element(m, rng);
    const auto z2 = random_algebra_element(m, rng);
    const auto br = bracket(z1, z2);
    for (int k = 0; k < 10; ++k) {
      const CovectorPoint eta{rng.uniform(0.0, len), rng.uniform(-3.0, 3.0)};
      const auto xi = derived_action(z1, eta);
      const double dq = (moment_pairing({eta.base + s, eta.p}, z1) - moment_pairing({eta.base - s, eta.p}, z1)) / (2 * s);
      const double dp = (moment_pairing({eta.base, eta.p + s}, z1) - moment_pairing({eta.base, eta.p - s}, z1)) / (2 * s);
      comoment = std::max({comoment, std::abs(dq - symplectic_form(eta, xi, {1.0, 0.0})),
                           std::abs(dp - symplectic_form(eta, xi, {0.0, 1.0}))});
      pairing = std::max(pairing, std::abs(symplectic_form(eta, xi, derived_action(z2, eta)) - moment_pairing(eta, br)));
    }
  }
  r.checks.push_back(at_most("coadjoint.comoment", anchor::comoment, comoment, 1e-7));
  r.checks.push_back(at_most("coadjoint.symplectic_pairing", anchor::symplectic_pairing, pairing, 1e-7));

  double reach = 0.0;
  for (int k = 0; k < 100; ++k) {
    const CovectorPoint from{node(), rng.uniform(-3.0, 3.0)};
    const CovectorPoint to{node(), rng.uniform(-3.0, 3.0)};
    const auto hit = alpha0(transitive_element(m, from, to), from);
    reach = std::max({reach, gap(hit.base, to.base), std::abs(hit.p - to.p)});
  }
  r.checks.push_back(at_most("coadjoint.transitivity", anchor::transitivity, reach, 1e-9));

  // Smallest best-probe gap over distinct grid covectors, neighbours included.
  const auto probes = probe_family(m, 4);
  double weakest = HUGE_VAL;
  for (int k = 0; k < 200; ++k) {
    const auto i = static_cast<std::size_t>(rng.bits() % m->size());
    const double p = 0.125 * static_cast<double>(static_cast<int>(rng.bits() % 33) - 16);
    const CovectorPoint a{m->node(i), p};
    const CovectorPoint b = k % 2 == 0 ? CovectorPoint{m->node((i + 1) % m->size()), p} : CovectorPoint{m->node(i), p + 0.125};
    weakest = std::min(weakest, separate(a, b, probes).gap);
  }
  r.checks.push_back(at_least("coadjoint.injectivity", anchor::injectivity, weakest, 1e-6));
  return r;
}

}  // namespace orbitlab::harness
