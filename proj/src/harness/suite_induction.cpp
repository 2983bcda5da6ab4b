#include "common.hpp"
#include "orbitlab/induction.hpp"
#include "orbitlab/quantization.hpp"

namespace orbitlab::harness {

SuiteResult induction_suite(const ExperimentConfig& cfg) {
  SuiteResult r{"induction", {}, {}};
  const auto m = cfg.manifold();
  Rng rng(cfg.seed ^ 0x696e64ULL);
  // A node basepoint, where stabilizer fields vanish exactly.
  const double x0 = m->node(m->size() / 5);
  const std::vector<double> hs{1.0, 0.25, 0.0625};

  {
    double worst = 0.0;
    for (double h : hs) {
      const InducedVector v{random_wavefunction(m, rng), x0, h};
      worst = std::max(worst, sup(descend(v, [&](const GroupElement& a) { return lift(v, a); }), v.psi));
    }
    r.checks.push_back(at_most("induction.roundtrip", anchor::induced_space, worst, 0.0));
  }
  // Composed elements carry g o phi^{-1}, which N = 256 interpolates only to
  // ~1e-11; the phase 2 pi / h amplifies that past the bounds. Twice the points
  // for the checks that compose.
  auto cfg2 = cfg;
  cfg2.points *= 2;
  const auto fine = cfg2.manifold();
  const double fx0 = fine->node(fine->size() / 5);
  {
    const InducedVector v{random_wavefunction(fine, rng), fx0, 0.25};
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_group_element(fine, rng);
      const auto s = random_stabilizer_element(fine, rng, fx0);
      const cplx expected = std::polar(1.0, 2.0 * std::numbers::pi * s.func(fx0) / v.h) * lift(v, a);
      worst = std::max(worst, std::abs(lift(v, multiply(a, s)) - expected));
    }
    r.checks.push_back(at_most("induction.stabilizer", anchor::stabilizer, worst, 1e-10));
  }
  {
    double ident = 0.0, hom = 0.0;
    for (double h : hs) {
      const InducedVector v{random_wavefunction(m, rng), x0, h};
      const InducedVector w{random_wavefunction(fine, rng), fx0, h};
      for (int trial = 0; trial < 5; ++trial) {
        const auto a = random_group_element(m, rng);
        ident = std::max(ident, sup(translate_descend(v, a, HalfDensity::include), rho(h, a).apply(v.psi)));
        // Same resolution limit on composed phases as for rho itself.
        if (h < 0.25) continue;
        const auto fa = random_group_element(fine, rng);
        const auto fb = random_group_element(fine, rng);
        for (auto d : {HalfDensity::omit, HalfDensity::include})
          hom = std::max(hom, sup(translate_descend(w, multiply(fa, fb), d), translate(translate(w, fb, d), fa, d).psi));
      }
    }
    r.checks.push_back(at_most("induction.rho_identification", anchor::induced_rep, ident, 1e-10));
    r.checks.push_back(at_most("induction.homomorphism", anchor::induced_rep, hom, 1e-9));
  }
  return r;
}

}  // namespace orbitlab::harness
