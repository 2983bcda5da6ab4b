#include <cmath>

#include "common.hpp"

namespace orbitlab::harness {

SuiteResult semiclassics_suite(const ExperimentConfig& cfg) {
  SuiteResult r{"semiclassics", {}, {}};
  const auto m = cfg.manifold();
  const FiberGrid grid = cfg.velocity_grid();
  const auto hs = cfg.h_grid();
  Rng rng(cfg.seed ^ 0x73656d69ULL);

  {
    const auto fam = groupoid_quantize(preset_symbol(cfg.symbol, m, grid, rng), hs);
    const auto exact = trace_functional(fam);
    const auto perturbed = trace_functional(perturb(fam, perturbation));
    r.reports.push_back({"trace_canonical", exact});
    r.reports.push_back({"trace_perturbed", perturbed});
    r.checks.push_back(at_most("semiclassics.trace_canonical", anchor::trace,
                               *std::max_element(exact.errors.begin(), exact.errors.end()), 1e-9));
    r.checks.push_back(at_least("semiclassics.trace_perturbed_slope", anchor::trace, perturbed.fitted_slope, 0.9));
  }
  {
    double slope = HUGE_VAL, limit = 0.0;
    for (int pair = 0; pair < 20; ++pair) {
      const auto b = preset_symbol("random", m, grid, rng);
      const auto z = random_algebra_element(m, rng);
      const auto report = character_pairing(groupoid_quantize(b, hs), z);
      if (pair == 0) r.reports.push_back({"character_first_pair", report});
      slope = std::min(slope, report.fitted_slope);
      limit = std::max(limit, std::abs(report.extrapolated_limit - report.target) / std::abs(report.target));
    }
    r.checks.push_back(at_least("semiclassics.character_slope", anchor::character, slope, 0.9));
    r.checks.push_back(at_most("semiclassics.character_limit", anchor::character, limit, 0.01));
  }
  {
    // Kernels are compared after multiplying by h, the chart normalization
    // b_h = h K_h. The finer grid resolves the O(h) kernel width on h <= 1/8.
    auto fine = GridManifold::cosine(512, cfg.metric == "flat" ? 0.0 : cfg.amplitude, cfg.length);
    const FiberGrid wide{8.0, 256};
    const auto z = random_algebra_element(fine, rng);
    const auto b1 = FiberSymbol::sample(fine, wide, [](double x, double v) {
      return cplx((1 + 0.3 * std::sin(x)) * gauss(v, 0.6), 0.2 * gauss(v - 0.5, 0.6));
    });
    const auto b2 = FiberSymbol::sample(fine, wide, [](double x, double v) { return cplx(gauss(v + 0.4, 0.6) * (1 + 0.5 * std::cos(2 * x))); });
    const auto h3 = dyadic_grid(3, 5);
    const auto f1 = groupoid_quantize(b1, h3);
    const auto f2 = groupoid_quantize(b2, h3);
    const auto l2 = centralizer_apply(Side::left, z, f2);
    const auto r1 = centralizer_apply(Side::right, z, f1);
    double kernels = 0.0;
    for (double h : h3)
      kernels = std::max(kernels, h * sup(pair_convolve(f1.kernel(h), l2.kernel(h)).kernel() -
                                          pair_convolve(r1.kernel(h), f2.kernel(h)).kernel()));
    const double symbols = sup(tb_convolve(f1.symbol(), l2.symbol()).values() - tb_convolve(r1.symbol(), f2.symbol()).values());
    r.checks.push_back(at_most("semiclassics.double_centralizer_kernels", anchor::centralizer, kernels, 1e-7));
    r.checks.push_back(at_most("semiclassics.double_centralizer_symbols", anchor::centralizer, symbols, 1e-7));
  }
  {
    // Transport shifts momenta by f' and stretches them by 1 / phi'. Width 0.8
    // leaks past the momentum window; 0.3 is under-resolved at dp = 1/8.
    const auto a = random_group_element(m, rng);
    const auto b = random_group_element(m, rng);
    const auto pg = MomentumGrid::reciprocal(grid);
    const auto sym = PhaseSymbol::sample(m, pg, [](double x, double p) { return cplx(gauss(p - 0.5 * std::sin(x), 0.5)); });
    const double coherence = sup(symbol_transport(multiply(a, b), sym).values() - symbol_transport(a, symbol_transport(b, sym)).values());
    r.checks.push_back(at_most("semiclassics.transport_coherence", anchor::covariance, coherence, 1e-8));
    const double h = 0.0625;
    const auto k = canonical_kernel(preset_symbol(cfg.symbol, m, grid, rng), h);
    const auto one = covariant_conjugate(multiply(a, b), k, h);
    const auto two = covariant_conjugate(a, covariant_conjugate(b, k, h), h);
    r.checks.push_back(at_most("semiclassics.conjugation_homomorphism", anchor::covariance, h * sup(one.kernel() - two.kernel()), 1e-7));
  }
  const auto fine_hs = dyadic_grid(4, 8);
  {
    const GroupElement a{random_diffeo(m, rng, 0.3), random_field(m, rng, 0.3)};
    const auto report = covariance_report(a, preset_symbol(cfg.symbol, m, grid, rng), fine_hs);
    r.reports.push_back({"covariance", report});
    r.checks.push_back(at_least("semiclassics.covariance_slope", anchor::covariance, report.fitted_slope, 0.9));
  }
  {
    // Both centralizers of a canonical family dequantize to exp(-2 pi i f) b(x, v - X).
    const auto b = preset_symbol(cfg.symbol, m, grid, rng);
    const auto z = random_algebra_element(m, rng);
    const auto fam = groupoid_quantize(b, fine_hs);
    const auto target = centralize_symbol(b, z);
    std::vector<double> errors;
    for (double h : fine_hs) {
      const auto g = exp_gm(h * z);
      double e = 0.0;
      for (auto side : {Side::left, Side::right})
        e = std::max(e, sup(dequantize(centralize_kernel(side, h, g, fam.kernel(h)), h, grid).values() - target.values()));
      errors.push_back(e);
    }
    const auto report = make_error_report(fine_hs, errors);
    r.reports.push_back({"centralizer_family", report});
    r.checks.push_back(at_least("semiclassics.centralizer_family_slope", anchor::smooth_family, report.fitted_slope, 0.9));
  }
  return r;
}

}  // namespace orbitlab::harness
