#include "common.hpp"

#include <cmath>

#include "orbitlab/errors.hpp"

namespace orbitlab::harness {
namespace {

CheckResult make(std::string id, std::string anchor, Relation rel, double value, double bound, double radius,
                 bool passed) {
  CheckResult c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.relation = rel;
  c.value = value;
  c.bound = bound;
  c.radius = radius;
  c.passed = passed;
  return c;
}

}  // namespace

// NaN fails every comparison below, so a broken computation never passes.
CheckResult at_most(std::string id, std::string anchor, double value, double bound) {
  return make(std::move(id), std::move(anchor), Relation::at_most, value, bound, 0.0, value <= bound);
}

CheckResult at_least(std::string id, std::string anchor, double value, double bound) {
  return make(std::move(id), std::move(anchor), Relation::at_least, value, bound, 0.0, value >= bound);
}

CheckResult within(std::string id, std::string anchor, double value, double centre, double radius) {
  return make(std::move(id), std::move(anchor), Relation::within, value, centre, radius,
              std::abs(value - centre) <= radius);
}

double sup(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double sup(const ComplexField& a, const ComplexField& b) { return sup(Eigen::MatrixXcd(a.samples() - b.samples())); }

double gauss(double v, double sigma) { return std::exp(-0.5 * (v / sigma) * (v / sigma)); }

FiberSymbol preset_symbol(const std::string& preset, const ManifoldPtr& m, const FiberGrid& grid, Rng& rng) {
  const double sigma = 0.1 * grid.half_width;
  const double offset = 0.025 * grid.half_width;
  const double k = 2.0 * std::numbers::pi / m->length();
  if (preset == "gaussian")
    return FiberSymbol::sample(m, grid, [&](double x, double v) {
      return cplx((1.0 + 0.4 * std::cos(k * x)) * gauss(v - offset, sigma));
    });
  if (preset == "random") {
    const auto amp = random_field(m, rng, 0.4);
    const auto phase = random_field(m, rng, 1.0);
    const double shift = rng.uniform(-offset, offset);
    return FiberSymbol::sample(m, grid, [&](double x, double v) {
      return (1.0 + interpolate(amp, x)) * std::polar(1.0, interpolate(phase, x)) * gauss(v - shift, sigma);
    });
  }
  throw ConfigError("unknown symbol preset '" + preset + "'", 0, "semiclassics.symbol");
}

AlgebraElement preset_algebra(const std::string& preset, const ManifoldPtr& m, Rng& rng) {
  if (preset == "random") return random_algebra_element(m, rng);
  if (preset == "vector") return {VectorField(random_field(m, rng, 0.5)), ScalarField::constant(m, 0.0)};
  if (preset == "function") return {VectorField::zero(m), random_field(m, rng, 0.5)};
  if (preset == "zero") return AlgebraElement::zero(m);
  throw ConfigError("unknown algebra preset '" + preset + "'", 0, "semiclassics.algebra");
}

cplx perturbation(double x, double y) { return cplx(0.5 * std::cos(x - y), 0.3 * std::sin(x + y)); }

// F(h, x, y) = g(v) (1 + h r(x, y)) in the exponential chart; the h = 0 slice
// is the fiber integral of g against c(x) dv.
ConvergenceReport haar_report(const ExperimentConfig& cfg) {
  auto m = cfg.metric == "flat" ? GridManifold::flat(1024, cfg.length)
                                : GridManifold::cosine(1024, cfg.amplitude, cfg.length);
  const FiberGrid grid{8.0, 256};
  const double x = m->node(100);
  const GroupoidFunction f = [&](const TangentGroupoidPoint& pt) {
    if (pt.at_boundary()) return cplx(gauss(std::get<TangentPoint>(pt.payload).v, 1.0));
    const auto& p = std::get<PairPoint>(pt.payload);
    try {
      const double v = beta_inverse(*m, pt).v;
      return gauss(v, 1.0) * (1.0 + pt.h * perturbation(p.x, p.y));
    } catch (const CutLocusError&) {
      return cplx{};
    }
  };
  const auto hs = dyadic_grid(3, 7);
  std::vector<cplx> values;
  for (double h : hs) values.push_back(haar_integral(*m, grid, f, h, x));
  return make_report(hs, std::move(values), haar_integral(*m, grid, f, 0.0, x));
}

ConvergenceReport covariance_report(const GroupElement& a, const FiberSymbol& b,
                                    const std::vector<double>& hs) {
  const auto& grid = b.grid();
  const auto pg = MomentumGrid::reciprocal(grid);
  const auto target = fiber_fourier(symbol_transport(a, fiber_fourier_inv(b, pg)), grid);
  const auto fam = groupoid_quantize(b, hs);
  std::vector<double> errors;
  for (double h : hs) errors.push_back(sup(dequantize(covariant_conjugate(a, fam, h), h, grid).values() - target.values()));
  return make_error_report(hs, std::move(errors));
}

}  // namespace orbitlab::harness
