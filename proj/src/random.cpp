#include "orbitlab/random.hpp"

#include <cmath>
#include <numbers>

namespace orbitlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::VectorXd band_limited(const GridManifold& m, Rng& rng) {
  const std::size_t kmax = std::max<std::size_t>(1, m.size() / 8);
  Eigen::VectorXd v = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m.size()), rng.uniform(-1.0, 1.0));
  for (std::size_t k = 1; k <= kmax; ++k) {
    const double env = std::exp(-static_cast<double>(k));
    const double a = env * rng.uniform(-1.0, 1.0);
    const double b = env * rng.uniform(-1.0, 1.0);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double t = kTwoPi * static_cast<double>(k) * m.nodes()[i] / m.length();
      v[i] += a * std::cos(t) + b * std::sin(t);
    }
  }
  return v;
}

}  // namespace

ScalarField random_field(const ManifoldPtr& m, Rng& rng, double amplitude) {
  Eigen::VectorXd v = band_limited(*m, rng);
  const double peak = v.cwiseAbs().maxCoeff();
  if (peak > 0.0) v *= amplitude / peak;
  return ScalarField(m, std::move(v));
}

ComplexField random_wavefunction(const ManifoldPtr& m, Rng& rng) {
  const Eigen::VectorXd re = band_limited(*m, rng);
  const Eigen::VectorXd im = band_limited(*m, rng);
  ComplexField::Vector v(re.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = cplx(re[i], im[i]);
  return ComplexField(m, std::move(v));
}

Diffeo random_diffeo(const ManifoldPtr& m, Rng& rng, double max_slope) {
  ScalarField u(m, band_limited(*m, rng));
  const double slope = u.derivative().samples().cwiseAbs().maxCoeff();
  Eigen::VectorXd d = u.samples();
  d.array() -= d.mean();
  if (slope > 0.0) d *= max_slope / slope;
  d.array() += rng.uniform(0.0, m->length());
  return Diffeo(ScalarField(m, std::move(d)));
}

GroupElement random_group_element(const ManifoldPtr& m, Rng& rng) {
  Diffeo phi = random_diffeo(m, rng);
  return {std::move(phi), random_field(m, rng, 1.0)};
}

AlgebraElement random_algebra_element(const ManifoldPtr& m, Rng& rng, double scale) {
  VectorField x(random_field(m, rng, scale));
  return {std::move(x), random_field(m, rng, scale)};
}

VectorField stabilizer_field(const ManifoldPtr& m, Rng& rng, double x0, double amplitude) {
  const ScalarField base = random_field(m, rng, amplitude);
  Eigen::VectorXd v = base.samples();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double s = std::sin(std::numbers::pi * (m->nodes()[i] - x0) / m->length());
    v[i] *= s * s;
  }
  return VectorField(ScalarField(m, std::move(v)));
}

}  // namespace orbitlab
