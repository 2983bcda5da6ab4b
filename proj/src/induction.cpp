#include "orbitlab/induction.hpp"

#include <cmath>
#include <numbers>

#include "orbitlab/errors.hpp"
#include "orbitlab/quantization.hpp"
#include "orbitlab/random.hpp"

namespace orbitlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_h(double h) {
  if (!(h > 0.0 && h <= 1.0)) throw InvalidParameter("induced vector needs h in (0, 1]");
}

}  // namespace

cplx lift(const InducedVector& v, const GroupElement& a) {
  require_h(v.h);
  require_same_manifold(v.manifold(), a.manifold());
  const double y = a.diffeo(v.basepoint);
  return v.psi(y) * std::polar(1.0, kTwoPi * a.func(y) / v.h);
}

ComplexField descend(const InducedVector& v, const GroupFunction& big_psi) {
  const auto& m = v.manifold();
  ComplexField::Vector out(static_cast<Eigen::Index>(m->size()));
  const ScalarField zero(m, Eigen::VectorXd::Zero(out.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    const GroupElement section{Diffeo::rotation(m, m->nodes()[i] - v.basepoint), zero};
    out[i] = big_psi(section);
  }
  return ComplexField(m, std::move(out));
}

ComplexField translate_descend(const InducedVector& v, const GroupElement& a, HalfDensity density) {
  require_h(v.h);
  require_same_manifold(v.manifold(), a.manifold());
  // Psi(a^{-1} b_y) on the section b_y; the group law reduces it to the
  // closed form below, which avoids composing diffeomorphisms per node.
  const auto& m = *v.manifold();
  const Eigen::VectorXd z = a.diffeo.inverse().node_images();
  ComplexField::Vector out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    cplx val = v.psi(z[i]) * std::polar(1.0, -kTwoPi * a.func.samples()[i] / v.h);
    if (density == HalfDensity::include)
      val *= std::sqrt(m.conformal(z[i]) / (m.conformal_samples()[i] * a.diffeo.jacobian(z[i])));
    out[i] = val;
  }
  return ComplexField(v.manifold(), std::move(out));
}

InducedVector translate(const InducedVector& v, const GroupElement& a, HalfDensity density) {
  return {translate_descend(v, a, density), v.basepoint, v.h};
}

GroupElement random_stabilizer_element(const ManifoldPtr& m, Rng& rng, double x0) {
  return {flow(stabilizer_field(m, rng, x0), 1.0), random_field(m, rng, 1.0)};
}

}  // namespace orbitlab
