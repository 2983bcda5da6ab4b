#include "orbitlab/coadjoint.hpp"

#include <cmath>
#include <numbers>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

double slope_at(const ScalarField& f, double x) { return f.series().derivative().real_value(x); }

}  // namespace

CovectorPoint alpha0(const GroupElement& a, const CovectorPoint& eta) {
  const auto& m = *a.manifold();
  const double y = a.diffeo(eta.base);
  return {m.reduce(y), eta.p / a.diffeo.jacobian(eta.base) - slope_at(a.func, y)};
}

double moment_pairing(const CovectorPoint& eta, const AlgebraElement& z) {
  return eta.p * z.field(eta.base) + z.func(eta.base);
}

CovectorPoint coadjoint_action(const GroupElement& a, const CovectorPoint& eta) {
  const auto& m = *a.manifold();
  const Diffeo& phi = a.diffeo;
  // a^{-1} = (psi, F) = (phi^{-1}, -f o phi), evaluated pointwise: resampling
  // it on the grid costs ~1e-9 at N = 256 and far more for steep phi.
  auto psi = [&](double y) { return phi.inverse_at(y); };
  auto dpsi = [&](double y) { return 1.0 / phi.jacobian(psi(y)); };
  const double x = eta.base;
  double y = 2.0 * x - psi(x);
  bool converged = false;
  for (int it = 0; it < 50 && !converged; ++it) {
    const double step = std::remainder(psi(y) - x, m.length()) / dpsi(y);
    y -= step;
    converged = std::abs(step) <= 1e-14 * std::max(1.0, std::abs(y));
  }
  if (!converged) throw NonInvertibleError("Newton iteration for the inverse element did not converge");
  const double dF = -slope_at(a.func, phi(x)) * phi.jacobian(x);
  return {m.reduce(y), dpsi(y) * (eta.p + dF)};
}

PhaseTangent derived_action(const AlgebraElement& z, const CovectorPoint& eta) {
  return {z.field(eta.base), -eta.p * slope_at(z.field.component(), eta.base) - slope_at(z.func, eta.base)};
}

double symplectic_form(const CovectorPoint&, const PhaseTangent& a, const PhaseTangent& b) {
  return a.v * b.w - b.v * a.w;
}

GroupElement transitive_element(const ManifoldPtr& m, const CovectorPoint& eta1, const CovectorPoint& eta2) {
  const double len = m->length();
  const double k = 2.0 * std::numbers::pi / len;
  const double amp = (eta1.p - eta2.p) / k;
  auto f = ScalarField::sample(m, [&](double x) { return amp * std::sin(k * (x - eta2.base)); });
  return {Diffeo::rotation(m, eta2.base - eta1.base), std::move(f)};
}

std::vector<AlgebraElement> probe_family(const ManifoldPtr& m, int kmax) {
  if (kmax < 1 || static_cast<std::size_t>(2 * kmax) >= m->size())
    throw InvalidParameter("probe frequency must lie in [1, N/2)");
  std::vector<AlgebraElement> out;
  out.push_back({VectorField(ScalarField::constant(m, 1.0)), ScalarField::constant(m, 0.0)});
  const double w = 2.0 * std::numbers::pi / m->length();
  for (int k = 1; k <= kmax; ++k) {
    out.push_back({VectorField::zero(m), ScalarField::sample(m, [=](double x) { return std::cos(k * w * x); })});
    out.push_back({VectorField::zero(m), ScalarField::sample(m, [=](double x) { return std::sin(k * w * x); })});
  }
  return out;
}

Separation separate(const CovectorPoint& eta1, const CovectorPoint& eta2, const std::vector<AlgebraElement>& probes) {
  Separation best;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double gap = std::abs(moment_pairing(eta1, probes[i]) - moment_pairing(eta2, probes[i]));
    if (gap > best.gap) best = {i, gap};
  }
  return best;
}

}  // namespace orbitlab
