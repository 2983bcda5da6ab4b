#pragma once

#include <functional>

#include "orbitlab/lie_group.hpp"
#include "orbitlab/random.hpp"

namespace orbitlab {

/// psi on M, read as a function on the group that transforms under the
/// stabilizer of x0 by the character exp(2 pi i g(x0) / h).
struct InducedVector {
  ComplexField psi;
  double basepoint = 0.0;
  double h = 1.0;

  const ManifoldPtr& manifold() const { return psi.manifold(); }
};

/// A function on the group, known only through its values.
using GroupFunction = std::function<cplx(const GroupElement&)>;

/// Psi(phi, f) = psi(phi(x0)) exp(2 pi i f(phi(x0)) / h).
cplx lift(const InducedVector& v, const GroupElement& a);

/// Values of Psi on the section y -> (rotation x0 -> y, 0).
ComplexField descend(const InducedVector& v, const GroupFunction& big_psi);

enum class HalfDensity { omit, include };

/// y -> psi(phi^{-1} y) exp(-2 pi i f(y) / h), optionally times sqrt(RN(phi, y)).
ComplexField translate_descend(const InducedVector& v, const GroupElement& a,
                               HalfDensity density = HalfDensity::omit);

/// v with psi replaced by its descended translate.
InducedVector translate(const InducedVector& v, const GroupElement& a, HalfDensity density = HalfDensity::omit);

/// (theta, g) with theta = flow of a field vanishing at x0.
GroupElement random_stabilizer_element(const ManifoldPtr& m, Rng& rng, double x0);

}  // namespace orbitlab
