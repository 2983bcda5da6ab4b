#pragma once

#include <vector>

#include "orbitlab/lie_group.hpp"

namespace orbitlab {

/// Covector p dq at x.
using CovectorPoint = CotangentPoint;

/// Tangent vector v d/dq + w d/dp to T*M.
struct PhaseTangent {
  double v = 0.0;
  double w = 0.0;
};

/// Natural action on T*M: (x, p) -> (phi(x), p / phi'(x) - f'(phi(x))).
CovectorPoint alpha0(const GroupElement& a, const CovectorPoint& eta);

/// <mu(x, p), (X, f)> = p X(x) + f(x).
double moment_pairing(const CovectorPoint& eta, const AlgebraElement& z);

/// Dual of the adjoint action on the image of the moment map. Works from the
/// inverse element (psi, F) = a^{-1}, evaluated pointwise: base psi^{-1}(x)
/// by Newton, momentum psi'(y) (p + F'(x)).
CovectorPoint coadjoint_action(const GroupElement& a, const CovectorPoint& eta);

/// Infinitesimal action (X(x), -p X'(x) - f'(x)).
PhaseTangent derived_action(const AlgebraElement& z, const CovectorPoint& eta);

/// Canonical form dq ^ dp.
double symplectic_form(const CovectorPoint& eta, const PhaseTangent& a, const PhaseTangent& b);

/// Rotation by x2 - x1 with f = (p1 - p2) (L / 2 pi) sin(2 pi (x - x2) / L);
/// carries eta1 to eta2 under alpha0.
GroupElement transitive_element(const ManifoldPtr& m, const CovectorPoint& eta1, const CovectorPoint& eta2);

/// (d/dq, 0), then (0, cos k theta) and (0, sin k theta) for k = 1..kmax.
std::vector<AlgebraElement> probe_family(const ManifoldPtr& m, int kmax);

/// Index of the probe with the largest pairing difference, and that difference.
struct Separation {
  std::size_t index = 0;
  double gap = 0.0;
};
Separation separate(const CovectorPoint& eta1, const CovectorPoint& eta2, const std::vector<AlgebraElement>& probes);

}  // namespace orbitlab
