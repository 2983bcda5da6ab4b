#pragma once

#include <cstdint>
#include <random>

#include "orbitlab/lie_group.hpp"

namespace orbitlab {

/// Seeded generator with a portable bits-to-double map, so draws are the
/// same on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Band-limited periodic field: modes up to N/8 with envelope exp(-k),
/// rescaled so max |f(x_i)| = amplitude.
ScalarField random_field(const ManifoldPtr& m, Rng& rng, double amplitude);
ComplexField random_wavefunction(const ManifoldPtr& m, Rng& rng);

/// Displacement with max |u'| = max_slope (< 1) plus a uniform rotation.
Diffeo random_diffeo(const ManifoldPtr& m, Rng& rng, double max_slope = 0.5);
GroupElement random_group_element(const ManifoldPtr& m, Rng& rng);
AlgebraElement random_algebra_element(const ManifoldPtr& m, Rng& rng, double scale = 0.5);

/// Random field times sin^2(pi (x - x0) / L): vanishes to second order at x0,
/// so its flow fixes x0.
VectorField stabilizer_field(const ManifoldPtr& m, Rng& rng, double x0, double amplitude = 0.5);

}  // namespace orbitlab
