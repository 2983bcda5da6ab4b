#pragma once

#include <string>

#include "orbitlab/harness.hpp"
#include "orbitlab/random.hpp"

namespace orbitlab::harness {

CheckResult at_most(std::string id, std::string anchor, double value, double bound);
CheckResult at_least(std::string id, std::string anchor, double value, double bound);
CheckResult within(std::string id, std::string anchor, double value, double centre, double radius);

double sup(const Eigen::MatrixXcd& m);
double sup(const ComplexField& a, const ComplexField& b);

double gauss(double v, double sigma);

/// Symbol presets scale with the velocity window: width V/10, so a shift by
/// |X| <= 0.5 stays out of the band.
FiberSymbol preset_symbol(const std::string& preset, const ManifoldPtr& m, const FiberGrid& grid, Rng& rng);
AlgebraElement preset_algebra(const std::string& preset, const ManifoldPtr& m, Rng& rng);

/// Perturbation used for perturbed families.
cplx perturbation(double x, double y);

/// Error reports shared by suites and sweeps.
ConvergenceReport haar_report(const ExperimentConfig& cfg);
ConvergenceReport covariance_report(const GroupElement& a, const FiberSymbol& b,
                                    const std::vector<double>& hs);

SuiteResult group_suite(const ExperimentConfig& cfg);
SuiteResult coadjoint_suite(const ExperimentConfig& cfg);
SuiteResult quantization_suite(const ExperimentConfig& cfg);
SuiteResult groupoid_suite(const ExperimentConfig& cfg);
SuiteResult semiclassics_suite(const ExperimentConfig& cfg);
SuiteResult induction_suite(const ExperimentConfig& cfg);

// Anchor names shared by suites and the catalog.
namespace anchor {
inline constexpr const char* exp_log = "Riemannian exponential and logarithm";
inline constexpr const char* quadrature = "Riemannian quadrature";
inline constexpr const char* differentiation = "spectral differentiation";
inline constexpr const char* product_law = "semidirect product law";
inline constexpr const char* exponential = "exponential map";
inline constexpr const char* bracket = "Lie bracket";
inline constexpr const char* adjoint = "adjoint action";
inline constexpr const char* natural_action = "natural action on the cotangent bundle";
inline constexpr const char* equivariance = "moment map equivariance";
inline constexpr const char* comoment = "comoment map";
inline constexpr const char* symplectic_pairing = "symplectic pairing of fundamental fields";
inline constexpr const char* transitivity = "orbit transitivity";
inline constexpr const char* injectivity = "moment map injectivity";
inline constexpr const char* unitarity = "unitarity of the quantized representation";
inline constexpr const char* homomorphism = "representation homomorphism";
inline constexpr const char* derived = "derived representation and geometric quantization";
inline constexpr const char* commutator = "quantized commutators";
inline constexpr const char* radon_nikodym = "Radon-Nikodym derivative in coordinates";
inline constexpr const char* pair_groupoid = "pair groupoid convolution";
inline constexpr const char* haar_invariance = "Haar system left invariance";
inline constexpr const char* haar_continuity = "Haar system continuity in h";
inline constexpr const char* fourier = "fiberwise Fourier transform";
inline constexpr const char* extension = "smooth extension of scalar families";
inline constexpr const char* trace = "trace formula";
inline constexpr const char* character = "character formula";
inline constexpr const char* centralizer = "double centralizer";
inline constexpr const char* covariance = "covariance automorphism";
inline constexpr const char* smooth_family = "smooth family preservation";
inline constexpr const char* induced_space = "induced function space correspondence";
inline constexpr const char* stabilizer = "stabilizer equivariance";
inline constexpr const char* induced_rep = "induced representation equals the quantized one";
}  // namespace anchor

}  // namespace orbitlab::harness
