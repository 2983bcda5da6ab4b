#pragma once

#include <vector>

#include "orbitlab/groupoid.hpp"

namespace orbitlab {

enum class QuantizationTag { canonical, perturbed };

/// A symbol b on TM with kernels T_h on a finite h-grid.
class GroupoidFamily {
 public:
  GroupoidFamily(FiberSymbol symbol, std::vector<double> h_grid, std::vector<L2Operator> kernels, QuantizationTag tag);

  const FiberSymbol& symbol() const { return symbol_; }
  const ManifoldPtr& manifold() const { return symbol_.manifold(); }
  const std::vector<double>& h_grid() const { return h_grid_; }
  const std::vector<L2Operator>& kernels() const { return kernels_; }
  /// Kernel at a grid value of h (relative match 1e-12).
  const L2Operator& kernel(double h) const;
  QuantizationTag tag() const { return tag_; }

 private:
  FiberSymbol symbol_;
  std::vector<double> h_grid_;
  std::vector<L2Operator> kernels_;
  QuantizationTag tag_;
};

struct ConvergenceReport {
  std::vector<double> h_values;
  std::vector<cplx> values;
  std::vector<double> errors;
  cplx target;
  double fitted_slope = 0.0;
  cplx extrapolated_limit;
};

/// h = 2^-k for k = kmin..kmax (decreasing h).
std::vector<double> dyadic_grid(int kmin, int kmax);

/// Requires h_max V sup c < 0.45 * (half the total length); throws
/// SupportOverflowError otherwise.
void check_support_rule(const GridManifold& m, double velocity_radius, double h_max);

/// K_h(x, y) = h^{-1} b(x, -log_x(y) / h), zero off the chart.
L2Operator canonical_kernel(const FiberSymbol& b, double h);
GroupoidFamily groupoid_quantize(const FiberSymbol& b, const std::vector<double>& h_grid);

/// K_h(x, y) (1 + h r(x, y)); tagged perturbed.
using PairFunction = std::function<cplx(double x, double y)>;
GroupoidFamily perturb(const GroupoidFamily& fam, const PairFunction& r);

/// b_h(x_i, v_j) = h K(x_i, exp_{x_i}(-h v_j)). Throws CutLocusError when
/// h V sup c reaches half the total length.
FiberSymbol dequantize(const L2Operator& t, double h, const FiberGrid& grid);

/// Least-squares slope of log(error) against log(h) over the smaller half of
/// the h values.
double fit_loglog_slope(const std::vector<double>& h, const std::vector<double>& errors);
/// Two-point extrapolation to h = 0 under a first-order error model.
cplx richardson(double h1, cplx v1, double h2, cplx v2);
ConvergenceReport make_report(std::vector<double> h, std::vector<cplx> values, cplx target);
/// Report for quantities whose limit is zero (values are the errors).
ConvergenceReport make_error_report(std::vector<double> h, std::vector<double> errors);

/// h tr T_h against sum_i b(x_i, 0) w_i.
ConvergenceReport trace_functional(const GroupoidFamily& fam);

/// h tr(rho^h(exp(hZ)) T_h) against the phase-space integral of
/// a exp(-2 pi i (p X + f)).
ConvergenceReport character_pairing(const GroupoidFamily& fam, const AlgebraElement& z);
cplx character_target(const FiberSymbol& b, const AlgebraElement& z);
/// h tr(rho^h(exp(hZ)) T) for a single kernel.
cplx character_value(const L2Operator& t, double h, const AlgebraElement& z);

enum class Side { left, right };

/// exp(-2 pi i f(x)) b(x, v - X(x)).
FiberSymbol centralize_symbol(const FiberSymbol& b, const AlgebraElement& z);
/// rho(g) T (left) or T rho(g) (right), with g = exp(hZ) already formed.
L2Operator centralize_kernel(Side side, double h, const GroupElement& g, const L2Operator& t);
/// Symbol slot multiplied by exp(-2 pi i H_Z), kernels composed with
/// rho^h(exp(hZ)); tagged perturbed.
GroupoidFamily centralizer_apply(Side side, const AlgebraElement& z, const GroupoidFamily& fam);

/// rho^h(a) T rho^h(a)^*: kernel
/// exp(-2 pi i (f(x) - f(y)) / h) sqrt(RN(x) RN(y)) K(phi^{-1} x, phi^{-1} y).
L2Operator covariant_conjugate(const GroupElement& a, const L2Operator& t, double h);
/// Same, on the family's kernel at h, after checking the support rule for
/// the transported symbol.
L2Operator covariant_conjugate(const GroupElement& a, const GroupoidFamily& fam, double h);
/// a'(x, p) = a(phi^{-1} x, (p + f'(x)) phi'(phi^{-1} x)).
PhaseSymbol symbol_transport(const GroupElement& a, const PhaseSymbol& sym);

}  // namespace orbitlab
