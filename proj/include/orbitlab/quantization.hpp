#pragma once

#include <functional>
#include <span>

#include "orbitlab/lie_group.hpp"

namespace orbitlab {

/// Integral operator (T psi)(x_i) = sum_j K(x_i, x_j) w_j psi(x_j).
///
/// An operator may carry a row evaluator giving K(x, y) at off-grid points.
/// Semiclassical kernels concentrate on a band of width ~h around the
/// diagonal and are not resolved by the grid once h is below the spacing;
/// the evaluator keeps them exact where the nodal matrix cannot.
class L2Operator {
 public:
  using RowEvaluator = std::function<void(double x, std::span<const double> ys, std::span<cplx> out)>;

  L2Operator(ManifoldPtr m, Eigen::MatrixXcd kernel);
  /// Nodal matrix sampled from the evaluator.
  L2Operator(ManifoldPtr m, RowEvaluator rows);

  /// K = diag(1 / w_i), the identity at grid scale.
  static L2Operator identity(const ManifoldPtr& m);

  const ManifoldPtr& manifold() const { return manifold_; }
  const Eigen::MatrixXcd& kernel() const { return kernel_; }
  std::size_t size() const { return manifold_->size(); }
  bool has_rows() const { return static_cast<bool>(rows_); }
  const RowEvaluator& rows() const { return rows_; }

  /// K(x, y_k) for all k: the evaluator when present, otherwise cardinal
  /// interpolation of the nodal matrix in both variables.
  void row(double x, std::span<const double> ys, std::span<cplx> out) const;
  cplx operator()(double x, double y) const;

  ComplexField apply(const ComplexField& psi) const;
  /// K*(x, y) = conj(K(y, x)).
  L2Operator adjoint() const;

 private:
  ManifoldPtr manifold_;
  Eigen::MatrixXcd kernel_;
  RowEvaluator rows_;
};

/// psi -> multiplier * scale * (psi o shift), evaluated node-wise.
struct PointwiseOperator {
  ComplexField multiplier;
  Diffeo shift;
  ScalarField scale;

  const ManifoldPtr& manifold() const { return scale.manifold(); }
  ComplexField apply(const ComplexField& psi) const;
  /// K_ij = m_i s_i l_j(shift(x_i)) / w_j.
  L2Operator materialize() const;
};

/// Density of the pushed-forward Riemannian measure: c(z) / (c(x) phi'(z))
/// with z = phi^{-1}(x).
double radon_nikodym(const Diffeo& phi, double x);
ScalarField radon_nikodym(const Diffeo& phi);

/// rho^h(phi, f) psi = exp(-2 pi i f / h) sqrt(RN) (psi o phi^{-1}).
PointwiseOperator rho(double h, const GroupElement& a);

/// f psi - (i h / 2 pi)(X psi' + (div X / 2) psi) as a kernel.
L2Operator quantize_affine(double h, const AlgebraElement& z);

/// sum_i psi_i conj(chi_i) w_i.
cplx l2_inner(const ComplexField& psi, const ComplexField& chi);
/// sum_i K(x_i, x_i) w_i.
cplx operator_trace(const L2Operator& t);

}  // namespace orbitlab
