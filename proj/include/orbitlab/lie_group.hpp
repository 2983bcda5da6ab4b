#pragma once

#include <vector>

#include "orbitlab/manifold.hpp"

namespace orbitlab {

/// Orientation-preserving circle diffeomorphism phi(x) = x + u(x) (mod L)
/// with periodic displacement u.
class Diffeo {
 public:
  explicit Diffeo(ScalarField displacement);

  static Diffeo identity(const ManifoldPtr& m);
  static Diffeo rotation(const ManifoldPtr& m, double shift);

  const ManifoldPtr& manifold() const { return displacement_.manifold(); }
  const ScalarField& displacement() const { return displacement_; }

  /// Lifted value x + u(x); not reduced mod L.
  double operator()(double x) const { return x + displacement_(x); }
  double jacobian(double x) const { return 1.0 + slope_(x); }
  /// Lifted preimage by per-point Newton iteration.
  double inverse_at(double y) const;

  Diffeo inverse() const;
  /// Node positions phi(x_i), lifted.
  Eigen::VectorXd node_images() const;

 private:
  ScalarField displacement_;
  ScalarField slope_;
};

/// (phi o theta), resampled on the grid.
Diffeo compose(const Diffeo& phi, const Diffeo& theta);

/// Pullback g o phi^{-1} sampled at the nodes.
ScalarField push_forward(const ScalarField& g, const Diffeo& phi);
/// g o phi sampled at the nodes.
ScalarField pull_back(const ScalarField& g, const Diffeo& phi);

/// Element (phi, f) of the semidirect product of circle diffeomorphisms
/// with real functions.
struct GroupElement {
  Diffeo diffeo;
  ScalarField func;

  static GroupElement identity(const ManifoldPtr& m);
  const ManifoldPtr& manifold() const { return func.manifold(); }
};

/// Element (X, f) of the Lie algebra.
struct AlgebraElement {
  VectorField field;
  ScalarField func;

  static AlgebraElement zero(const ManifoldPtr& m);
  const ManifoldPtr& manifold() const { return func.manifold(); }
};

AlgebraElement operator*(double s, const AlgebraElement& z);
AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);

/// (phi, f)(theta, g) = (phi o theta, g o phi^{-1} + f).
GroupElement multiply(const GroupElement& a, const GroupElement& b);
/// (phi, f)^{-1} = (phi^{-1}, -f o phi).
GroupElement inverse(const GroupElement& a);

/// Positions of the flow of X started at each point, reported at each of the
/// requested times (any sign, any order). RK4 with the step count doubled
/// until another doubling moves no output by more than 1e-10.
std::vector<Eigen::VectorXd> flow_points(const VectorField& x, const Eigen::VectorXd& starts,
                                         const std::vector<double>& times);

/// Time-t flow map of X.
Diffeo flow(const VectorField& x, double t);

/// exp(X, f) = (Fl^X_1, int_0^1 f o Fl^{-X}_t dt), the t-integral by
/// 16-point Gauss-Legendre.
GroupElement exp_gm(const AlgebraElement& z);

/// [(X, f), (Y, g)] = (-[X, Y], -X g + Y f).
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

/// Ad_{(phi, f)}(X, g) = (Ad_phi X, g o phi^{-1} + X(f o phi) o phi^{-1}).
AlgebraElement adjoint(const GroupElement& a, const AlgebraElement& z);

/// Max nodal difference of both slots, the diffeo compared modulo L.
double distance(const GroupElement& a, const GroupElement& b);
double distance(const AlgebraElement& a, const AlgebraElement& b);

}  // namespace orbitlab
