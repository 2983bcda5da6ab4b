#pragma once

#include <complex>
#include <numbers>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <type_traits>

#include <Eigen/Dense>

#include "orbitlab/spectral.hpp"

namespace orbitlab {

using cplx = std::complex<double>;

/// Periodic 1-D grid with conformal metric g = c(x)^2 dx^2.
///
/// Nodes are x_i = i L / N. Quadrature weights w_i = c(x_i) L / N integrate
/// against the Riemannian density. Instances are immutable and shared by
/// every field living on them.
class GridManifold {
 public:
  static std::shared_ptr<const GridManifold> create(std::size_t num_points, double length,
                                                    const std::function<double(double)>& conformal);
  static std::shared_ptr<const GridManifold> flat(std::size_t num_points, double length = 2.0 * std::numbers::pi);
  /// c(x) = 1 + amplitude * cos(2 pi x / L).
  static std::shared_ptr<const GridManifold> cosine(std::size_t num_points, double amplitude,
                                                    double length = 2.0 * std::numbers::pi);

  std::size_t size() const { return n_; }
  int dimension() const { return 1; }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n_); }
  double node(std::size_t i) const { return nodes_[static_cast<Eigen::Index>(i)]; }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::VectorXd& conformal_samples() const { return conformal_; }
  bool is_flat() const { return flat_; }

  double conformal(double x) const;
  double conformal_derivative(double x) const;
  double max_conformal() const { return conformal_.maxCoeff(); }

  /// Cumulative arclength from 0 to x; x is not reduced, so this is a
  /// monotone lift with arclength(x + L) = arclength(x) + total_length().
  double arclength(double x) const;
  double arclength_inverse(double s) const;
  double total_length() const { return total_length_; }
  double injectivity_radius() const { return 0.5 * total_length_; }

  /// Reduce a coordinate into [0, L).
  double reduce(double x) const;
  /// Index of the node at x (mod L), if x lies within 1e-12 spacings of it.
  std::optional<std::size_t> node_index(double x) const;

  const Eigen::MatrixXd& derivative_matrix() const { return derivative_; }

 private:
  GridManifold() = default;

  std::size_t n_ = 0;
  double length_ = 0.0;
  bool flat_ = false;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  Eigen::VectorXd conformal_;
  spectral::TrigSeries conformal_series_;
  spectral::TrigSeries conformal_slope_;
  double total_length_ = 0.0;
  Eigen::VectorXd node_arclength_;
  Eigen::MatrixXd derivative_;
};

using ManifoldPtr = std::shared_ptr<const GridManifold>;

void require_same_manifold(const ManifoldPtr& a, const ManifoldPtr& b);

/// Sampled function on a GridManifold with spectral interpolation.
template <class T>
class GridFunction {
  static_assert(std::is_same_v<T, double> || std::is_same_v<T, cplx>);

 public:
  using value_type = T;
  using Vector = Eigen::Matrix<T, Eigen::Dynamic, 1>;

  GridFunction(ManifoldPtr manifold, Vector samples);

  static GridFunction sample(const ManifoldPtr& manifold, const std::function<T(double)>& fn);
  static GridFunction constant(const ManifoldPtr& manifold, T value);

  const ManifoldPtr& manifold() const { return manifold_; }
  const Vector& samples() const { return samples_; }
  std::size_t size() const { return static_cast<std::size_t>(samples_.size()); }
  T operator[](std::size_t i) const { return samples_[static_cast<Eigen::Index>(i)]; }

  /// Trigonometric interpolant at an arbitrary coordinate.
  T operator()(double x) const;
  const spectral::TrigSeries& series() const { return series_; }

  GridFunction derivative() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(T scale);

 private:
  ManifoldPtr manifold_;
  Vector samples_;
  spectral::TrigSeries series_;
};

using ScalarField = GridFunction<double>;
using ComplexField = GridFunction<cplx>;

template <class T>
GridFunction<T> operator+(GridFunction<T> a, const GridFunction<T>& b) { return a += b; }
template <class T>
GridFunction<T> operator-(GridFunction<T> a, const GridFunction<T>& b) { return a -= b; }
template <class T>
GridFunction<T> operator*(T s, GridFunction<T> a) { return a *= s; }
template <class T>
GridFunction<T> operator-(GridFunction<T> a) { return a *= T(-1); }

/// Pointwise product of nodal values.
template <class T>
GridFunction<T> pointwise(const GridFunction<T>& a, const GridFunction<T>& b);

ComplexField complexify(const ScalarField& f);

/// Coefficient of d/dq; a strong type over the nodal samples.
class VectorField {
 public:
  explicit VectorField(ScalarField component) : component_(std::move(component)) {}
  static VectorField zero(const ManifoldPtr& m) { return VectorField(ScalarField::constant(m, 0.0)); }

  const ScalarField& component() const { return component_; }
  const ManifoldPtr& manifold() const { return component_.manifold(); }
  double operator()(double x) const { return component_(x); }
  double operator[](std::size_t i) const { return component_[i]; }

  /// Riemannian divergence X' + X c'/c.
  ScalarField divergence() const;

 private:
  ScalarField component_;
};

inline VectorField operator*(double s, const VectorField& x) { return VectorField(s * x.component()); }
inline VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField(a.component() + b.component());
}

struct TangentPoint {
  double base = 0.0;
  double v = 0.0;
};

struct CotangentPoint {
  double base = 0.0;
  double p = 0.0;
};

// Free-function spellings of the field operations.
template <class T>
T interpolate(const GridFunction<T>& field, double x) { return field(x); }
template <class T>
GridFunction<T> differentiate(const GridFunction<T>& field) { return field.derivative(); }
/// Sum of f(x_i) w_i.
template <class T>
T integrate(const GridFunction<T>& field);

/// Point at signed Riemannian arclength c(x) v from x, reduced into [0, L).
double riem_exp(const GridManifold& m, double x, double v);
/// Shortest tangent component v with riem_exp(x, v) = y. Throws
/// CutLocusError unless dist(x, y) < total_length / 2.
double riem_log(const GridManifold& m, double x, double y);

}  // namespace orbitlab
