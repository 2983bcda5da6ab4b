#pragma once

#include <functional>
#include <span>
#include <variant>

#include "orbitlab/quantization.hpp"

namespace orbitlab {

/// Velocity nodes v_j = (j - M/2) dv, dv = 2V / M.
struct FiberGrid {
  double half_width = 4.0;
  std::size_t size = 256;

  double step() const { return 2.0 * half_width / static_cast<double>(size); }
  double node(std::size_t j) const { return (static_cast<double>(j) - 0.5 * static_cast<double>(size)) * step(); }
};

/// Momentum nodes p_k = (k - P/2) dp.
struct MomentumGrid {
  double step = 0.125;
  std::size_t size = 256;

  double node(std::size_t k) const { return (static_cast<double>(k) - 0.5 * static_cast<double>(size)) * step; }
  /// dp = 1 / (2V): the square DFT that makes the fiber transform invertible.
  static MomentumGrid reciprocal(const FiberGrid& v) { return {1.0 / (2.0 * v.half_width), v.size}; }
};

namespace detail {

/// Node-by-fiber table with spectral coefficients of each row in the fiber
/// variable (period 2W, origin -W). Values vanish for |t| >= W.
class SpectralRows {
 public:
  SpectralRows() = default;
  SpectralRows(const Eigen::MatrixXcd& values, double half_width);

  void evaluate(const GridManifold& m, double x, std::span<const double> ts, std::span<cplx> out) const;

 private:
  Eigen::MatrixXcd coeffs_;
  double half_width_ = 1.0;
};

}  // namespace detail

/// Values b(x_i, v_j) of a function on TM. Off-grid values interpolate
/// spectrally in both variables; b is zero for |v| >= V.
class FiberSymbol {
 public:
  static constexpr double kBand = 0.9;
  static constexpr double kTruncation = 1e-12;

  /// Throws SupportOverflowError when |b| > 1e-12 somewhere in |v| >= 0.9 V.
  FiberSymbol(ManifoldPtr m, FiberGrid grid, Eigen::MatrixXcd values);
  /// No band check; for transforms and dequantized kernels.
  static FiberSymbol unchecked(ManifoldPtr m, FiberGrid grid, Eigen::MatrixXcd values);
  /// Samples fn, zeroes entries below 1e-12, then checks the band.
  static FiberSymbol sample(const ManifoldPtr& m, const FiberGrid& grid, const std::function<cplx(double, double)>& fn);

  const ManifoldPtr& manifold() const { return manifold_; }
  const FiberGrid& grid() const { return grid_; }
  const Eigen::MatrixXcd& values() const { return values_; }
  /// Fiber measure c(x_i) dv.
  double fiber_weight(std::size_t i) const { return manifold_->conformal_samples()[static_cast<Eigen::Index>(i)] * grid_.step(); }
  /// Largest |b| in the band |v| >= 0.9 V.
  double band_leak() const;

  cplx operator()(double x, double v) const;
  /// b(x, v_k) for a batch of velocities.
  void evaluate(double x, std::span<const double> vs, std::span<cplx> out) const;

 private:
  FiberSymbol(ManifoldPtr m, FiberGrid grid, Eigen::MatrixXcd values, bool check);

  ManifoldPtr manifold_;
  FiberGrid grid_;
  Eigen::MatrixXcd values_;
  detail::SpectralRows rows_;
};

/// Values a(x_i, p_k) of a function on T*M.
class PhaseSymbol {
 public:
  PhaseSymbol(ManifoldPtr m, MomentumGrid grid, Eigen::MatrixXcd values);
  static PhaseSymbol sample(const ManifoldPtr& m, const MomentumGrid& grid, const std::function<cplx(double, double)>& fn);

  const ManifoldPtr& manifold() const { return manifold_; }
  const MomentumGrid& grid() const { return grid_; }
  const Eigen::MatrixXcd& values() const { return values_; }
  /// Dual fiber measure dp / c(x_i).
  double fiber_weight(std::size_t i) const { return grid_.step / manifold_->conformal_samples()[static_cast<Eigen::Index>(i)]; }

  /// Spectral interpolation in both variables; zero outside the momentum window.
  cplx operator()(double x, double p) const;
  void evaluate(double x, std::span<const double> ps, std::span<cplx> out) const;

 private:
  ManifoldPtr manifold_;
  MomentumGrid grid_;
  Eigen::MatrixXcd values_;
  detail::SpectralRows rows_;
};

/// b(x, v) = sum_k a(x, p_k) exp(2 pi i p_k v) dp / c(x). Requires 2 V dp <= 1.
FiberSymbol fiber_fourier(const PhaseSymbol& a, const FiberGrid& grid);
/// a(x, p) = sum_j b(x, v_j) exp(-2 pi i p v_j) c(x) dv.
PhaseSymbol fiber_fourier_inv(const FiberSymbol& b, const MomentumGrid& grid);

/// Pair-groupoid convolution: (K1 * K2)(x, y) = sum_z K1(x, z) w_z K2(z, y).
L2Operator pair_convolve(const L2Operator& k1, const L2Operator& k2);

/// Fiberwise linear convolution against the fiber measure c(x) dv.
/// Throws SupportOverflowError if the result leaks into |v| >= 0.9 V or off
/// the grid.
FiberSymbol tb_convolve(const FiberSymbol& b1, const FiberSymbol& b2);

struct PairPoint {
  double x = 0.0;
  double y = 0.0;
};

/// (0, v at x) for h = 0, (h, x, y) for h > 0.
struct TangentGroupoidPoint {
  double h = 0.0;
  std::variant<TangentPoint, PairPoint> payload;

  bool at_boundary() const { return std::holds_alternative<TangentPoint>(payload); }
};

/// beta(h, v_x) = (h, x, exp_x(-h v)); beta(0, v) = (0, v).
TangentGroupoidPoint beta_chart(const GridManifold& m, double h, const TangentPoint& v);
/// Inverse chart: v = -log_x(y) / h. Throws CutLocusError off the chart.
TangentPoint beta_inverse(const GridManifold& m, const TangentGroupoidPoint& pt);

using GroupoidFunction = std::function<cplx(const TangentGroupoidPoint&)>;

/// Haar system at source x: sum_j F(0, v_j) c(x) dv at h = 0,
/// h^{-1} sum_i F(h, x, x_i) w_i for h > 0.
cplx haar_integral(const GridManifold& m, const FiberGrid& grid, const GroupoidFunction& f, double h, double x);

/// g on [0, 1] x M extended to the tangent groupoid through the range map.
using ScalarFamily = std::function<cplx(double h, double x)>;
cplx extend_scalar_eval(const ScalarFamily& g, const TangentGroupoidPoint& pt);

/// Either F(h, x) = Fl^Y_h(x) or F(h, x) = phi(x) for all h.
class DiffeoFamily {
 public:
  static DiffeoFamily flow(VectorField y) { return DiffeoFamily(std::move(y)); }
  static DiffeoFamily constant(Diffeo phi) { return DiffeoFamily(std::move(phi)); }

  double at(double h, double x) const;
  /// T_{(0, x)} F (1, v): base F(0, x) and the pushed-forward velocity.
  TangentPoint boundary(const TangentPoint& v) const;

 private:
  explicit DiffeoFamily(std::variant<VectorField, Diffeo> f) : family_(std::move(f)) {}
  std::variant<VectorField, Diffeo> family_;
};

/// (0, v_x) -> (0, T F (1, v_x)); (h, x, y) -> (h, F(h, x), F(0, y)).
TangentGroupoidPoint extend_diffeo_eval(const GridManifold& m, const DiffeoFamily& f, const TangentGroupoidPoint& pt);

}  // namespace orbitlab
