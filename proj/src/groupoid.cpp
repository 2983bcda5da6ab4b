#include "orbitlab/groupoid.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_reciprocal(const FiberGrid& v, const MomentumGrid& p) {
  if (v.size < 4 || v.size % 2 != 0 || p.size < 2 || p.size % 2 != 0)
    throw GridMismatchError("fiber grids need an even number of nodes");
  if (2.0 * v.half_width * p.step > 1.0 + 1e-12)
    throw GridMismatchError("reciprocity violated: 2 V dp = " + format_number(2.0 * v.half_width * p.step) + " > 1");
}

// E(j, k) = exp(2 pi i p_k v_j).
Eigen::MatrixXcd phase_matrix(const FiberGrid& v, const MomentumGrid& p) {
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(v.size), static_cast<Eigen::Index>(p.size));
  for (std::size_t j = 0; j < v.size; ++j)
    for (std::size_t k = 0; k < p.size; ++k)
      e(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = std::polar(1.0, kTwoPi * p.node(k) * v.node(j));
  return e;
}


}  // namespace

namespace detail {

SpectralRows::SpectralRows(const Eigen::MatrixXcd& values, double half_width) : half_width_(half_width) {
  const auto n = values.rows();
  const auto mv = values.cols();
  coeffs_.resize(n, mv);
  Eigen::FFT<double> fft;
  std::vector<cplx> in(static_cast<std::size_t>(mv)), out;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < mv; ++j) in[static_cast<std::size_t>(j)] = values(i, j);
    fft.fwd(out, in);
    for (Eigen::Index j = 0; j < mv; ++j) coeffs_(i, j) = out[static_cast<std::size_t>(j)] / static_cast<double>(mv);
  }
}

void SpectralRows::evaluate(const GridManifold& m, double x, std::span<const double> ts, std::span<cplx> out) const {
  Eigen::VectorXcd c;
  if (auto i = m.node_index(x)) {
    c = coeffs_.row(static_cast<Eigen::Index>(*i)).transpose();
  } else {
    std::vector<double> l(m.size());
    spectral::cardinal_weights(m.size(), m.length(), 0.0, x, l);
    const Eigen::Map<const Eigen::VectorXd> lv(l.data(), static_cast<Eigen::Index>(l.size()));
    c = coeffs_.transpose() * lv.cast<cplx>();
  }
  const std::span<const cplx> cs(c.data(), static_cast<std::size_t>(c.size()));
  for (std::size_t k = 0; k < ts.size(); ++k) {
    out[k] = std::abs(ts[k]) < half_width_ ? spectral::series_value(cs, kTwoPi * (ts[k] + half_width_) / (2.0 * half_width_))
                                           : cplx{};
  }
}

}  // namespace detail

FiberSymbol::FiberSymbol(ManifoldPtr m, FiberGrid grid, Eigen::MatrixXcd values)
    : FiberSymbol(std::move(m), grid, std::move(values), true) {}

FiberSymbol FiberSymbol::unchecked(ManifoldPtr m, FiberGrid grid, Eigen::MatrixXcd values) {
  return FiberSymbol(std::move(m), grid, std::move(values), false);
}

FiberSymbol::FiberSymbol(ManifoldPtr m, FiberGrid grid, Eigen::MatrixXcd values, bool check)
    : manifold_(std::move(m)), grid_(grid), values_(std::move(values)) {
  if (grid_.size < 4 || grid_.size % 2 != 0 || !(grid_.half_width > 0.0))
    throw InvalidParameter("velocity grid needs an even number of nodes and V > 0");
  if (static_cast<std::size_t>(values_.rows()) != manifold_->size() ||
      static_cast<std::size_t>(values_.cols()) != grid_.size)
    throw InvalidParameter("fiber symbol shape does not match its grids");
  if (check && band_leak() > kTruncation)
    throw SupportOverflowError("fiber symbol is not supported inside |v| < 0.9 V (leak " +
                               format_number(band_leak()) + ")");
  rows_ = detail::SpectralRows(values_, grid_.half_width);
}

FiberSymbol FiberSymbol::sample(const ManifoldPtr& m, const FiberGrid& grid,
                                const std::function<cplx(double, double)>& fn) {
  Eigen::MatrixXcd b(static_cast<Eigen::Index>(m->size()), static_cast<Eigen::Index>(grid.size));
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const cplx v = fn(m->nodes()[i], grid.node(static_cast<std::size_t>(j)));
      b(i, j) = std::abs(v) < kTruncation ? cplx{} : v;
    }
  return FiberSymbol(m, grid, std::move(b));
}

double FiberSymbol::band_leak() const {
  double leak = 0.0;
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    if (std::abs(grid_.node(static_cast<std::size_t>(j))) < kBand * grid_.half_width) continue;
    leak = std::max(leak, values_.col(j).cwiseAbs().maxCoeff());
  }
  return leak;
}

void FiberSymbol::evaluate(double x, std::span<const double> vs, std::span<cplx> out) const {
  rows_.evaluate(*manifold_, x, vs, out);
}

cplx FiberSymbol::operator()(double x, double v) const {
  cplx out;
  evaluate(x, std::span<const double>(&v, 1), std::span<cplx>(&out, 1));
  return out;
}

PhaseSymbol::PhaseSymbol(ManifoldPtr m, MomentumGrid grid, Eigen::MatrixXcd values)
    : manifold_(std::move(m)), grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.rows()) != manifold_->size() ||
      static_cast<std::size_t>(values_.cols()) != grid_.size)
    throw InvalidParameter("phase symbol shape does not match its grids");
  rows_ = detail::SpectralRows(values_, 0.5 * grid_.step * static_cast<double>(grid_.size));
}

void PhaseSymbol::evaluate(double x, std::span<const double> ps, std::span<cplx> out) const {
  rows_.evaluate(*manifold_, x, ps, out);
}

cplx PhaseSymbol::operator()(double x, double p) const {
  cplx out;
  evaluate(x, std::span<const double>(&p, 1), std::span<cplx>(&out, 1));
  return out;
}

PhaseSymbol PhaseSymbol::sample(const ManifoldPtr& m, const MomentumGrid& grid,
                                const std::function<cplx(double, double)>& fn) {
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(m->size()), static_cast<Eigen::Index>(grid.size));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) a(i, k) = fn(m->nodes()[i], grid.node(static_cast<std::size_t>(k)));
  return PhaseSymbol(m, grid, std::move(a));
}

FiberSymbol fiber_fourier(const PhaseSymbol& a, const FiberGrid& grid) {
  require_reciprocal(grid, a.grid());
  const auto& m = a.manifold();
  const Eigen::VectorXd scale = (a.grid().step * m->conformal_samples().cwiseInverse());
  Eigen::MatrixXcd b = scale.cast<cplx>().asDiagonal() * (a.values() * phase_matrix(grid, a.grid()).transpose());
  return FiberSymbol::unchecked(m, grid, std::move(b));
}

PhaseSymbol fiber_fourier_inv(const FiberSymbol& b, const MomentumGrid& grid) {
  require_reciprocal(b.grid(), grid);
  const auto& m = b.manifold();
  const Eigen::VectorXd scale = b.grid().step() * m->conformal_samples();
  Eigen::MatrixXcd a = scale.cast<cplx>().asDiagonal() * (b.values() * phase_matrix(b.grid(), grid).conjugate());
  return PhaseSymbol(m, grid, std::move(a));
}

L2Operator pair_convolve(const L2Operator& k1, const L2Operator& k2) {
  require_same_manifold(k1.manifold(), k2.manifold());
  const auto& w = k1.manifold()->weights();
  return L2Operator(k1.manifold(), Eigen::MatrixXcd(k1.kernel() * w.cast<cplx>().asDiagonal() * k2.kernel()));
}

FiberSymbol tb_convolve(const FiberSymbol& b1, const FiberSymbol& b2) {
  require_same_manifold(b1.manifold(), b2.manifold());
  if (b1.grid().size != b2.grid().size || b1.grid().half_width != b2.grid().half_width)
    throw GridMismatchError("fiber convolution needs a shared velocity grid");
  const std::size_t mv = b1.grid().size;
  const std::size_t padded = 2 * mv;
  const std::size_t offset = mv / 2;
  Eigen::FFT<double> fft;
  std::vector<cplx> in1(padded), in2(padded), f1, f2, prod(padded), conv;
  Eigen::MatrixXcd out(b1.values().rows(), static_cast<Eigen::Index>(mv));
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    std::fill(in1.begin(), in1.end(), cplx{});
    std::fill(in2.begin(), in2.end(), cplx{});
    for (std::size_t j = 0; j < mv; ++j) {
      in1[j] = b1.values()(i, static_cast<Eigen::Index>(j));
      in2[j] = b2.values()(i, static_cast<Eigen::Index>(j));
    }
    fft.fwd(f1, in1);
    fft.fwd(f2, in2);
    for (std::size_t k = 0; k < padded; ++k) prod[k] = f1[k] * f2[k];
    fft.inv(conv, prod);
    const double lambda = b1.fiber_weight(static_cast<std::size_t>(i));
    for (std::size_t r = 0; r + 1 < padded; ++r) {
      const cplx v = conv[r] * lambda;
      if (r < offset || r >= offset + mv) {
        if (std::abs(v) > FiberSymbol::kTruncation)
          throw SupportOverflowError("fiber convolution leaves the velocity grid at node " + std::to_string(i));
        continue;
      }
      out(i, static_cast<Eigen::Index>(r - offset)) = v;
    }
  }
  return FiberSymbol(b1.manifold(), b1.grid(), std::move(out));
}

TangentGroupoidPoint beta_chart(const GridManifold& m, double h, const TangentPoint& v) {
  if (h < 0.0) throw InvalidParameter("tangent groupoid parameter must be non-negative");
  if (h == 0.0) return {0.0, TangentPoint{m.reduce(v.base), v.v}};
  const double x = m.reduce(v.base);
  return {h, PairPoint{x, riem_exp(m, x, -h * v.v)}};
}

TangentPoint beta_inverse(const GridManifold& m, const TangentGroupoidPoint& pt) {
  if (pt.at_boundary()) return std::get<TangentPoint>(pt.payload);
  const auto& p = std::get<PairPoint>(pt.payload);
  return {m.reduce(p.x), -riem_log(m, p.x, p.y) / pt.h};
}

cplx haar_integral(const GridManifold& m, const FiberGrid& grid, const GroupoidFunction& f, double h, double x) {
  if (h < 0.0) throw InvalidParameter("tangent groupoid parameter must be non-negative");
  cplx acc{};
  if (h == 0.0) {
    const double lambda = m.conformal(x) * grid.step();
    for (std::size_t j = 0; j < grid.size; ++j) acc += f({0.0, TangentPoint{x, grid.node(j)}}) * lambda;
    return acc;
  }
  for (std::size_t i = 0; i < m.size(); ++i)
    acc += f({h, PairPoint{x, m.node(i)}}) * m.weights()[static_cast<Eigen::Index>(i)];
  return acc / h;
}

cplx extend_scalar_eval(const ScalarFamily& g, const TangentGroupoidPoint& pt) {
  if (pt.at_boundary()) return g(0.0, std::get<TangentPoint>(pt.payload).base);
  return g(pt.h, std::get<PairPoint>(pt.payload).x);
}

double DiffeoFamily::at(double h, double x) const {
  if (const auto* phi = std::get_if<Diffeo>(&family_)) return (*phi)(x);
  const auto& y = std::get<VectorField>(family_);
  if (h == 0.0) return x;
  Eigen::VectorXd start(1);
  start[0] = x;
  return flow_points(y, start, {h}).front()[0];
}

TangentPoint DiffeoFamily::boundary(const TangentPoint& v) const {
  if (const auto* phi = std::get_if<Diffeo>(&family_)) return {(*phi)(v.base), phi->jacobian(v.base) * v.v};
  return {v.base, v.v + std::get<VectorField>(family_)(v.base)};
}

TangentGroupoidPoint extend_diffeo_eval(const GridManifold& m, const DiffeoFamily& f, const TangentGroupoidPoint& pt) {
  if (pt.at_boundary()) {
    const auto t = f.boundary(std::get<TangentPoint>(pt.payload));
    return {0.0, TangentPoint{m.reduce(t.base), t.v}};
  }
  const auto& p = std::get<PairPoint>(pt.payload);
  return {pt.h, PairPoint{m.reduce(f.at(pt.h, p.x)), m.reduce(f.at(0.0, p.y))}};
}

}  // namespace orbitlab
