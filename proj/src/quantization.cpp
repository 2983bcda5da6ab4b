#include "orbitlab/quantization.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

void require_positive_h(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidParameter("semiclassical parameter h must be positive");
}

std::vector<double> cardinal(const GridManifold& m, double x) {
  std::vector<double> w(m.size());
  spectral::cardinal_weights(m.size(), m.length(), 0.0, x, w);
  return w;
}

}  // namespace

L2Operator::L2Operator(ManifoldPtr m, Eigen::MatrixXcd kernel) : manifold_(std::move(m)), kernel_(std::move(kernel)) {
  const auto n = static_cast<Eigen::Index>(manifold_->size());
  if (kernel_.rows() != n || kernel_.cols() != n) throw InvalidParameter("kernel shape does not match the grid");
}

L2Operator::L2Operator(ManifoldPtr m, RowEvaluator rows) : manifold_(std::move(m)), rows_(std::move(rows)) {
  const auto n = static_cast<Eigen::Index>(manifold_->size());
  kernel_.resize(n, n);
  const auto& x = manifold_->nodes();
  std::vector<cplx> buf(manifold_->size());
  for (Eigen::Index i = 0; i < n; ++i) {
    rows_(x[i], std::span<const double>(x.data(), manifold_->size()), buf);
    for (Eigen::Index j = 0; j < n; ++j) kernel_(i, j) = buf[static_cast<std::size_t>(j)];
  }
}

L2Operator L2Operator::identity(const ManifoldPtr& m) {
  Eigen::VectorXcd d = m->weights().cwiseInverse().cast<cplx>();
  return L2Operator(m, Eigen::MatrixXcd(d.asDiagonal()));
}

void L2Operator::row(double x, std::span<const double> ys, std::span<cplx> out) const {
  if (rows_) {
    rows_(x, ys, out);
    return;
  }
  const auto& m = *manifold_;
  const auto wx = cardinal(m, x);
  const Eigen::Map<const Eigen::VectorXd> lx(wx.data(), static_cast<Eigen::Index>(wx.size()));
  const Eigen::RowVectorXcd r = lx.cast<cplx>().transpose() * kernel_;
  std::vector<double> wy(m.size());
  for (std::size_t k = 0; k < ys.size(); ++k) {
    spectral::cardinal_weights(m.size(), m.length(), 0.0, ys[k], wy);
    cplx acc{};
    for (std::size_t j = 0; j < wy.size(); ++j) acc += r[static_cast<Eigen::Index>(j)] * wy[j];
    out[k] = acc;
  }
}

cplx L2Operator::operator()(double x, double y) const {
  cplx out;
  row(x, std::span<const double>(&y, 1), std::span<cplx>(&out, 1));
  return out;
}

ComplexField L2Operator::apply(const ComplexField& psi) const {
  require_same_manifold(manifold_, psi.manifold());
  const Eigen::VectorXcd weighted = psi.samples().cwiseProduct(manifold_->weights().cast<cplx>());
  return ComplexField(manifold_, kernel_ * weighted);
}

L2Operator L2Operator::adjoint() const {
  if (!rows_) return L2Operator(manifold_, Eigen::MatrixXcd(kernel_.adjoint()));
  auto rows = rows_;
  return L2Operator(manifold_, [rows](double x, std::span<const double> ys, std::span<cplx> out) {
    cplx v;
    for (std::size_t k = 0; k < ys.size(); ++k) {
      rows(ys[k], std::span<const double>(&x, 1), std::span<cplx>(&v, 1));
      out[k] = std::conj(v);
    }
  });
}

ComplexField PointwiseOperator::apply(const ComplexField& psi) const {
  require_same_manifold(manifold(), psi.manifold());
  const Eigen::VectorXd z = shift.node_images();
  ComplexField::Vector out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out[i] = multiplier.samples()[i] * scale.samples()[i] * psi(z[i]);
  return ComplexField(manifold(), std::move(out));
}

L2Operator PointwiseOperator::materialize() const {
  const auto& m = *manifold();
  const auto n = static_cast<Eigen::Index>(m.size());
  const Eigen::VectorXd z = shift.node_images();
  Eigen::MatrixXcd k(n, n);
  std::vector<double> l(m.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    spectral::cardinal_weights(m.size(), m.length(), 0.0, z[i], l);
    const cplx pre = multiplier.samples()[i] * scale.samples()[i];
    for (Eigen::Index j = 0; j < n; ++j) k(i, j) = pre * l[static_cast<std::size_t>(j)] / m.weights()[j];
  }
  return L2Operator(manifold(), std::move(k));
}

double radon_nikodym(const Diffeo& phi, double x) {
  const auto& m = *phi.manifold();
  const double z = phi.inverse_at(x);
  return m.conformal(z) / (m.conformal(x) * phi.jacobian(z));
}

ScalarField radon_nikodym(const Diffeo& phi) {
  return ScalarField::sample(phi.manifold(), [&](double x) { return radon_nikodym(phi, x); });
}

PointwiseOperator rho(double h, const GroupElement& a) {
  require_positive_h(h);
  const auto& m = a.manifold();
  const double k = -2.0 * std::numbers::pi / h;
  ComplexField::Vector mult(static_cast<Eigen::Index>(m->size()));
  for (Eigen::Index i = 0; i < mult.size(); ++i) mult[i] = std::polar(1.0, k * a.func.samples()[i]);
  Diffeo inv = a.diffeo.inverse();
  Eigen::VectorXd scale(mult.size());
  const Eigen::VectorXd z = inv.node_images();
  for (Eigen::Index i = 0; i < scale.size(); ++i)
    scale[i] = std::sqrt(m->conformal(z[i]) / (m->conformal_samples()[i] * a.diffeo.jacobian(z[i])));
  return {ComplexField(m, std::move(mult)), std::move(inv), ScalarField(m, std::move(scale))};
}

L2Operator quantize_affine(double h, const AlgebraElement& z) {
  require_positive_h(h);
  const auto& m = z.manifold();
  const cplx coef(0.0, -h / (2.0 * std::numbers::pi));
  const Eigen::VectorXd x = z.field.component().samples();
  const Eigen::VectorXd div = z.field.divergence().samples();
  Eigen::MatrixXcd a = coef * (x.asDiagonal() * m->derivative_matrix()).cast<cplx>();
  a.diagonal() += (z.func.samples().cast<cplx>() + 0.5 * coef * div.cast<cplx>());
  return L2Operator(m, a * m->weights().cwiseInverse().cast<cplx>().asDiagonal());
}

cplx l2_inner(const ComplexField& psi, const ComplexField& chi) {
  require_same_manifold(psi.manifold(), chi.manifold());
  const auto& w = psi.manifold()->weights();
  cplx acc{};
  for (Eigen::Index i = 0; i < w.size(); ++i) acc += psi.samples()[i] * std::conj(chi.samples()[i]) * w[i];
  return acc;
}

cplx operator_trace(const L2Operator& t) {
  const auto& w = t.manifold()->weights();
  cplx acc{};
  for (Eigen::Index i = 0; i < w.size(); ++i) acc += t.kernel()(i, i) * w[i];
  return acc;
}

}  // namespace orbitlab
