#include "orbitlab/manifold.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "orbitlab/errors.hpp"

namespace orbitlab {

std::shared_ptr<const GridManifold> GridManifold::create(std::size_t num_points, double length,
                                                         const std::function<double(double)>& conformal) {
  if (num_points < 4 || num_points % 2 != 0)
    throw InvalidParameter("grid size must be even and at least 4, got " + std::to_string(num_points));
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidParameter("circumference must be positive");

  auto m = std::shared_ptr<GridManifold>(new GridManifold());
  m->n_ = num_points;
  m->length_ = length;
  const auto n = static_cast<Eigen::Index>(num_points);
  m->nodes_.resize(n);
  m->conformal_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) * length / static_cast<double>(num_points);
    m->nodes_[i] = x;
    const double c = conformal(x);
    if (!(c > 0.0) || !std::isfinite(c))
      throw InvalidParameter("conformal factor must be positive at every node (node " + std::to_string(i) + ")");
    m->conformal_[i] = c;
  }
  m->flat_ = (m->conformal_.array() == 1.0).all();
  m->weights_ = m->conformal_ * m->spacing();
  m->conformal_series_ = spectral::TrigSeries(std::span<const double>(m->conformal_.data(), num_points), length);
  m->conformal_slope_ = m->conformal_series_.derivative();
  m->total_length_ = m->weights_.sum();
  m->node_arclength_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) m->node_arclength_[i] = m->conformal_series_.integral(m->nodes_[i]).real();
  m->derivative_ = spectral::derivative_matrix(num_points, length);
  return m;
}

std::shared_ptr<const GridManifold> GridManifold::flat(std::size_t num_points, double length) {
  return create(num_points, length, [](double) { return 1.0; });
}

std::shared_ptr<const GridManifold> GridManifold::cosine(std::size_t num_points, double amplitude, double length) {
  if (std::abs(amplitude) >= 1.0) throw InvalidParameter("cosine metric amplitude must lie in (-1, 1)");
  return create(num_points, length, [=](double x) {
    return 1.0 + amplitude * std::cos(2.0 * std::numbers::pi * x / length);
  });
}

double GridManifold::conformal(double x) const {
  if (flat_) return 1.0;
  if (auto i = node_index(x)) return conformal_[static_cast<Eigen::Index>(*i)];
  return conformal_series_.real_value(x);
}

double GridManifold::conformal_derivative(double x) const {
  return flat_ ? 0.0 : conformal_slope_.real_value(x);
}

double GridManifold::arclength(double x) const {
  if (flat_) return x;
  // Node coordinates hit a table; kernels are mostly evaluated on the grid.
  const double r = x / spacing();
  const double k = std::round(r);
  if (r == k) {
    const auto idx = static_cast<long long>(k);
    const auto n = static_cast<long long>(n_);
    const long long wrap = (idx >= 0 ? idx / n : -((-idx + n - 1) / n));
    return node_arclength_[static_cast<Eigen::Index>(idx - wrap * n)] + static_cast<double>(wrap) * total_length_;
  }
  return conformal_series_.integral(x).real();
}

double GridManifold::arclength_inverse(double s) const {
  if (flat_) return s;
  const double periods = std::floor(s / total_length_);
  const double r = s - periods * total_length_;
  double lo = 0.0;
  double hi = length_;
  double y = r / total_length_ * length_;
  for (int it = 0; it < 100; ++it) {
    const double residual = arclength(y) - r;
    if (residual > 0.0) hi = y; else lo = y;
    if (std::abs(residual) <= 4e-16 * total_length_) break;
    double next = y - residual / conformal(y);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - y) <= 1e-16 * length_) { y = next; break; }
    y = next;
  }
  return y + periods * length_;
}

double GridManifold::reduce(double x) const {
  double r = std::fmod(x, length_);
  if (r < 0.0) r += length_;
  if (r >= length_) r = 0.0;
  return r;
}

std::optional<std::size_t> GridManifold::node_index(double x) const {
  const double r = x / spacing();
  const double k = std::round(r);
  if (!(std::abs(r - k) <= 1e-12)) return std::nullopt;
  const auto n = static_cast<long long>(n_);
  long long idx = static_cast<long long>(k) % n;
  if (idx < 0) idx += n;
  return static_cast<std::size_t>(idx);
}

void require_same_manifold(const ManifoldPtr& a, const ManifoldPtr& b) {
  if (a.get() != b.get()) throw InvalidParameter("operands live on different manifolds");
}

template <class T>
GridFunction<T>::GridFunction(ManifoldPtr manifold, Vector samples)
    : manifold_(std::move(manifold)), samples_(std::move(samples)) {
  if (!manifold_) throw InvalidParameter("field needs a manifold");
  if (static_cast<std::size_t>(samples_.size()) != manifold_->size())
    throw InvalidParameter("sample count does not match the grid");
  series_ = spectral::TrigSeries(std::span<const T>(samples_.data(), size()), manifold_->length());
}

template <class T>
GridFunction<T> GridFunction<T>::sample(const ManifoldPtr& manifold, const std::function<T(double)>& fn) {
  Vector v(static_cast<Eigen::Index>(manifold->size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = fn(manifold->nodes()[i]);
  return GridFunction(manifold, std::move(v));
}

template <class T>
GridFunction<T> GridFunction<T>::constant(const ManifoldPtr& manifold, T value) {
  return GridFunction(manifold, Vector::Constant(static_cast<Eigen::Index>(manifold->size()), value));
}

template <class T>
T GridFunction<T>::operator()(double x) const {
  if (auto i = manifold_->node_index(x)) return samples_[static_cast<Eigen::Index>(*i)];
  if constexpr (std::is_same_v<T, double>) {
    return series_.real_value(x);
  } else {
    return series_.value(x);
  }
}

template <class T>
GridFunction<T> GridFunction<T>::derivative() const {
  const auto d = series_.derivative().samples();
  Vector v(samples_.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if constexpr (std::is_same_v<T, double>) {
      v[i] = d[static_cast<std::size_t>(i)].real();
    } else {
      v[i] = d[static_cast<std::size_t>(i)];
    }
  }
  return GridFunction(manifold_, std::move(v));
}

template <class T>
GridFunction<T>& GridFunction<T>::operator+=(const GridFunction& other) {
  require_same_manifold(manifold_, other.manifold_);
  samples_ += other.samples_;
  series_ = spectral::TrigSeries(std::span<const T>(samples_.data(), size()), manifold_->length());
  return *this;
}

template <class T>
GridFunction<T>& GridFunction<T>::operator-=(const GridFunction& other) {
  require_same_manifold(manifold_, other.manifold_);
  samples_ -= other.samples_;
  series_ = spectral::TrigSeries(std::span<const T>(samples_.data(), size()), manifold_->length());
  return *this;
}

template <class T>
GridFunction<T>& GridFunction<T>::operator*=(T scale) {
  samples_ *= scale;
  series_ = spectral::TrigSeries(std::span<const T>(samples_.data(), size()), manifold_->length());
  return *this;
}

template <class T>
GridFunction<T> pointwise(const GridFunction<T>& a, const GridFunction<T>& b) {
  require_same_manifold(a.manifold(), b.manifold());
  return GridFunction<T>(a.manifold(), a.samples().cwiseProduct(b.samples()));
}

template <class T>
T integrate(const GridFunction<T>& field) {
  const auto& w = field.manifold()->weights();
  T acc{};
  for (Eigen::Index i = 0; i < w.size(); ++i) acc += field.samples()[i] * w[i];
  return acc;
}

template class GridFunction<double>;
template class GridFunction<cplx>;
template ScalarField pointwise(const ScalarField&, const ScalarField&);
template ComplexField pointwise(const ComplexField&, const ComplexField&);
template double integrate(const ScalarField&);
template cplx integrate(const ComplexField&);

ComplexField complexify(const ScalarField& f) {
  return ComplexField(f.manifold(), f.samples().cast<cplx>());
}

ScalarField VectorField::divergence() const {
  const auto& m = *manifold();
  const ScalarField slope = component_.derivative();
  Eigen::VectorXd v(slope.samples().size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double x = m.nodes()[i];
    v[i] = slope.samples()[i] + component_.samples()[i] * m.conformal_derivative(x) / m.conformal_samples()[i];
  }
  return ScalarField(manifold(), std::move(v));
}

double riem_exp(const GridManifold& m, double x, double v) {
  if (m.is_flat()) return m.reduce(x + v);
  const double s = m.arclength(x) + m.conformal(x) * v;
  return m.reduce(m.arclength_inverse(s));
}

double riem_log(const GridManifold& m, double x, double y) {
  const double xr = m.reduce(x);
  const double yr = m.reduce(y);
  const double total = m.total_length();
  const double d = std::remainder(m.arclength(yr) - m.arclength(xr), total);
  if (std::abs(d) >= 0.5 * total * (1.0 - 1e-12))
    throw CutLocusError("points are antipodal; no unique shortest geodesic");
  return d / m.conformal(xr);
}

}  // namespace orbitlab
