#include "orbitlab/lie_group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

constexpr int kNewtonIterations = 100;
constexpr double kFlowTolerance = 1e-10;
constexpr int kMaxStepsPerUnit = 1 << 15;

// Gauss-Legendre rule on [0, 1].
struct UnitRule {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};
};

const UnitRule& gauss_legendre_16() {
  static const UnitRule rule = [] {
    using Gauss = boost::math::quadrature::gauss<double, 16>;
    const auto& abscissa = Gauss::abscissa();
    const auto& weight = Gauss::weights();
    UnitRule r;
    std::size_t k = 0;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      r.nodes[k] = 0.5 * (1.0 - abscissa[i]);
      r.weights[k++] = 0.5 * weight[i];
      r.nodes[k] = 0.5 * (1.0 + abscissa[i]);
      r.weights[k++] = 0.5 * weight[i];
    }
    return r;
  }();
  return rule;
}

void rk4_segment(const VectorField& x, Eigen::VectorXd& pos, double dt, int steps) {
  const double h = dt / steps;
  const Eigen::Index n = pos.size();
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n);
  for (int s = 0; s < steps; ++s) {
    for (Eigen::Index i = 0; i < n; ++i) k1[i] = x(pos[i]);
    for (Eigen::Index i = 0; i < n; ++i) k2[i] = x(pos[i] + 0.5 * h * k1[i]);
    for (Eigen::Index i = 0; i < n; ++i) k3[i] = x(pos[i] + 0.5 * h * k2[i]);
    for (Eigen::Index i = 0; i < n; ++i) k4[i] = x(pos[i] + h * k3[i]);
    pos += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
}

// Integrate along one direction through increasing |t|; `order` lists
// indices into `times` sorted by |t|.
void integrate_ray(const VectorField& x, const Eigen::VectorXd& starts, const std::vector<double>& times,
                   const std::vector<std::size_t>& order, int steps_per_unit,
                   std::vector<Eigen::VectorXd>& out) {
  Eigen::VectorXd pos = starts;
  double t = 0.0;
  for (std::size_t idx : order) {
    const double dt = times[idx] - t;
    if (dt != 0.0) {
      const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(dt) * steps_per_unit)));
      rk4_segment(x, pos, dt, steps);
    }
    t = times[idx];
    out[idx] = pos;
  }
}

std::vector<Eigen::VectorXd> flow_with(const VectorField& x, const Eigen::VectorXd& starts,
                                       const std::vector<double>& times, int steps_per_unit) {
  std::vector<std::size_t> forward, backward;
  for (std::size_t i = 0; i < times.size(); ++i) (times[i] >= 0.0 ? forward : backward).push_back(i);
  auto by_magnitude = [&](std::size_t a, std::size_t b) { return std::abs(times[a]) < std::abs(times[b]); };
  std::sort(forward.begin(), forward.end(), by_magnitude);
  std::sort(backward.begin(), backward.end(), by_magnitude);
  std::vector<Eigen::VectorXd> out(times.size());
  integrate_ray(x, starts, times, forward, steps_per_unit, out);
  integrate_ray(x, starts, times, backward, steps_per_unit, out);
  return out;
}

}  // namespace

Diffeo::Diffeo(ScalarField displacement)
    : displacement_(std::move(displacement)), slope_(displacement_.derivative()) {
  for (std::size_t i = 0; i < slope_.size(); ++i) {
    if (!(1.0 + slope_[i] > 0.0))
      throw NonInvertibleError("displacement is not orientation preserving at node " + std::to_string(i));
  }
}

Diffeo Diffeo::identity(const ManifoldPtr& m) { return Diffeo(ScalarField::constant(m, 0.0)); }

Diffeo Diffeo::rotation(const ManifoldPtr& m, double shift) { return Diffeo(ScalarField::constant(m, shift)); }

double Diffeo::inverse_at(double y) const {
  const double len = manifold()->length();
  const double tol = 1e-14 * std::max(1.0, len);
  // x + u(x) - y is increasing and shifts by L under x -> x + L, so a bracket
  // of width L exists. Newton steps that leave it, or that fail to halve the
  // residual, give way to bisection.
  auto residual = [&](double x) { return x + displacement_(x) - y; };
  double x = y - displacement_(y);
  double r = residual(x);
  double lo = x, hi = x;
  if (r > 0.0) {
    while (residual(lo) > 0.0) lo -= len;
  } else {
    while (residual(hi) < 0.0) hi += len;
  }
  bool bisect = false;
  for (int it = 0; it < kNewtonIterations; ++it) {
    if (std::abs(r) <= tol) return x;
    if (r > 0.0) hi = x; else lo = x;
    double next = 0.5 * (lo + hi);
    if (!bisect) {
      const double jac = jacobian(x);
      if (!(jac > 0.0)) throw NonInvertibleError("Newton iterate hit a non-increasing point of the circle map");
      const double step = x - r / jac;
      if (step > lo && step < hi) next = step;
    }
    const double previous = std::abs(r);
    x = next;
    r = residual(x);
    bisect = std::abs(r) > 0.5 * previous;
  }
  throw NonInvertibleError("Newton inversion did not converge in " + std::to_string(kNewtonIterations) + " iterations");
}

Diffeo Diffeo::inverse() const {
  const auto& m = manifold();
  Eigen::VectorXd u(static_cast<Eigen::Index>(m->size()));
  for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = inverse_at(m->nodes()[i]) - m->nodes()[i];
  return Diffeo(ScalarField(m, std::move(u)));
}

Eigen::VectorXd Diffeo::node_images() const { return manifold()->nodes() + displacement_.samples(); }

Diffeo compose(const Diffeo& phi, const Diffeo& theta) {
  require_same_manifold(phi.manifold(), theta.manifold());
  const auto& m = phi.manifold();
  Eigen::VectorXd u(static_cast<Eigen::Index>(m->size()));
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double ut = theta.displacement()[static_cast<std::size_t>(i)];
    u[i] = ut + phi.displacement()(m->nodes()[i] + ut);
  }
  return Diffeo(ScalarField(m, std::move(u)));
}

ScalarField push_forward(const ScalarField& g, const Diffeo& phi) {
  require_same_manifold(g.manifold(), phi.manifold());
  const auto& m = g.manifold();
  return ScalarField::sample(m, [&](double y) { return g(phi.inverse_at(y)); });
}

ScalarField pull_back(const ScalarField& g, const Diffeo& phi) {
  require_same_manifold(g.manifold(), phi.manifold());
  return ScalarField::sample(g.manifold(), [&](double x) { return g(phi(x)); });
}

GroupElement GroupElement::identity(const ManifoldPtr& m) {
  return {Diffeo::identity(m), ScalarField::constant(m, 0.0)};
}

AlgebraElement AlgebraElement::zero(const ManifoldPtr& m) {
  return {VectorField::zero(m), ScalarField::constant(m, 0.0)};
}

AlgebraElement operator*(double s, const AlgebraElement& z) { return {s * z.field, s * z.func}; }

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  return {a.field + b.field, a.func + b.func};
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  return {a.field + (-1.0) * b.field, a.func - b.func};
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  require_same_manifold(a.manifold(), b.manifold());
  return {compose(a.diffeo, b.diffeo), push_forward(b.func, a.diffeo) + a.func};
}

GroupElement inverse(const GroupElement& a) {
  return {a.diffeo.inverse(), -pull_back(a.func, a.diffeo)};
}

std::vector<Eigen::VectorXd> flow_points(const VectorField& x, const Eigen::VectorXd& starts,
                                         const std::vector<double>& times) {
  int steps = 8;
  auto coarse = flow_with(x, starts, times, steps);
  while (true) {
    auto fine = flow_with(x, starts, times, 2 * steps);
    double change = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k)
      change = std::max(change, (fine[k] - coarse[k]).cwiseAbs().maxCoeff());
    if (change < kFlowTolerance || 2 * steps >= kMaxStepsPerUnit) return fine;
    coarse = std::move(fine);
    steps *= 2;
  }
}

Diffeo flow(const VectorField& x, double t) {
  const auto& m = x.manifold();
  if (t == 0.0 || x.component().samples().isZero(0.0)) return Diffeo::identity(m);
  const auto end = flow_points(x, m->nodes(), {t}).front();
  return Diffeo(ScalarField(m, end - m->nodes()));
}

GroupElement exp_gm(const AlgebraElement& z) {
  const auto& m = z.manifold();
  const auto& rule = gauss_legendre_16();
  if (z.field.component().samples().isZero(0.0)) return {Diffeo::identity(m), z.func};

  const std::vector<double> times(rule.nodes.begin(), rule.nodes.end());
  const auto back = flow_points((-1.0) * z.field, m->nodes(), times);
  Eigen::VectorXd averaged = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m->size()));
  for (std::size_t k = 0; k < times.size(); ++k) {
    for (Eigen::Index i = 0; i < averaged.size(); ++i) averaged[i] += rule.weights[k] * z.func(back[k][i]);
  }
  return {flow(z.field, 1.0), ScalarField(m, std::move(averaged))};
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_manifold(a.manifold(), b.manifold());
  const auto& x = a.field.component().samples();
  const auto& y = b.field.component().samples();
  const auto dx = a.field.component().derivative().samples();
  const auto dy = b.field.component().derivative().samples();
  const auto df = a.func.derivative().samples();
  const auto dg = b.func.derivative().samples();
  const auto& m = a.manifold();
  Eigen::VectorXd field = y.cwiseProduct(dx) - x.cwiseProduct(dy);
  Eigen::VectorXd func = y.cwiseProduct(df) - x.cwiseProduct(dg);
  return {VectorField(ScalarField(m, std::move(field))), ScalarField(m, std::move(func))};
}

AlgebraElement adjoint(const GroupElement& a, const AlgebraElement& z) {
  require_same_manifold(a.manifold(), z.manifold());
  const auto& m = a.manifold();
  const auto df = a.func.derivative();
  Eigen::VectorXd field(static_cast<Eigen::Index>(m->size()));
  Eigen::VectorXd func(field.size());
  for (Eigen::Index i = 0; i < field.size(); ++i) {
    const double pre = a.diffeo.inverse_at(m->nodes()[i]);
    field[i] = a.diffeo.jacobian(pre) * z.field(pre);
    func[i] = z.func(pre) + field[i] * df[static_cast<std::size_t>(i)];
  }
  return {VectorField(ScalarField(m, std::move(field))), ScalarField(m, std::move(func))};
}

double distance(const GroupElement& a, const GroupElement& b) {
  const double length = a.manifold()->length();
  double d = 0.0;
  for (std::size_t i = 0; i < a.func.size(); ++i) {
    const double du = a.diffeo.displacement()[i] - b.diffeo.displacement()[i];
    d = std::max({d, std::abs(std::remainder(du, length)), std::abs(a.func[i] - b.func[i])});
  }
  return d;
}

double distance(const AlgebraElement& a, const AlgebraElement& b) {
  return std::max((a.field.component().samples() - b.field.component().samples()).cwiseAbs().maxCoeff(),
                  (a.func.samples() - b.func.samples()).cwiseAbs().maxCoeff());
}

}  // namespace orbitlab
