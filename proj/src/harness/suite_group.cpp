#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "common.hpp"
#include "orbitlab/errors.hpp"

namespace orbitlab::harness {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Largest |D(t) - exact| over the slots of a central difference in t, and the
// fourth-order Richardson combination at the smallest pair.
struct DifferenceStudy {
  std::vector<double> t;
  std::vector<double> errors;
  double extrapolated_error = 0.0;
};

template <class Diff>
DifferenceStudy central_difference_study(const std::vector<double>& ts, Diff&& diff, const Eigen::VectorXd& exact) {
  DifferenceStudy s;
  s.t = ts;
  std::vector<Eigen::VectorXd> d;
  for (double t : ts) {
    d.push_back(diff(t));
    s.errors.push_back((d.back() - exact).cwiseAbs().maxCoeff());
  }
  const std::size_t n = ts.size();
  const Eigen::VectorXd rich = (4.0 * d[n - 1] - d[n - 2]) / 3.0;
  s.extrapolated_error = (rich - exact).cwiseAbs().maxCoeff();
  return s;
}

Eigen::VectorXd stack(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd out(a.size() + b.size());
  out << a, b;
  return out;
}

// exp second slot by dopri5 on y' = -X(y), q' = f(y).
double exp_second_slot_oracle(const AlgebraElement& z, double x) {
  using State = std::array<double, 2>;
  namespace ode = boost::numeric::odeint;
  State s{x, 0.0};
  auto rhs = [&](const State& u, State& du, double) {
    du[0] = -z.field.component()(u[0]);
    du[1] = z.func(u[0]);
  };
  ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-14, 1e-14), rhs, s, 0.0, 1.0, 1e-3);
  return s[1];
}

}  // namespace

SuiteResult group_suite(const ExperimentConfig& cfg) {
  SuiteResult r{"group", {}, {}};
  const auto m = cfg.manifold();
  Rng rng(cfg.seed ^ 0x67726f7570ULL);
  const double len = m->length();

  {
    double worst = 0.0;
    const double limit = 0.5 * m->total_length() * (1.0 - 1e-9);
    for (std::size_t i = 0; i < m->size(); ++i)
      for (std::size_t j = 0; j < m->size(); ++j) {
        const double d = std::remainder(m->arclength(m->node(j)) - m->arclength(m->node(i)), m->total_length());
        if (std::abs(d) >= limit) continue;
        const double y = riem_exp(*m, m->node(i), riem_log(*m, m->node(i), m->node(j)));
        worst = std::max(worst, std::abs(std::remainder(y - m->node(j), len)));
      }
    r.checks.push_back(at_most("manifold.exp_log_roundtrip", anchor::exp_log, worst, 1e-10));
  }
  {
    // c = 1 + a cos(2 pi x / L), so the exact integral of T c is L (alpha_0 + a alpha_1 / 2).
    const double a = cfg.metric == "flat" ? 0.0 : cfg.amplitude;
    const std::size_t degree = m->size() / 2 - 1;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> alpha(degree + 1), beta(degree + 1);
      for (std::size_t k = 0; k <= degree; ++k) {
        alpha[k] = rng.uniform(-1.0, 1.0);
        beta[k] = rng.uniform(-1.0, 1.0);
      }
      const auto t = ScalarField::sample(m, [&](double x) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= degree; ++k) {
          const double th = kTwoPi * static_cast<double>(k) * x / len;
          acc += alpha[k] * std::cos(th) + beta[k] * std::sin(th);
        }
        return acc;
      });
      worst = std::max(worst, std::abs(integrate(t) - len * (alpha[0] + 0.5 * a * alpha[1])));
    }
    r.checks.push_back(at_most("manifold.quadrature", anchor::quadrature, worst, 1e-10));
  }
  {
    const auto f = ScalarField::sample(m, [&](double x) { return std::exp(std::sin(kTwoPi * x / len)); });
    const auto df = differentiate(f);
    std::vector<double> steps, errors;
    for (int k = 2; k <= 6; ++k) {
      const double s = std::ldexp(1.0, -k);
      double worst = 0.0;
      for (std::size_t i = 0; i < m->size(); i += 8) {
        const double x = m->node(i);
        const double fd = (f(x - 2 * s) - 8 * f(x - s) + 8 * f(x + s) - f(x + 2 * s)) / (12 * s);
        worst = std::max(worst, std::abs(fd - df[i]));
      }
      steps.push_back(s);
      errors.push_back(worst);
    }
    r.reports.push_back({"differentiation_fd4", make_error_report(steps, errors)});
    r.checks.push_back(within("manifold.derivative_order", anchor::differentiation, fit_loglog_slope(steps, errors), 4.0, 0.3));
  }
  {
    double assoc = 0.0, inv = 0.0;
    const auto e = GroupElement::identity(m);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_group_element(m, rng);
      const auto b = random_group_element(m, rng);
      const auto c = random_group_element(m, rng);
      assoc = std::max(assoc, distance(multiply(multiply(a, b), c), multiply(a, multiply(b, c))));
      const auto ai = inverse(a);
      inv = std::max({inv, distance(multiply(a, ai), e), distance(multiply(ai, a), e)});
    }
    r.checks.push_back(at_most("group.associativity", anchor::product_law, assoc, 1e-8));
    r.checks.push_back(at_most("group.inverse", anchor::product_law, inv, 1e-8));
  }
  {
    double one_param = 0.0, quad = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      const auto z = random_algebra_element(m, rng);
      const double t = rng.uniform(-1.0, 1.0), s = rng.uniform(-1.0, 1.0);
      one_param = std::max(one_param, distance(multiply(exp_gm(t * z), exp_gm(s * z)), exp_gm((t + s) * z)));
      const auto g = exp_gm(z);
      for (std::size_t i = 0; i < m->size(); i += m->size() / 16)
        quad = std::max(quad, std::abs(g.func[i] - exp_second_slot_oracle(z, m->node(i))));
    }
    r.checks.push_back(at_most("group.one_parameter", anchor::exponential, one_param, 1e-8));
    r.checks.push_back(at_most("group.exp_quadrature", anchor::exponential, quad, 1e-9));
  }
  {
    double jacobi = 0.0, adj = 0.0;
    const auto zero = AlgebraElement::zero(m);
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = random_algebra_element(m, rng);
      const auto y = random_algebra_element(m, rng);
      const auto z = random_algebra_element(m, rng);
      jacobi = std::max(jacobi, distance(bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y)), zero));
      const auto a = random_group_element(m, rng);
      const auto b = random_group_element(m, rng);
      adj = std::max(adj, distance(adjoint(multiply(a, b), z), adjoint(a, adjoint(b, z))));
    }
    r.checks.push_back(at_most("group.jacobi", anchor::bracket, jacobi, 1e-8));
    r.checks.push_back(at_most("group.adjoint_homomorphism", anchor::adjoint, adj, 1e-8));
  }
  std::vector<double> ts;
  for (int k = 2; k <= 7; ++k) ts.push_back(std::ldexp(1.0, -k));
  {
    const auto a = random_group_element(m, rng);
    const auto z = random_algebra_element(m, rng);
    const auto ai = inverse(a);
    const auto ad = adjoint(a, z);
    auto diff = [&](double t) {
      const auto p = multiply(multiply(a, exp_gm(t * z)), ai);
      const auto q = multiply(multiply(a, exp_gm((-t) * z)), ai);
      Eigen::VectorXd du = p.diffeo.displacement().samples() - q.diffeo.displacement().samples();
      for (auto& v : du) v = std::remainder(v, len);
      return Eigen::VectorXd(stack(du, p.func.samples() - q.func.samples()) / (2 * t));
    };
    const auto s = central_difference_study(ts, diff, stack(ad.field.component().samples(), ad.func.samples()));
    r.reports.push_back({"adjoint_conjugation", make_error_report(s.t, s.errors)});
    r.checks.push_back(within("group.adjoint_slope", anchor::adjoint, fit_loglog_slope(s.t, s.errors), 2.0, 0.2));
    r.checks.push_back(at_most("group.adjoint_limit", anchor::adjoint, s.extrapolated_error, 1e-6));
  }
  {
    const auto z1 = random_algebra_element(m, rng);
    const auto z2 = random_algebra_element(m, rng);
    const auto br = bracket(z1, z2);
    auto diff = [&](double t) {
      const auto p = adjoint(exp_gm(t * z1), z2);
      const auto q = adjoint(exp_gm((-t) * z1), z2);
      return Eigen::VectorXd(stack(p.field.component().samples() - q.field.component().samples(),
                                   p.func.samples() - q.func.samples()) / (2 * t));
    };
    const auto s = central_difference_study(ts, diff, stack(br.field.component().samples(), br.func.samples()));
    r.reports.push_back({"bracket_from_adjoint", make_error_report(s.t, s.errors)});
    r.checks.push_back(within("group.bracket_slope", anchor::bracket, fit_loglog_slope(s.t, s.errors), 2.0, 0.2));
  }
  return r;
}

}  // namespace orbitlab::harness
