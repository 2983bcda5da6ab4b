#include "orbitlab/semiclassics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <string>

#include "orbitlab/errors.hpp"

namespace orbitlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Rows = L2Operator::RowEvaluator;

Rows rows_of(const L2Operator& t) {
  if (t.has_rows()) return t.rows();
  auto shared = std::make_shared<const L2Operator>(t);
  return [shared](double x, std::span<const double> ys, std::span<cplx> out) { shared->row(x, ys, out); };
}

void require_positive_h(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidParameter("semiclassical parameter h must be positive");
}

// Node preimages of phi precomputed; other points by Newton.
class Preimage {
 public:
  explicit Preimage(const Diffeo& phi) : phi_(phi), nodes_(phi.inverse().node_images()) {}
  double operator()(double y) const {
    if (auto i = phi_.manifold()->node_index(y)) {
      const auto& m = *phi_.manifold();
      // Shift the node preimage by the same number of periods as y.
      const double periods = std::round((y - m.node(*i)) / m.length());
      return nodes_[static_cast<Eigen::Index>(*i)] + periods * m.length();
    }
    return phi_.inverse_at(y);
  }
  const Diffeo& diffeo() const { return phi_; }

 private:
  Diffeo phi_;
  Eigen::VectorXd nodes_;
};

// RN(phi, x) from a known preimage z.
double rn_from_preimage(const GridManifold& m, const Diffeo& phi, double x, double z) {
  return m.conformal(z) / (m.conformal(x) * phi.jacobian(z));
}

bool is_node_span(const GridManifold& m, std::span<const double> ys) {
  return ys.size() == m.size() && ys.data() == m.nodes().data();
}

// Arclengths of the last query set. Rows built from mapped nodes repeat the same ys for every x.
class ArclengthMemo {
 public:
  void lookup(const GridManifold& m, std::span<const double> ys, std::vector<double>& out) {
    out.resize(ys.size());
    std::lock_guard<std::mutex> lock(mu_);
    if (!std::equal(ys.begin(), ys.end(), key_.begin(), key_.end())) {
      key_.assign(ys.begin(), ys.end());
      val_.resize(ys.size());
      for (std::size_t k = 0; k < ys.size(); ++k) val_[k] = m.arclength(m.reduce(ys[k]));
    }
    std::copy(val_.begin(), val_.end(), out.begin());
  }

 private:
  std::mutex mu_;
  std::vector<double> key_, val_;
};

}  // namespace

GroupoidFamily::GroupoidFamily(FiberSymbol symbol, std::vector<double> h_grid, std::vector<L2Operator> kernels,
                               QuantizationTag tag)
    : symbol_(std::move(symbol)), h_grid_(std::move(h_grid)), kernels_(std::move(kernels)), tag_(tag) {
  if (h_grid_.size() != kernels_.size()) throw InvalidParameter("one kernel per h value is required");
}

const L2Operator& GroupoidFamily::kernel(double h) const {
  for (std::size_t k = 0; k < h_grid_.size(); ++k)
    if (std::abs(h_grid_[k] - h) <= 1e-12 * h_grid_[k]) return kernels_[k];
  throw InvalidParameter("h = " + format_number(h) + " is not on the family's grid");
}

std::vector<double> dyadic_grid(int kmin, int kmax) {
  if (kmin >= kmax) throw InvalidParameter("h-grid needs k_min < k_max");
  std::vector<double> h;
  for (int k = kmin; k <= kmax; ++k) h.push_back(std::ldexp(1.0, -k));
  return h;
}

void check_support_rule(const GridManifold& m, double velocity_radius, double h_max) {
  const double reach = h_max * velocity_radius * m.max_conformal();
  const double bound = 0.45 * m.injectivity_radius();
  if (!(reach < bound))
    throw SupportOverflowError("support radius h V sup c = " + format_number(reach) + " exceeds " +
                               format_number(bound));
}

L2Operator canonical_kernel(const FiberSymbol& b, double h) {
  require_positive_h(h);
  check_support_rule(*b.manifold(), b.grid().half_width, h);
  auto sym = std::make_shared<const FiberSymbol>(b);
  auto memo = std::make_shared<ArclengthMemo>();
  Rows rows = [sym, memo, h](double x, std::span<const double> ys, std::span<cplx> out) {
    const auto& m = *sym->manifold();
    const double xr = m.reduce(x);
    const double sx = m.arclength(xr);
    const double scale = -1.0 / (m.conformal(xr) * h);
    const double total = m.total_length();
    std::vector<double> vs(ys.size());
    if (is_node_span(m, ys)) {
      for (std::size_t k = 0; k < ys.size(); ++k) vs[k] = m.arclength(ys[k]);
    } else {
      memo->lookup(m, ys, vs);
    }
    for (std::size_t k = 0; k < ys.size(); ++k) {
      const double d = std::remainder(vs[k] - sx, total);
      vs[k] = std::abs(d) < 0.5 * total * (1.0 - 1e-12) ? d * scale : HUGE_VAL;
    }
    sym->evaluate(xr, vs, out);
    for (auto& v : out) v /= h;
  };
  return L2Operator(b.manifold(), std::move(rows));
}

GroupoidFamily groupoid_quantize(const FiberSymbol& b, const std::vector<double>& h_grid) {
  if (h_grid.empty()) throw InvalidParameter("empty h-grid");
  check_support_rule(*b.manifold(), b.grid().half_width, *std::max_element(h_grid.begin(), h_grid.end()));
  std::vector<L2Operator> kernels;
  kernels.reserve(h_grid.size());
  for (double h : h_grid) kernels.push_back(canonical_kernel(b, h));
  return GroupoidFamily(b, h_grid, std::move(kernels), QuantizationTag::canonical);
}

GroupoidFamily perturb(const GroupoidFamily& fam, const PairFunction& r) {
  std::vector<L2Operator> kernels;
  for (std::size_t k = 0; k < fam.h_grid().size(); ++k) {
    const double h = fam.h_grid()[k];
    Rows inner = rows_of(fam.kernels()[k]);
    kernels.emplace_back(fam.manifold(), [inner, r, h](double x, std::span<const double> ys, std::span<cplx> out) {
      inner(x, ys, out);
      for (std::size_t j = 0; j < ys.size(); ++j) out[j] *= 1.0 + h * r(x, ys[j]);
    });
  }
  return GroupoidFamily(fam.symbol(), fam.h_grid(), std::move(kernels), QuantizationTag::perturbed);
}

FiberSymbol dequantize(const L2Operator& t, double h, const FiberGrid& grid) {
  require_positive_h(h);
  const auto& m = *t.manifold();
  if (!(h * grid.half_width * m.max_conformal() < m.injectivity_radius()))
    throw CutLocusError("velocity grid leaves the exponential chart at h = " + format_number(h));
  Eigen::MatrixXcd b(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(grid.size));
  std::vector<double> ys(grid.size);
  std::vector<cplx> out(grid.size);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < grid.size; ++j) ys[j] = riem_exp(m, m.node(i), -h * grid.node(j));
    t.row(m.node(i), ys, out);
    for (std::size_t j = 0; j < grid.size; ++j)
      b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h * out[j];
  }
  return FiberSymbol::unchecked(t.manifold(), grid, std::move(b));
}

double fit_loglog_slope(const std::vector<double>& h, const std::vector<double>& errors) {
  if (h.size() != errors.size() || h.size() < 2) throw InvalidParameter("slope fit needs at least two aligned points");
  std::vector<std::size_t> order(h.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return h[a] < h[b]; });
  const std::size_t count = std::max<std::size_t>(2, (h.size() + 1) / 2);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double x = std::log(h[order[k]]);
    const double y = std::log(std::max(errors[order[k]], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(count);
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

cplx richardson(double h1, cplx v1, double h2, cplx v2) { return (h1 * v2 - h2 * v1) / (h1 - h2); }

ConvergenceReport make_report(std::vector<double> h, std::vector<cplx> values, cplx target) {
  ConvergenceReport r;
  r.h_values = std::move(h);
  r.values = std::move(values);
  r.target = target;
  for (const auto& v : r.values) r.errors.push_back(std::abs(v - target));
  r.fitted_slope = fit_loglog_slope(r.h_values, r.errors);
  std::vector<std::size_t> order(r.h_values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r.h_values[a] < r.h_values[b]; });
  r.extrapolated_limit = richardson(r.h_values[order[0]], r.values[order[0]], r.h_values[order[1]], r.values[order[1]]);
  return r;
}

ConvergenceReport make_error_report(std::vector<double> h, std::vector<double> errors) {
  std::vector<cplx> values(errors.begin(), errors.end());
  return make_report(std::move(h), std::move(values), cplx{});
}

ConvergenceReport trace_functional(const GroupoidFamily& fam) {
  const auto& b = fam.symbol();
  const auto& m = *fam.manifold();
  const auto zero = static_cast<Eigen::Index>(b.grid().size / 2);
  cplx target{};
  for (std::size_t i = 0; i < m.size(); ++i)
    target += b.values()(static_cast<Eigen::Index>(i), zero) * m.weights()[static_cast<Eigen::Index>(i)];
  std::vector<cplx> values;
  for (std::size_t k = 0; k < fam.h_grid().size(); ++k)
    values.push_back(fam.h_grid()[k] * operator_trace(fam.kernels()[k]));
  return make_report(fam.h_grid(), std::move(values), target);
}

cplx character_value(const L2Operator& t, double h, const AlgebraElement& z) {
  require_positive_h(h);
  const auto& m = *t.manifold();
  const GroupElement g = exp_gm(h * z);
  const Preimage pre(g.diffeo);
  cplx acc{};
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double x = m.node(i);
    const double zx = pre(x);
    const double s = std::sqrt(rn_from_preimage(m, g.diffeo, x, zx));
    const cplx phase = std::polar(1.0, -kTwoPi * g.func[i] / h);
    acc += phase * s * t(zx, x) * m.weights()[static_cast<Eigen::Index>(i)];
  }
  return h * acc;
}

cplx character_target(const FiberSymbol& b, const AlgebraElement& z) {
  const auto pg = MomentumGrid::reciprocal(b.grid());
  const auto a = fiber_fourier_inv(b, pg);
  const auto& m = *b.manifold();
  cplx acc{};
  for (std::size_t i = 0; i < m.size(); ++i) {
    cplx row{};
    for (std::size_t k = 0; k < pg.size; ++k)
      row += a.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) *
             std::polar(1.0, -kTwoPi * (pg.node(k) * z.field[i] + z.func[i]));
    acc += row * a.fiber_weight(i) * m.weights()[static_cast<Eigen::Index>(i)];
  }
  return acc;
}

ConvergenceReport character_pairing(const GroupoidFamily& fam, const AlgebraElement& z) {
  std::vector<cplx> values;
  for (std::size_t k = 0; k < fam.h_grid().size(); ++k)
    values.push_back(character_value(fam.kernels()[k], fam.h_grid()[k], z));
  return make_report(fam.h_grid(), std::move(values), character_target(fam.symbol(), z));
}

FiberSymbol centralize_symbol(const FiberSymbol& b, const AlgebraElement& z) {
  require_same_manifold(b.manifold(), z.manifold());
  const auto& m = *b.manifold();
  const auto& grid = b.grid();
  Eigen::MatrixXcd out(b.values().rows(), b.values().cols());
  std::vector<double> vs(grid.size);
  std::vector<cplx> row(grid.size);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < grid.size; ++j) vs[j] = grid.node(j) - z.field[i];
    b.evaluate(m.node(i), vs, row);
    const cplx phase = std::polar(1.0, -kTwoPi * z.func[i]);
    for (std::size_t j = 0; j < grid.size; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = phase * row[j];
  }
  return FiberSymbol(b.manifold(), grid, std::move(out));
}

L2Operator centralize_kernel(Side side, double h, const GroupElement& g, const L2Operator& t) {
  require_positive_h(h);
  require_same_manifold(g.manifold(), t.manifold());
  Rows inner = rows_of(t);
  auto fh = std::make_shared<const ScalarField>(g.func);
  if (side == Side::left) {
    auto pre = std::make_shared<const Preimage>(g.diffeo);
    return L2Operator(t.manifold(), [inner, fh, pre, h](double x, std::span<const double> ys, std::span<cplx> out) {
      const auto& m = *fh->manifold();
      const double z = (*pre)(x);
      const double s = std::sqrt(rn_from_preimage(m, pre->diffeo(), x, z));
      inner(z, ys, out);
      const cplx scale = s * std::polar(1.0, -kTwoPi * (*fh)(x) / h);
      for (auto& v : out) v *= scale;
    });
  }
  auto phi = std::make_shared<const Diffeo>(g.diffeo);
  auto column = [fh, phi, h](double y, double w) {
    const double rn = rn_from_preimage(*fh->manifold(), *phi, w, y);
    return std::polar(1.0, -kTwoPi * (*fh)(w) / h) / std::sqrt(rn);
  };
  const auto& m0 = *t.manifold();
  auto node_w = std::make_shared<std::vector<double>>(m0.size());
  auto node_c = std::make_shared<std::vector<cplx>>(m0.size());
  for (std::size_t k = 0; k < m0.size(); ++k) {
    (*node_w)[k] = (*phi)(m0.node(k));
    (*node_c)[k] = column(m0.node(k), (*node_w)[k]);
  }
  return L2Operator(t.manifold(), [inner, phi, column, node_w, node_c](double x, std::span<const double> ys,
                                                                      std::span<cplx> out) {
    if (is_node_span(*phi->manifold(), ys)) {
      inner(x, *node_w, out);
      for (std::size_t k = 0; k < ys.size(); ++k) out[k] *= (*node_c)[k];
      return;
    }
    std::vector<double> ws(ys.size());
    for (std::size_t k = 0; k < ys.size(); ++k) ws[k] = (*phi)(ys[k]);
    inner(x, ws, out);
    for (std::size_t k = 0; k < ys.size(); ++k) out[k] *= column(ys[k], ws[k]);
  });
}

GroupoidFamily centralizer_apply(Side side, const AlgebraElement& z, const GroupoidFamily& fam) {
  std::vector<L2Operator> kernels;
  for (std::size_t k = 0; k < fam.h_grid().size(); ++k) {
    const double h = fam.h_grid()[k];
    kernels.push_back(centralize_kernel(side, h, exp_gm(h * z), fam.kernels()[k]));
  }
  return GroupoidFamily(centralize_symbol(fam.symbol(), z), fam.h_grid(), std::move(kernels),
                        QuantizationTag::perturbed);
}

L2Operator covariant_conjugate(const GroupElement& a, const L2Operator& t, double h) {
  require_positive_h(h);
  require_same_manifold(a.manifold(), t.manifold());
  Rows inner = rows_of(t);
  auto pre = std::make_shared<const Preimage>(a.diffeo);
  auto f = std::make_shared<const ScalarField>(a.func);
  // Per-point factor sqrt(RN) e^{2 pi i f / h}; the row factor is the conjugate phase.
  auto point = [pre, f, h](double y, double z) {
    const double r = rn_from_preimage(*f->manifold(), pre->diffeo(), y, z);
    return std::sqrt(r) * std::polar(1.0, kTwoPi * (*f)(y) / h);
  };
  const auto& m0 = *t.manifold();
  auto node_z = std::make_shared<std::vector<double>>(m0.size());
  auto node_c = std::make_shared<std::vector<cplx>>(m0.size());
  for (std::size_t k = 0; k < m0.size(); ++k) {
    (*node_z)[k] = (*pre)(m0.node(k));
    (*node_c)[k] = point(m0.node(k), (*node_z)[k]);
  }
  return L2Operator(t.manifold(), [inner, pre, f, h, point, node_z, node_c](double x, std::span<const double> ys,
                                                                           std::span<cplx> out) {
    const auto& m = *f->manifold();
    const double zx = (*pre)(x);
    const double rx = rn_from_preimage(m, pre->diffeo(), x, zx);
    const cplx row_factor = std::sqrt(rx) * std::polar(1.0, -kTwoPi * (*f)(x) / h);
    if (is_node_span(m, ys)) {
      inner(zx, *node_z, out);
      for (std::size_t k = 0; k < ys.size(); ++k) out[k] *= row_factor * (*node_c)[k];
      return;
    }
    std::vector<double> zs(ys.size());
    for (std::size_t k = 0; k < ys.size(); ++k) zs[k] = (*pre)(ys[k]);
    inner(zx, zs, out);
    for (std::size_t k = 0; k < ys.size(); ++k) out[k] *= row_factor * point(ys[k], zs[k]);
  });
}

L2Operator covariant_conjugate(const GroupElement& a, const GroupoidFamily& fam, double h) {
  const double stretch = a.diffeo.displacement().derivative().samples().maxCoeff() + 1.0;
  check_support_rule(*fam.manifold(), fam.symbol().grid().half_width * stretch, h);
  return covariant_conjugate(a, fam.kernel(h), h);
}

PhaseSymbol symbol_transport(const GroupElement& a, const PhaseSymbol& sym) {
  require_same_manifold(a.manifold(), sym.manifold());
  const auto& m = *sym.manifold();
  const auto& grid = sym.grid();
  const Eigen::VectorXd z = a.diffeo.inverse().node_images();
  const auto df = a.func.derivative();
  Eigen::MatrixXcd out(sym.values().rows(), sym.values().cols());
  std::vector<double> ps(grid.size);
  std::vector<cplx> row(grid.size);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double zi = z[static_cast<Eigen::Index>(i)];
    const double stretch = a.diffeo.jacobian(zi);
    for (std::size_t k = 0; k < grid.size; ++k) ps[k] = (grid.node(k) + df[i]) * stretch;
    sym.evaluate(zi, ps, row);
    for (std::size_t k = 0; k < grid.size; ++k) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
  }
  return PhaseSymbol(sym.manifold(), grid, std::move(out));
}

}  // namespace orbitlab
