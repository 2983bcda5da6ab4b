#include "orbitlab/spectral.hpp"

#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "orbitlab/errors.hpp"

namespace orbitlab::spectral {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<cplx> forward(std::span<const cplx> samples) {
  const std::size_t n = samples.size();
  if (n < 2 || n % 2 != 0) throw InvalidParameter("trigonometric series needs an even number of samples");
  std::vector<cplx> in(samples.begin(), samples.end());
  std::vector<cplx> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  for (auto& c : out) c /= static_cast<double>(n);
  return out;
}

// Signed frequency of coefficient index k (Nyquist reported as +n/2).
long signed_frequency(std::size_t k, std::size_t n) {
  return k <= n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

}  // namespace

TrigSeries::TrigSeries(std::span<const cplx> samples, double period, double origin)
    : coeffs_(forward(samples)), period_(period), origin_(origin) {}

TrigSeries::TrigSeries(std::span<const double> samples, double period, double origin)
    : period_(period), origin_(origin) {
  std::vector<cplx> c(samples.begin(), samples.end());
  coeffs_ = forward(c);
}

cplx TrigSeries::value(double x) const {
  return series_value(coeffs_, kTwoPi * (x - origin_) / period_);
}

double TrigSeries::real_value(double x) const {
  const std::size_t n = coeffs_.size();
  const std::size_t half = n / 2;
  const double theta = kTwoPi * (x - origin_) / period_;
  const cplx step = std::polar(1.0, theta);
  cplx z = step;
  double acc = coeffs_[0].real();
  for (std::size_t k = 1; k < half; ++k) {
    const cplx& a = coeffs_[k];
    const cplx& b = coeffs_[n - k];
    acc += (a.real() + b.real()) * z.real() + (b.imag() - a.imag()) * z.imag();
    z *= step;
  }
  acc += coeffs_[half].real() * std::cos(static_cast<double>(half) * theta);
  return acc;
}

void TrigSeries::values(std::span<const double> xs, std::span<cplx> out) const {
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = value(xs[i]);
}

TrigSeries TrigSeries::derivative() const {
  const std::size_t n = coeffs_.size();
  std::vector<cplx> d(n);
  const double scale = kTwoPi / period_;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == n / 2) continue;
    d[k] = coeffs_[k] * cplx(0.0, scale * static_cast<double>(signed_frequency(k, n)));
  }
  return TrigSeries(std::move(d), period_, origin_);
}

cplx TrigSeries::integral(double x) const {
  const std::size_t n = coeffs_.size();
  const std::size_t half = n / 2;
  const double t = x - origin_;
  const double scale = kTwoPi / period_;
  const cplx step = std::polar(1.0, scale * t);
  cplx e = step;
  cplx acc = coeffs_[0] * t;
  for (std::size_t k = 1; k < half; ++k) {
    const double w = scale * static_cast<double>(k);
    // (e - 1) / (i w) and its conjugate partner for the -k mode
    acc += (coeffs_[k] * (e - 1.0) - coeffs_[n - k] * (std::conj(e) - 1.0)) / cplx(0.0, w);
    e *= step;
  }
  const double wn = scale * static_cast<double>(half);
  acc += coeffs_[half] * std::sin(wn * t) / wn;
  return acc;
}

std::vector<cplx> TrigSeries::samples() const {
  std::vector<cplx> out;
  Eigen::FFT<double> fft;
  std::vector<cplx> in(coeffs_);
  fft.inv(out, in);
  for (auto& v : out) v *= static_cast<double>(coeffs_.size());
  return out;
}

cplx series_value(std::span<const cplx> coeffs, double theta) {
  const std::size_t n = coeffs.size();
  const std::size_t half = n / 2;
  const cplx step = std::polar(1.0, theta);
  cplx z = step;
  cplx acc = coeffs[0];
  for (std::size_t k = 1; k < half; ++k) {
    acc += coeffs[k] * z + coeffs[n - k] * std::conj(z);
    z *= step;
  }
  acc += coeffs[half] * std::cos(static_cast<double>(half) * theta);
  return acc;
}

void cardinal_weights(std::size_t n, double period, double origin, double x, std::span<double> out) {
  const double h = kTwoPi / static_cast<double>(n);
  const double theta = kTwoPi * (x - origin) / period;
  const double nd = static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = std::remainder(theta - h * static_cast<double>(j), kTwoPi);
    const double s = std::sin(0.5 * t);
    out[j] = std::abs(s) < 1e-15 ? 1.0 : std::sin(0.5 * nd * t) * std::cos(0.5 * t) / (nd * s);
  }
}

Eigen::MatrixXd derivative_matrix(std::size_t n, double period) {
  Eigen::MatrixXd d(n, n);
  std::vector<double> unit(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    unit[j] = 1.0;
    const auto col = TrigSeries(std::span<const double>(unit), period).derivative().samples();
    for (std::size_t i = 0; i < n; ++i) d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i].real();
    unit[j] = 0.0;
  }
  return d;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace orbitlab::spectral
