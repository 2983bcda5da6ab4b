#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "orbitlab/errors.hpp"
#include "orbitlab/spectral.hpp"

using namespace orbitlab;
using spectral::TrigSeries;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> samples_of(std::size_t n, double period, double origin, double (*fn)(double)) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = fn(origin + period * static_cast<double>(j) / static_cast<double>(n));
  return v;
}
}  // namespace

TEST(TrigSeries, ReproducesBandLimitedFunctionOffGrid) {
  auto f = [](double x) { return std::sin(3.0 * x) + 0.25 * std::cos(7.0 * x) + 0.5; };
  const auto s = samples_of(32, 2.0 * kPi, 0.0, f);
  TrigSeries t(std::span<const double>(s), 2.0 * kPi);
  for (double x : {0.1, 1.3, 2.9, 5.77, -0.4}) EXPECT_NEAR(t.value(x).real(), f(x), 1e-13);
}

TEST(TrigSeries, NyquistModeStaysReal) {
  std::vector<double> s(8);
  for (std::size_t j = 0; j < 8; ++j) s[j] = (j % 2 == 0) ? 1.0 : -1.0;
  TrigSeries t(std::span<const double>(s), 1.0);
  EXPECT_NEAR(t.value(0.0625).imag(), 0.0, 1e-15);
  EXPECT_NEAR(t.value(0.0625).real(), std::cos(4.0 * 2.0 * kPi * 0.0625), 1e-14);
}

TEST(TrigSeries, DerivativeAndIntegral) {
  const auto s = samples_of(64, 2.0 * kPi, 0.0, [](double x) { return std::sin(x); });
  TrigSeries t(std::span<const double>(s), 2.0 * kPi);
  EXPECT_NEAR(t.derivative().value(0.7).real(), std::cos(0.7), 1e-13);
  EXPECT_NEAR(t.integral(1.2).real(), 1.0 - std::cos(1.2), 1e-13);
}

TEST(TrigSeries, ShiftedOriginAndPeriod) {
  auto g = [](double v) { return std::exp(-v * v); };
  const double period = 16.0;
  const double origin = -8.0;
  const auto s = samples_of(128, period, origin, g);
  TrigSeries t(std::span<const double>(s), period, origin);
  EXPECT_NEAR(t.value(0.3).real(), g(0.3), 1e-12);
}

TEST(TrigSeries, RejectsOddSizes) {
  std::vector<double> s(7, 1.0);
  EXPECT_THROW(TrigSeries(std::span<const double>(s), 1.0), InvalidParameter);
}

TEST(Cardinal, WeightsMatchSeries) {
  const auto s = samples_of(16, 2.0 * kPi, 0.0, [](double x) { return std::cos(2.0 * x) + std::sin(5.0 * x); });
  TrigSeries t(std::span<const double>(s), 2.0 * kPi);
  std::vector<double> w(16);
  spectral::cardinal_weights(16, 2.0 * kPi, 0.0, 2.2, w);
  double acc = 0.0;
  for (std::size_t j = 0; j < 16; ++j) acc += w[j] * s[j];
  EXPECT_NEAR(acc, t.value(2.2).real(), 1e-13);
  spectral::cardinal_weights(16, 2.0 * kPi, 0.0, 2.0 * kPi * 3.0 / 16.0, w);
  EXPECT_NEAR(w[3], 1.0, 1e-14);
  EXPECT_NEAR(w[4], 0.0, 1e-14);
}

TEST(DerivativeMatrix, ExactOnResolvedModes) {
  const auto d = spectral::derivative_matrix(16, 2.0 * kPi);
  const auto s = samples_of(16, 2.0 * kPi, 0.0, [](double x) { return std::sin(3.0 * x); });
  Eigen::Map<const Eigen::VectorXd> v(s.data(), 16);
  const Eigen::VectorXd dv = d * v;
  for (int j = 0; j < 16; ++j) EXPECT_NEAR(dv[j], 3.0 * std::cos(3.0 * 2.0 * kPi * j / 16.0), 1e-12);
}
