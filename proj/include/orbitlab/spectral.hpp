#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace orbitlab::spectral {

using cplx = std::complex<double>;

// Trigonometric interpolant of an even number of equispaced samples
// x_j = origin + j * period / n. The Nyquist mode is split symmetrically, so
// real samples give a real interpolant.
class TrigSeries {
 public:
  TrigSeries() = default;
  TrigSeries(std::span<const cplx> samples, double period, double origin = 0.0);
  TrigSeries(std::span<const double> samples, double period, double origin = 0.0);

  std::size_t size() const { return coeffs_.size(); }
  double period() const { return period_; }
  double origin() const { return origin_; }
  const std::vector<cplx>& coefficients() const { return coeffs_; }
  cplx mean() const { return coeffs_.empty() ? cplx{} : coeffs_[0]; }

  cplx value(double x) const;
  // Real part of value(x), at about half the cost.
  double real_value(double x) const;
  void values(std::span<const double> xs, std::span<cplx> out) const;

  // Spectral derivative; the Nyquist mode is dropped.
  TrigSeries derivative() const;

  // Integral of the interpolant from origin to x (mean * (x - origin) plus
  // the periodic antiderivative).
  cplx integral(double x) const;

  // Values of the interpolant at the nodes.
  std::vector<cplx> samples() const;

 private:
  TrigSeries(std::vector<cplx> coeffs, double period, double origin)
      : coeffs_(std::move(coeffs)), period_(period), origin_(origin) {}

  std::vector<cplx> coeffs_;  // DFT divided by n, standard ordering
  double period_ = 1.0;
  double origin_ = 0.0;
};

// Value of the series with DFT coefficients `coeffs` (standard ordering,
// divided by n) at phase theta = 2 pi (x - origin) / period.
cplx series_value(std::span<const cplx> coeffs, double theta);

// Cardinal functions l_j(x) of the even-n trigonometric interpolant, so that
// interpolant(x) = sum_j l_j(x) f_j.
void cardinal_weights(std::size_t n, double period, double origin, double x, std::span<double> out);

// n x n matrix of the spectral derivative acting on nodal values.
Eigen::MatrixXd derivative_matrix(std::size_t n, double period);

bool is_power_of_two(std::size_t n);

}  // namespace orbitlab::spectral
