#ifndef BG_TESTS_ORACLES_HPP
#define BG_TESTS_ORACLES_HPP

// Reference values computed without the library: closed forms, polar
// Gaussian expectations and dense Riemann sums.

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// E|g| for g ~ N(0, 1).
inline double abs_gaussian_mean() { return std::sqrt(2.0 / pi); }

/// E(|g1| + |g2|)^2 = 2 + 4/pi: E||g1 e1 + g2 e2||^2 in l^1_2.
inline double l1_two_unit_vectors() { return 2.0 + 4.0 / pi; }

/// E max(|g1|, |g2|)^2 = 1 + 2/pi: E||g1 e1 + g2 e2||^2 in l^inf_2.
inline double linf_two_unit_vectors() { return 1.0 + 2.0 / pi; }

/// Midpoint Riemann sum of fn over [a, b] with m cells.
inline double riemann(const std::function<double(double)>& fn, double a, double b, long m = 1L << 20) {
  const double h = (b - a) / static_cast<double>(m);
  double s = 0.0;
  for (long i = 0; i < m; ++i) s += fn(a + (static_cast<double>(i) + 0.5) * h);
  return s * h;
}

/// E F(g1, g2) for independent standard Gaussians and F positively
/// homogeneous of degree 2: E r^2 = 2 times the mean of F on the unit circle.
/// Cell edges fall on multiples of pi / 4, where l^1 and l^inf norms kink.
inline double homogeneous_gaussian_2d(const std::function<double(double, double)>& fn) {
  return riemann([&](double t) { return fn(std::cos(t), std::sin(t)); }, 0.0, 2.0 * pi) / pi;
}

/// Integral part of the difference Besov norm of 1_{(0,1/2]} x with ||x|| = 1,
/// s = 1/p - 1/2, q = 1: rho_p(t) = (2t)^{1/p} for t <= 1/2 and 1 beyond, so
/// the integral is 2^{1/p} sqrt 2 + (2^s - 1) / s.
inline double single_step_besov_integral(double p) {
  const double s = 1.0 / p - 0.5;
  return std::pow(2.0, 1.0 / p) * std::sqrt(2.0) + (std::pow(2.0, s) - 1.0) / s;
}

/// Fourier transform of exp(-x^2 / 2) with the exp(-i xi x) convention.
inline double gaussian_fourier(double xi) { return std::sqrt(2.0 * pi) * std::exp(-0.5 * xi * xi); }

}  // namespace oracle

#endif  // BG_TESTS_ORACLES_HPP
