#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "bg/monte_carlo.hpp"
#include "bg/random.hpp"

using namespace bg;

TEST_CASE("counter rng is a pure function of key and counter") {
  const CounterRng a(7), b(7), c(8);
  CHECK(a.bits(12) == b.bits(12));
  CHECK(a.bits(12) != c.bits(12));
  const GaussianStream g(3);
  std::vector<double> out(9);
  g.fill(out, 5);
  for (std::size_t j = 0; j < out.size(); ++j) CHECK(out[j] == g(5 + j));
}

TEST_CASE("gaussian stream moments") {
  const GaussianStream g(11);
  constexpr std::size_t n = 200000;
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g(i);
    m1 += x;
    m2 += x * x;
  }
  CHECK(std::abs(m1 / n) < 5.0 / std::sqrt(double(n)));
  CHECK(std::abs(m2 / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
}

TEST_CASE("batch means") {
  std::vector<double> draws(640, 2.0);
  const MCEstimate e = batch_means(draws, 0);
  CHECK(e.mean == 2.0);
  CHECK(e.std_error == 0.0);
  std::vector<double> few(10, 1.0);
  CHECK(std::isinf(batch_means(few, 0).std_error));
}

TEST_CASE("exact paths") {
  const std::vector<Vector> v{{1.0, 2.0}, {0.0, 3.0}};
  const MCEstimate h = gaussian_second_moment(NormedSpace::hilbert(2), v, {});
  CHECK(h.exact);
  CHECK(h.mean == doctest::Approx(14.0).epsilon(1e-15));
  const std::vector<Vector> one{{1.0, -2.0}};
  const MCEstimate s = gaussian_second_moment(NormedSpace::lp(1.0, 2), one, {});
  CHECK(s.exact);
  CHECK(s.mean == doctest::Approx(9.0).epsilon(1e-15));
  CHECK(gaussian_second_moment(NormedSpace::lp(1.0, 2), std::vector<Vector>{}, {}).mean == 0.0);
}

TEST_CASE("closed forms against polar quadrature") {
  const double l1 = oracle::homogeneous_gaussian_2d([](double a, double b) { return (std::abs(a) + std::abs(b)) * (std::abs(a) + std::abs(b)); });
  const double linf = oracle::homogeneous_gaussian_2d([](double a, double b) { return std::max(a * a, b * b); });
  CHECK(l1 == doctest::Approx(oracle::l1_two_unit_vectors()).epsilon(1e-10));
  CHECK(linf == doctest::Approx(oracle::linf_two_unit_vectors()).epsilon(1e-10));
}

TEST_CASE("sampler agrees with the oracles") {
  const std::vector<Vector> e{{1.0, 0.0}, {0.0, 1.0}};
  const MCConfig cfg{40000, 5, false};
  const MCEstimate l1 = gaussian_second_moment(NormedSpace::lp(1.0, 2), e, cfg);
  const MCEstimate linf = gaussian_second_moment(NormedSpace::linf(2), e, cfg);
  CHECK(std::abs(l1.mean - oracle::l1_two_unit_vectors()) <= 4.0 * l1.std_error);
  CHECK(std::abs(linf.mean - oracle::linf_two_unit_vectors()) <= 4.0 * linf.std_error);
  // Forced sampling in a Hilbert space against sum ||x||^2 = 2.
  const MCEstimate h = gaussian_second_moment(NormedSpace::hilbert(2), e, MCConfig{40000, 5, true});
  CHECK_FALSE(h.exact);
  CHECK(std::abs(h.mean - 2.0) <= 4.0 * h.std_error);
}

TEST_CASE("same seed, same estimate") {
  const std::vector<Vector> e{{1.0, 0.5}, {0.2, 1.0}, {0.0, -1.0}};
  const MCConfig cfg{5000, 99, false};
  const MCEstimate a = gaussian_second_moment(NormedSpace::lp(1.5, 2), e, cfg);
  const MCEstimate b = gaussian_second_moment(NormedSpace::lp(1.5, 2), e, cfg);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("delta method") {
  const MCEstimate m{4.0, 0.4, 1000, 1, false};
  const MCEstimate r = sqrt_estimate(m);
  CHECK(r.mean == 2.0);
  CHECK(r.std_error == doctest::Approx(0.1));
}

TEST_CASE("rademacher enumeration") {
  const std::vector<Vector> e{{1.0, 0.0}, {0.0, 1.0}};
  CHECK(rademacher_second_moment(NormedSpace::linf(2), e) == 1.0);
  CHECK(rademacher_second_moment(NormedSpace::lp(1.0, 2), e) == 4.0);
  CHECK(rademacher_second_moment(NormedSpace::hilbert(2), e) == doctest::Approx(2.0));
}
