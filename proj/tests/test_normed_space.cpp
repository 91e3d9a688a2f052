#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

#include "bg/interval_set.hpp"
#include "bg/normed_space.hpp"
#include "bg/quadrature.hpp"

using namespace bg;

TEST_CASE("exponent states") {
  CHECK(Exponent::infinity().is_infinite());
  CHECK(Exponent::infinity().reciprocal() == 0.0);
  CHECK(Exponent::finite(4.0).reciprocal() == 0.25);
  CHECK(Exponent::from_double(INFINITY) == Exponent::infinity());
  CHECK_THROWS_AS(Exponent::finite(0.5), std::invalid_argument);
  CHECK_THROWS_AS(Exponent::infinity().value(), std::logic_error);
}

TEST_CASE("lp norms") {
  const Vector x{3.0, -4.0};
  CHECK(NormedSpace::lp(1.0, 2).norm(x) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(NormedSpace::hilbert(2).norm(x) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(NormedSpace::linf(2).norm(x) == 4.0);
  CHECK(NormedSpace::lp(3.0, 2).norm(x) == doctest::Approx(std::cbrt(27.0 + 64.0)).epsilon(1e-14));
  CHECK_THROWS_AS(NormedSpace::hilbert(3).norm(x), std::invalid_argument);
}

TEST_CASE("sequence norm avoids overflow") {
  const std::vector<double> big{1e200, 1e200};
  CHECK(sequence_norm(big, Exponent::finite(2.0)) == doctest::Approx(std::sqrt(2.0) * 1e200).epsilon(1e-14));
  const std::vector<double> zeros{0.0, 0.0};
  CHECK(sequence_norm(zeros, Exponent::finite(1.5)) == 0.0);
}

TEST_CASE("gaussian absolute moments") {
  CHECK(gaussian_p_moment(1.0, 1.0) == doctest::Approx(oracle::abs_gaussian_mean()).epsilon(1e-14));
  CHECK(gaussian_p_moment(1.0, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gaussian_p_moment(1.0, 4.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(gaussian_p_moment(2.0, 3.0) == doctest::Approx(8.0 * 2.0 * oracle::abs_gaussian_mean()).epsilon(1e-14));
}

TEST_CASE("gauss legendre integrates polynomials exactly") {
  for (std::size_t n : {4u, 16u, 32u}) {
    const double v = integrate_gl([](double t) { return std::pow(t, 7.0) - 3.0 * t * t; }, -1.0, 2.0, n);
    CHECK(v == doctest::Approx((std::pow(2.0, 8.0) - 1.0) / 8.0 - (8.0 + 1.0)).epsilon(1e-13));
  }
}

TEST_CASE("interval sets") {
  const IntervalSet a({{0.0, 0.25}, {0.5, 0.75}});
  const IntervalSet b = IntervalSet::single(0.2, 0.6);
  CHECK(a.measure() == doctest::Approx(0.5));
  CHECK(a.intersect(b).measure() == doctest::Approx(0.05 + 0.1));
  CHECK(a.unite(b).measure() == doctest::Approx(0.75));
  CHECK(a.unite(IntervalSet::single(0.25, 0.5)).intervals().size() == 1);
  CHECK(a.contains_interior(0.1));
  CHECK_FALSE(a.contains_interior(0.4));
}
