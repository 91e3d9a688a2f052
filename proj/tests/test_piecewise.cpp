#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "bg/piecewise.hpp"

using namespace bg;

namespace {

// Dense Riemann reference for int ||f(t)||^p over [a, b].
double dense_power(const PiecewiseFunction& f, double p, double a, double b) {
  return oracle::riemann([&](double t) { return std::pow(f.space().norm(f.value(t)), p); }, a, b);
}

}  // namespace

TEST_CASE("step values use the left-segment convention") {
  const auto f = PiecewiseFunction::step(NormedSpace::hilbert(1), {0.0, 0.5, 1.0}, {{1.0}, {2.0}});
  CHECK(f.value(0.5)[0] == 1.0);
  CHECK(f.value(0.75)[0] == 2.0);
  CHECK(f.value(1.5)[0] == 0.0);
  CHECK(f.right_limit(0.5)[0] == 2.0);
  CHECK(f.interpolation() == Interpolation::step);
  const auto j = jumps(f);
  REQUIRE(j.size() == 3);
  CHECK(j[0][0] == 1.0);
  CHECK(j[1][0] == 1.0);
  CHECK(j[2][0] == -2.0);
}

TEST_CASE("lp norm of a step function") {
  const auto f = PiecewiseFunction::step(NormedSpace::lp(1.0, 2), {0.0, 0.25, 1.0}, {{1.0, 1.0}, {0.0, -3.0}});
  const double p = 1.5;
  CHECK(lp_norm(f, Exponent::finite(p)) ==
        doctest::Approx(std::pow(0.25 * std::pow(2.0, p) + 0.75 * std::pow(3.0, p), 1.0 / p)).epsilon(1e-14));
  CHECK(lp_norm(f, Exponent::infinity()) == 3.0);
}

TEST_CASE("lp norm of sign-changing linear pieces against a Riemann sum") {
  const auto f = PiecewiseFunction::linear(NormedSpace::lp(1.5, 2), {0.0, 0.3, 1.0},
                                           {{1.0, -1.0}, {-2.0, 0.5}, {0.25, 1.0}});
  for (double p : {1.0, 4.0 / 3.0, 2.5}) {
    CHECK(lp_norm_power(f, p) == doctest::Approx(dense_power(f, p, 0.0, 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("translation differences against a Riemann sum") {
  const auto f = PiecewiseFunction::linear(NormedSpace::hilbert(2), {0.0, 0.4, 1.0}, {{0.0, 1.0}, {1.0, 0.0}, {0.0, 0.0}});
  const double h = 0.13;
  const auto g = translate(f, h);
  // Split at the breakpoints of f and of its translate, where the integrand kinks.
  const double cuts[] = {-h, 0.0, 0.4 - h, 0.4, 1.0 - h, 1.0};
  double power = 0.0;
  for (std::size_t i = 0; i + 1 < std::size(cuts); ++i) {
    power += oracle::riemann([&](double t) {
      const Vector a = g.value(t), b = f.value(t);
      return std::pow(std::hypot(a[0] - b[0], a[1] - b[1]), 1.5);
    }, cuts[i], cuts[i + 1], 1L << 16);
  }
  const double ref = std::pow(power, 1.0 / 1.5);
  CHECK(translate_diff_norm(f, h, Exponent::finite(1.5)) == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("combine, restrict, derivative") {
  const auto f = PiecewiseFunction::step(NormedSpace::hilbert(1), {0.0, 1.0}, {{2.0}});
  const auto g = PiecewiseFunction::step(NormedSpace::hilbert(1), {0.5, 1.5}, {{1.0}});
  const auto c = combine(f, 1.0, g, -1.0);
  CHECK(c.value(0.25)[0] == 2.0);
  CHECK(c.value(0.75)[0] == 1.0);
  CHECK(c.value(1.25)[0] == -1.0);
  const auto r = restrict(f, IntervalSet::single(0.25, 0.5));
  CHECK(lp_norm(r, Exponent::finite(1.0)) == doctest::Approx(0.5));
  const auto tent = PiecewiseFunction::linear(NormedSpace::hilbert(1), {0.0, 0.5, 1.0}, {{0.0}, {1.0}, {0.0}});
  const auto d = derivative(tent);
  CHECK(d.value(0.25)[0] == doctest::Approx(2.0));
  CHECK(d.value(0.75)[0] == doctest::Approx(-2.0));
  CHECK(tent.interpolation() == Interpolation::linear);
}
