#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

#include "bg/typecotype.hpp"

using namespace bg;

TEST_CASE("defining ratios on unit vectors") {
  const std::vector<Vector> e{{1.0, 0.0}, {0.0, 1.0}};
  const MCConfig cfg{40000, 2, false};
  // l^inf_2, type 2: (1 + 2/pi)^{1/2} / sqrt 2.
  const double t = type_ratio(NormedSpace::linf(2), Exponent::finite(2.0), e, cfg);
  CHECK(t == doctest::Approx(std::sqrt(oracle::linf_two_unit_vectors() / 2.0)).epsilon(1e-2));
  // l^1_2, cotype 2: sqrt 2 / (2 + 4/pi)^{1/2}.
  const double c = cotype_ratio(NormedSpace::lp(1.0, 2), Exponent::finite(2.0), e, cfg);
  CHECK(c == doctest::Approx(std::sqrt(2.0 / oracle::l1_two_unit_vectors())).epsilon(1e-2));
  CHECK(rademacher_type_ratio(NormedSpace::linf(2), Exponent::finite(2.0), e) == doctest::Approx(std::sqrt(0.5)));
  // Zero vectors are dropped, an all-zero tuple is rejected.
  const std::vector<Vector> padded{{1.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}};
  CHECK(type_ratio(NormedSpace::linf(2), Exponent::finite(2.0), padded, cfg) == t);
  CHECK_THROWS_AS(type_ratio(NormedSpace::linf(2), Exponent::finite(2.0), {{0.0, 0.0}}, cfg), std::invalid_argument);
}

TEST_CASE("analytic constants") {
  SearchConfig cfg;
  const auto h = estimate_constant(NormedSpace::hilbert(5), ConstantDirection::type, Exponent::finite(2.0), cfg);
  CHECK(h.analytic);
  CHECK(h.value == 1.0);
  const auto c = estimate_constant(NormedSpace::hilbert(5), ConstantDirection::cotype, Exponent::finite(2.0), cfg);
  CHECK(c.value == 1.0);
  const auto t1 = estimate_constant(NormedSpace::linf(5), ConstantDirection::type, Exponent::finite(1.0), cfg);
  CHECK(t1.analytic);
  CHECK(t1.value == 1.0);
  const auto cinf = estimate_constant(NormedSpace::lp(1.0, 5), ConstantDirection::cotype, Exponent::infinity(), cfg);
  CHECK(cinf.value == 1.0);
  CHECK_THROWS_AS(estimate_constant(NormedSpace::linf(2), ConstantDirection::type, Exponent::finite(3.0), cfg),
                  std::invalid_argument);
  cfg.budget = 0;
  CHECK_THROWS_AS(estimate_constant(NormedSpace::linf(2), ConstantDirection::type, Exponent::finite(2.0), cfg),
                  std::invalid_argument);
}

TEST_CASE("searched constants are reproducible lower bounds") {
  SearchConfig cfg;
  cfg.budget = 600;
  cfg.restarts = 6;
  cfg.samples = 2000;
  cfg.seed = 17;
  const NormedSpace space = NormedSpace::linf(3);
  const auto a = estimate_constant(space, ConstantDirection::type, Exponent::finite(2.0), cfg);
  const auto b = estimate_constant(space, ConstantDirection::type, Exponent::finite(2.0), cfg);
  CHECK_FALSE(a.analytic);
  CHECK(a.value == b.value);
  CHECK(a.value >= 1.0);
  CHECK(a.value == witness_ratio(space, ConstantDirection::type, Exponent::finite(2.0), a));
  // A warm start is never lost.
  cfg.warm_start = a.witness;
  const auto w = estimate_constant(space, ConstantDirection::type, Exponent::finite(2.0), cfg);
  CHECK(w.value >= a.value);
}
