#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "bg/besov.hpp"
#include "bg/filter_bank.hpp"

using namespace bg;

TEST_CASE("smooth cutoff") {
  CHECK(smooth_cutoff(0.0, 1.5) == 1.0);
  CHECK(smooth_cutoff(1.0, 1.5) == 1.0);
  CHECK(smooth_cutoff(1.25, 1.5) == doctest::Approx(0.5));
  CHECK(smooth_cutoff(1.5, 1.5) == 0.0);
  CHECK(smooth_cutoff(7.0, 2.0) == 0.0);
}

TEST_CASE("partition of unity, plateaus and supports") {
  const GridSpec g{8.0, 4096, 1};
  const FilterBank bank(g, 10);
  double worst = 0.0;
  for (std::size_t m = 0; m < g.node_count(); ++m) {
    if (g.frequency_radius(m) > std::ldexp(1.0, bank.levels())) continue;
    double s = 0.0;
    for (int k = 0; k <= bank.levels(); ++k) s += bank.multiplier(k)[m];
    worst = std::max(worst, std::abs(s - 1.0));
  }
  CHECK(worst <= 1e-12);
  for (int k = 1; k <= 4; ++k) {
    const double mid = 0.5 * (bank.plateau_lower(k) + bank.plateau_upper(k));
    CHECK(bank.level_value(k, mid) == 1.0);
    CHECK(bank.level_value(k, bank.support_lower(k) * 0.999) == 0.0);
    CHECK(bank.level_value(k, bank.support_upper(k) * 1.001) == 0.0);
  }
  CHECK_THROWS_AS(FilterBank(g, 11), std::invalid_argument);
  CHECK_THROWS_AS(FilterBank(g, 4, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(bank.multiplier(11), std::out_of_range);
}

TEST_CASE("kernel norms agree with the full complex transform") {
  for (int d : {1, 2}) {
    const GridSpec g = d == 1 ? GridSpec{16.0, 256, 1} : GridSpec{16.0, 64, 2};
    const FilterBank bank(g, 3);
    for (int k = 0; k <= 3; ++k) {
      std::vector<double> m(g.node_count());
      double energy = 0.0;
      for (std::size_t j = 0; j < m.size(); ++j) {
        const double v = bank.profile(std::ldexp(g.frequency_radius(j), -k));
        m[j] = v * v;
        energy += m[j] * m[j];
      }
      const auto kernel = kernel_from_multiplier(g, m);
      double l1 = 0.0, linf = 0.0;
      for (double v : kernel) {
        l1 += std::abs(v) * g.cell_volume();
        linf = std::max(linf, std::abs(v));
      }
      CHECK(convolution_norm(bank, k, Exponent::finite(1.0)) == doctest::Approx(l1).epsilon(1e-12));
      CHECK(convolution_norm(bank, k, Exponent::infinity()) == doctest::Approx(linf).epsilon(1e-12));
      // Parseval on the torus: ||K||_2^2 = L^{-d} sum |m|^2.
      CHECK(convolution_norm(bank, k, Exponent::finite(2.0)) ==
            doctest::Approx(std::sqrt(energy / std::pow(g.period, d))).epsilon(1e-12));
    }
  }
}

TEST_CASE("kernel norms scale with the level") {
  const GridSpec g{256.0, 32768, 1};
  const FilterBank bank(g, 6);
  // ||phi_(k) * phi_(k)||_2 = 2^{k/2} ||phi * phi||_2; the base level is the
  // least resolved, to about 1e-5 on this grid.
  const double base = convolution_norm(bank, 0, Exponent::finite(2.0));
  for (int k = 2; k <= 6; ++k) {
    CHECK(convolution_norm(bank, k, Exponent::finite(2.0)) / base == doctest::Approx(std::sqrt(std::ldexp(1.0, k))).epsilon(1e-4));
  }
  CHECK(kernel_l1_norm(bank, 3) >= 1.0);
}
