#include "bg/filter_bank.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bg {

double smooth_cutoff(double r, double transition_end) {
  if (r <= 1.0) return 1.0;
  if (r >= transition_end) return 0.0;
  const double u = (r - 1.0) / (transition_end - 1.0);
  return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

FilterBank::FilterBank(GridSpec grid, int levels, double transition_end)
    : grid_(grid), levels_(levels), transition_end_(transition_end) {
  grid_.validate();
  if (levels < 0) throw std::invalid_argument("filter bank: levels must be >= 0");
  if (!(transition_end > 1.0 && transition_end <= 2.0)) {
    throw std::invalid_argument("filter bank: transition end must lie in (1, 2]");
  }
  if (!(std::ldexp(1.0, levels) < grid_.nyquist())) {
    throw std::invalid_argument("filter bank: 2^K = " + std::to_string(std::ldexp(1.0, levels)) +
                                " is not below the grid nyquist frequency " + std::to_string(grid_.nyquist()));
  }
  cache_ = std::make_shared<Cache>();
  cache_->levels.resize(levels + 1);
}

double FilterBank::level_value(int k, double r) const {
  if (k == 0) return chi(r);
  return profile(std::ldexp(r, -k));
}

std::span<const double> FilterBank::multiplier(int k) const {
  if (k < 0 || k > levels_) throw std::out_of_range("filter bank: level " + std::to_string(k) + " out of range");
  std::lock_guard lock(cache_->mutex);
  auto& m = cache_->levels[k];
  if (m.empty()) {
    m.resize(grid_.node_count());
    for (std::size_t j = 0; j < m.size(); ++j) m[j] = level_value(k, grid_.frequency_radius(j));
  }
  return m;
}

double FilterBank::plateau_lower(int k) const { return k == 0 ? 0.0 : std::ldexp(0.5 * transition_end_, k); }
double FilterBank::plateau_upper(int k) const { return std::ldexp(1.0, k); }
double FilterBank::support_lower(int k) const { return k == 0 ? 0.0 : std::ldexp(0.5, k); }
double FilterBank::support_upper(int k) const { return std::ldexp(transition_end_, k); }

}  // namespace bg
