#ifndef BG_FILTER_BANK_HPP
#define BG_FILTER_BANK_HPP

#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "bg/grid.hpp"

namespace bg {

/// Quintic smoothstep cutoff: 1 on [0, 1], 0 on [b, inf), with
/// 1 - (6u^5 - 15u^4 + 10u^3) for u = (r - 1) / (b - 1) in between.
double smooth_cutoff(double r, double transition_end);

/// Dyadic partition of unity sampled on a grid's spectral nodes:
/// phi_hat(xi) = chi(|xi|) - chi(2|xi|), phi_hat_k(xi) = phi_hat(2^{-k} xi) for
/// k >= 1 and phi_hat_0 = chi(|xi|). Then sum_{k<=K} phi_hat_k = chi(2^{-K}|xi|).
class FilterBank {
 public:
  static constexpr double kDefaultTransitionEnd = 1.5;

  /// Throws std::invalid_argument unless 2^K < nyquist and 1 < b <= 2.
  FilterBank(GridSpec grid, int levels, double transition_end = kDefaultTransitionEnd);

  const GridSpec& grid() const { return grid_; }
  int levels() const { return levels_; }
  double transition_end() const { return transition_end_; }

  double chi(double r) const { return smooth_cutoff(r, transition_end_); }
  /// phi_hat at radius r.
  double profile(double r) const { return chi(r) - chi(2.0 * r); }
  /// phi_hat_k at radius r.
  double level_value(int k, double r) const;
  /// phi_hat_k at every spectral node (FFT order), sampled on first use.
  std::span<const double> multiplier(int k) const;

  /// {phi_hat_k = 1} is the annulus plateau_lower(k) <= |xi| <= plateau_upper(k)
  /// (a ball for k = 0).
  double plateau_lower(int k) const;
  double plateau_upper(int k) const;
  /// phi_hat_k vanishes outside support_lower(k) <= |xi| <= support_upper(k).
  double support_lower(int k) const;
  double support_upper(int k) const;

 private:
  GridSpec grid_;
  int levels_;
  double transition_end_;
  struct Cache {
    std::mutex mutex;
    std::vector<std::vector<double>> levels;
  };
  std::shared_ptr<Cache> cache_;
};

}  // namespace bg

#endif  // BG_FILTER_BANK_HPP
