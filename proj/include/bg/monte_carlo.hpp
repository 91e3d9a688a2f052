#ifndef BG_MONTE_CARLO_HPP
#define BG_MONTE_CARLO_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bg/normed_space.hpp"

namespace bg {

inline constexpr std::size_t kBatchCount = 32;
inline constexpr std::size_t kMinBatchedSamples = 10 * kBatchCount;

struct MCConfig {
  std::size_t samples = 20000;
  std::uint64_t seed = 0;
  /// Sample even where an exact path exists (used to test the sampler).
  bool force_sampling = false;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // +inf when samples < kMinBatchedSamples
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool exact = false;

  static MCEstimate exact_value(double v) { return MCEstimate{v, 0.0, 0, 0, true}; }
};

/// Mean plus batch-means standard error over kBatchCount contiguous batches.
MCEstimate batch_means(std::span<const double> draws, std::uint64_t seed);

/// Delta method: sqrt(mean) with std_error / (2 sqrt(mean)).
MCEstimate sqrt_estimate(const MCEstimate& second_moment);

/// Draws ||sum_n gamma_{s*N+n} x_n||^2 for s = 0..samples-1 (N = vectors.size()).
/// Zero vectors keep their Gaussian index, so restrictions share randomness.
std::vector<double> gaussian_sum_draws(const NormedSpace& space,
                                       std::span<const Vector> vectors,
                                       const MCConfig& cfg);

/// E||sum_n gamma_n x_n||^2. Exact (sum ||x_n||^2) for Hilbert spaces and for a
/// single vector unless cfg.force_sampling; 0 exactly for an empty list.
MCEstimate gaussian_second_moment(const NormedSpace& space,
                                  std::span<const Vector> vectors,
                                  const MCConfig& cfg);

/// E||sum_n r_n x_n||^2 for Rademacher signs, by exhaustive enumeration
/// (at most 24 vectors).
double rademacher_second_moment(const NormedSpace& space, std::span<const Vector> vectors);

}  // namespace bg

#endif  // BG_MONTE_CARLO_HPP
