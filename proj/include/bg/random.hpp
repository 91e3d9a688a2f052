#ifndef BG_RANDOM_HPP
#define BG_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>

namespace bg {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// FNV-1a, used to turn experiment ids into stream keys.
constexpr std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic child seed for (stream, replicate). Serial and parallel
/// callers that agree on the triple get the same numbers.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                    std::uint64_t replicate = 0) {
  return mix64(mix64(seed ^ mix64(stream)) + replicate);
}

/// Counter-based generator: the i-th draw is a pure function of (key, i).
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t key) : key_(mix64(key)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key_ ^ mix64(counter + 0x632be59bd9b4e019ULL));
  }
  /// Uniform on (0, 1].
  double uniform_open_closed(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 1.0) * 0x1.0p-53;
  }
  /// Uniform on [0, 1).
  double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

/// Standard Gaussians by Box-Muller over a counter-based stream. Draw i uses
/// uniforms (2*(i/2), 2*(i/2)+1) and the cosine or sine branch by parity.
class GaussianStream {
 public:
  explicit constexpr GaussianStream(std::uint64_t key) : rng_(key) {}

  double operator()(std::uint64_t index) const {
    const std::uint64_t pair = index >> 1;
    const double radius = std::sqrt(-2.0 * std::log(rng_.uniform_open_closed(2 * pair)));
    const double angle = 2.0 * std::numbers::pi * rng_.uniform(2 * pair + 1);
    return (index & 1) ? radius * std::sin(angle) : radius * std::cos(angle);
  }

  /// out[j] = (*this)(first + j), sharing each Box-Muller pair.
  void fill(std::span<double> out, std::uint64_t first) const {
    std::size_t j = 0;
    std::uint64_t index = first;
    if ((index & 1) && j < out.size()) out[j++] = (*this)(index++);
    for (; j + 1 < out.size(); j += 2, index += 2) {
      const std::uint64_t pair = index >> 1;
      const double radius = std::sqrt(-2.0 * std::log(rng_.uniform_open_closed(2 * pair)));
      const double angle = 2.0 * std::numbers::pi * rng_.uniform(2 * pair + 1);
      out[j] = radius * std::cos(angle);
      out[j + 1] = radius * std::sin(angle);
    }
    if (j < out.size()) out[j] = (*this)(index);
  }

 private:
  CounterRng rng_;
};

}  // namespace bg

#endif  // BG_RANDOM_HPP
