#ifndef BG_TYPECOTYPE_HPP
#define BG_TYPECOTYPE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bg/monte_carlo.hpp"
#include "bg/normed_space.hpp"

namespace bg {

enum class ConstantDirection { type, cotype };

std::string to_string(ConstantDirection d);

/// (E||sum gamma_n x_n||^2)^{1/2} / (sum ||x_n||^p)^{1/p}. Zero vectors are
/// dropped first. Throws for an all-zero tuple.
double type_ratio(const NormedSpace& space, const Exponent& p, const std::vector<Vector>& vectors,
                  const MCConfig& cfg);
/// (sum ||x_n||^q)^{1/q} / (E||sum gamma_n x_n||^2)^{1/2}; q = inf uses max ||x_n||.
double cotype_ratio(const NormedSpace& space, const Exponent& q, const std::vector<Vector>& vectors,
                    const MCConfig& cfg);
/// Same ratios with Rademacher signs, by exact enumeration.
double rademacher_type_ratio(const NormedSpace& space, const Exponent& p, const std::vector<Vector>& vectors);
double rademacher_cotype_ratio(const NormedSpace& space, const Exponent& q, const std::vector<Vector>& vectors);

struct SearchConfig {
  std::size_t tuple_size = 4;
  std::size_t budget = 4096;     // ratio evaluations over all restarts
  std::size_t restarts = 64;
  std::size_t samples = 4000;    // Monte Carlo samples per evaluation (common random numbers)
  std::uint64_t seed = 0;
  /// Extra starting tuple, e.g. a witness from a lower-dimensional space
  /// embedded isometrically.
  std::optional<std::vector<Vector>> warm_start;
};

struct ConstantEstimate {
  double value = 1.0;              // lower bound for the constant
  std::vector<Vector> witness;     // tuple attaining value
  std::size_t evaluations = 0;     // budget used
  std::uint64_t seed = 0;
  bool analytic = false;           // value is the exact constant, no search
  std::string reason;              // why the analytic value holds
  double rademacher_value = 0.0;   // Rademacher ratio of the witness (reported only)
  MCConfig ratio_config;           // reproduces value from witness
};

/// Best defining ratio found by random restarts (uniform on the Euclidean unit
/// sphere) followed by single-coordinate hill climbing, all evaluated with one
/// fixed Monte Carlo stream. Exact and analytic cases: Hilbert spaces and
/// dimension one (constant 1 for every admissible exponent), type 1 and
/// cotype inf (constant 1 in every space). Throws for budget = 0 or an
/// exponent outside [1, 2] (type) or [2, inf] (cotype).
ConstantEstimate estimate_constant(const NormedSpace& space, ConstantDirection direction, const Exponent& exponent,
                                   const SearchConfig& cfg);

/// Recomputes the defining ratio of a witness with the estimate's stream.
double witness_ratio(const NormedSpace& space, ConstantDirection direction, const Exponent& exponent,
                     const ConstantEstimate& est);

}  // namespace bg

#endif  // BG_TYPECOTYPE_HPP
