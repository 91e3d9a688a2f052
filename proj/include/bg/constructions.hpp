#ifndef BG_CONSTRUCTIONS_HPP
#define BG_CONSTRUCTIONS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "bg/filter_bank.hpp"
#include "bg/grid.hpp"
#include "bg/piecewise.hpp"

namespace bg {

/// Riemann zeta for r > 1: compensated direct sum over 10^6 terms plus the
/// Euler-Maclaurin tail N^{1-r}/(r-1) - N^{-r}/2 + r N^{-r-1}/12 - ...
double zeta(double r);

/// Alternating blocks on (0, 1]: f = sum_k 1_{(t_{2k}, t_{2k+1}]} x_k with
/// t_j = j / (2n), n = vectors.size().
PiecewiseFunction make_step(const NormedSpace& space, const std::vector<Vector>& vectors);

/// t_k = c^{-1} sum_{i<=k} i^{-r}, k = 0..n, with c = zeta(r).
std::vector<double> tent_breakpoints(std::size_t n, double r);

/// g_n valued in l^p_n: on (t_{k-1}, t_k] the tent
/// (1 - |2t - t_k - t_{k-1}| / (t_k - t_{k-1})) e_k, zero on (t_n, 1].
PiecewiseFunction make_tent_family(std::size_t n, double r, double p);

/// Level-3n functions psi_{3n} with spectrum proportional to phi_hat(2^{-3n} xi),
/// each normalized to unit grid L^2 norm (discrete Parseval).
GridFunction make_psi(const FilterBank& bank, int level);
/// f = sum_{n=1}^N psi_{3n} x_n, N = vectors.size(). Throws unless 3N <= K.
GridFunction make_psi_system(const FilterBank& bank, const NormedSpace& space, const std::vector<Vector>& vectors);

/// Scalar bump whose spectrum is a C-infinity radial bump exp(-1/(1 - u^2))
/// on the central `fill` share of the plateau {phi_hat_k0 = 1}, normalized to
/// unit grid L^2 norm.
GridFunction make_single_band_scalar(const FilterBank& bank, int k0, double fill = 1.0);
/// The same bump times x.
GridFunction make_single_band(const FilterBank& bank, int k0, const NormedSpace& space, const Vector& x,
                              double fill = 1.0);

enum class Family { step, tent, psi_system, single_band };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// Serializable description of one construction.
struct ConstructionSpec {
  Family family = Family::step;
  // step, psi_system, single_band: target space and vectors.
  double space_exponent = 2.0;  // +inf allowed
  std::size_t space_dimension = 1;
  std::vector<Vector> vectors;
  // tent
  std::size_t n = 1;
  double r = 1.05;
  double alpha = 0.1;
  double p = 1.5;
  // psi_system, single_band
  GridSpec grid;
  int levels = 6;
  double transition_end = FilterBank::kDefaultTransitionEnd;
  int k0 = 1;
  double fill = 1.0;
};

NormedSpace spec_space(const ConstructionSpec& spec);
/// Throws std::invalid_argument naming the offending field.
void validate(const ConstructionSpec& spec);
/// Builds step and tent families.
PiecewiseFunction build_piecewise(const ConstructionSpec& spec);
/// Builds psi_system and single_band families.
GridFunction build_grid(const ConstructionSpec& spec);

}  // namespace bg

#endif  // BG_CONSTRUCTIONS_HPP
