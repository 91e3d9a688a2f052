#ifndef BG_GRID_HPP
#define BG_GRID_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bg/normed_space.hpp"

namespace bg {

/// Uniform periodic grid on [-L/2, L/2)^d standing in for R^d, d in {1, 2}.
/// N is a power of two. Nodes are row-major; spectra use FFT index order.
struct GridSpec {
  double period = 64.0;
  std::size_t points = 4096;
  int dimension = 1;

  void validate() const;
  std::size_t node_count() const { return dimension == 1 ? points : points * points; }
  double spacing() const { return period / static_cast<double>(points); }
  double cell_volume() const;
  /// Largest representable angular frequency per axis, pi N / L.
  double nyquist() const;
  double coordinate(std::size_t axis_index) const {
    return -0.5 * period + static_cast<double>(axis_index) * spacing();
  }
  /// Signed FFT index of axis index m.
  long signed_index(std::size_t m) const;
  double frequency(std::size_t m) const;
  std::array<std::size_t, 2> axis_indices(std::size_t node) const;
  /// |xi| of the spectral node.
  double frequency_radius(std::size_t node) const;
  /// |x| of the spatial node.
  double coordinate_radius(std::size_t node) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

class GridFunction {
 public:
  GridFunction(GridSpec grid, NormedSpace space, std::vector<double> values);
  static GridFunction zeros(GridSpec grid, NormedSpace space);

  /// fn(coords) -> Vector, coords = {x} or {x, y}.
  template <class Fn>
  static GridFunction sample(GridSpec grid, NormedSpace space, Fn&& fn) {
    GridFunction f = zeros(grid, space);
    for (std::size_t node = 0; node < grid.node_count(); ++node) {
      const auto idx = grid.axis_indices(node);
      const std::array<double, 2> x{grid.coordinate(idx[0]), grid.dimension == 2 ? grid.coordinate(idx[1]) : 0.0};
      const Vector v = fn(x);
      auto out = f.at(node);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = v[i];
    }
    return f;
  }

  const GridSpec& grid() const { return grid_; }
  const NormedSpace& space() const { return space_; }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> at(std::size_t node) const {
    return {values_.data() + node * space_.dimension(), space_.dimension()};
  }
  std::span<double> at(std::size_t node) { return {values_.data() + node * space_.dimension(), space_.dimension()}; }

  /// Rectangle rule at the nodes.
  double lp_norm(const Exponent& p) const;
  double max_abs() const;
  GridFunction scaled(double c) const;

 private:
  GridSpec grid_;
  NormedSpace space_;
  std::vector<double> values_;
};

/// a f + b g.
GridFunction combine(const GridFunction& f, double a, const GridFunction& g, double b);

/// Per-component spectra F_c(m) = sum_j f_c(x_j) exp(-i xi_m . x_j).
struct Spectrum {
  GridSpec grid;
  std::size_t components = 0;
  std::vector<std::complex<double>> data;  // component-major

  std::span<const std::complex<double>> component(std::size_t c) const {
    return {data.data() + c * grid.node_count(), grid.node_count()};
  }
  std::span<std::complex<double>> component(std::size_t c) {
    return {data.data() + c * grid.node_count(), grid.node_count()};
  }
};

Spectrum forward(const GridFunction& f);
/// Real part of the inverse transform.
GridFunction inverse(const Spectrum& s, const NormedSpace& space);
/// Inverse transform of one complex spectral array (scalar, real part).
std::vector<double> inverse_scalar(const GridSpec& grid, std::span<const std::complex<double>> spectrum);

/// Number of spectral indices per axis on the quadrant [0, N/2]^d.
std::size_t quadrant_side(const GridSpec& grid);
/// Inverse DFT of a real multiplier that is even in every axis, given on the
/// index quadrant [0, N/2]^d (row-major). Returns the samples on the same
/// quadrant with the normalization of inverse_scalar; reflection recovers
/// the full grid. Uses a DCT-I, so no complex buffer is allocated.
std::vector<double> inverse_even_scalar(const GridSpec& grid, std::vector<double> quadrant);
/// How many full-grid nodes the quadrant node stands for.
double quadrant_multiplicity(const GridSpec& grid, std::size_t node);

/// F^{-1}(m . F f) for a real multiplier sampled at the spectral nodes.
GridFunction apply_multiplier(const Spectrum& s, const NormedSpace& space, std::span<const double> multiplier);
GridFunction apply_multiplier(const GridFunction& f, std::span<const double> multiplier);

/// Fraction of spectral energy at nodes with some |xi_axis| > cutoff.
double spectral_energy_fraction_above(const Spectrum& s, double cutoff);

/// f_lambda(x) = f(lambda x), lambda = 2^n. For n > 0 by index stride (throws
/// std::domain_error if the spectrum above nyquist/lambda carries more than
/// `tolerance` of the energy); for n < 0 by spectral stride (throws if more
/// than `tolerance` of the energy lies outside |x_axis| < L / (2 lambda^{-1})).
GridFunction dilate(const GridFunction& f, int n, double tolerance = 1e-10);

}  // namespace bg

#endif  // BG_GRID_HPP
