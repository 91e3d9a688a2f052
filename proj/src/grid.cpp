#include "bg/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bg {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place unnormalized DFT of one component; sign = FFTW_FORWARD or FFTW_BACKWARD.
void dft_inplace(const GridSpec& grid, std::complex<double>* data, int sign) {
  const std::size_t count = grid.node_count();
  fftw_complex* buffer = fftw_alloc_complex(count);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    const int n = static_cast<int>(grid.points);
    plan = grid.dimension == 1 ? fftw_plan_dft_1d(n, buffer, buffer, sign, FFTW_ESTIMATE)
                               : fftw_plan_dft_2d(n, n, buffer, buffer, sign, FFTW_ESTIMATE);
  }
  std::copy(data, data + count, reinterpret_cast<std::complex<double>*>(buffer));
  fftw_execute(plan);
  std::copy(reinterpret_cast<std::complex<double>*>(buffer), reinterpret_cast<std::complex<double>*>(buffer) + count,
            data);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(buffer);
}

// (-1)^{m_1 + m_2}: the phase that moves the DFT origin to the grid centre.
double centre_phase(const GridSpec& grid, std::size_t node) {
  const auto idx = grid.axis_indices(node);
  return ((idx[0] + idx[1]) & 1) ? -1.0 : 1.0;
}

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

}  // namespace

void GridSpec::validate() const {
  if (!(period > 0.0) || !std::isfinite(period)) throw std::invalid_argument("grid period must be positive");
  if (!is_power_of_two(points)) throw std::invalid_argument("grid points must be a power of two >= 2");
  if (dimension != 1 && dimension != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
}

double GridSpec::cell_volume() const { return dimension == 1 ? spacing() : spacing() * spacing(); }

double GridSpec::nyquist() const { return std::numbers::pi * static_cast<double>(points) / period; }

long GridSpec::signed_index(std::size_t m) const {
  const long n = static_cast<long>(points);
  const long i = static_cast<long>(m);
  return i < n / 2 ? i : i - n;
}

double GridSpec::frequency(std::size_t m) const {
  return 2.0 * std::numbers::pi * static_cast<double>(signed_index(m)) / period;
}

std::array<std::size_t, 2> GridSpec::axis_indices(std::size_t node) const {
  if (dimension == 1) return {node, 0};
  return {node / points, node % points};
}

double GridSpec::frequency_radius(std::size_t node) const {
  const auto idx = axis_indices(node);
  const double a = frequency(idx[0]);
  const double b = dimension == 2 ? frequency(idx[1]) : 0.0;
  return std::hypot(a, b);
}

double GridSpec::coordinate_radius(std::size_t node) const {
  const auto idx = axis_indices(node);
  const double a = coordinate(idx[0]);
  const double b = dimension == 2 ? coordinate(idx[1]) : 0.0;
  return std::hypot(a, b);
}

GridFunction::GridFunction(GridSpec grid, NormedSpace space, std::vector<double> values)
    : grid_(grid), space_(std::move(space)), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.node_count() * space_.dimension()) {
    throw std::invalid_argument("grid function: expected " + std::to_string(grid_.node_count() * space_.dimension()) +
                                " values, got " + std::to_string(values_.size()));
  }
}

GridFunction GridFunction::zeros(GridSpec grid, NormedSpace space) {
  grid.validate();
  const std::size_t count = grid.node_count() * space.dimension();
  return GridFunction(grid, std::move(space), std::vector<double>(count, 0.0));
}

double GridFunction::lp_norm(const Exponent& p) const {
  const std::size_t nodes = grid_.node_count();
  std::vector<double> pointwise(nodes);
  for (std::size_t j = 0; j < nodes; ++j) pointwise[j] = space_.norm(at(j));
  if (p.is_infinite()) return sequence_norm(pointwise, p);
  return std::pow(grid_.cell_volume(), p.reciprocal()) * sequence_norm(pointwise, p);
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

GridFunction GridFunction::scaled(double c) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= c;
  return GridFunction(grid_, space_, std::move(v));
}

GridFunction combine(const GridFunction& f, double a, const GridFunction& g, double b) {
  if (!(f.grid() == g.grid()) || !(f.space() == g.space())) {
    throw std::invalid_argument("combine: grid functions live on different grids or spaces");
  }
  std::vector<double> v(f.values().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * f.values()[i] + b * g.values()[i];
  return GridFunction(f.grid(), f.space(), std::move(v));
}

Spectrum forward(const GridFunction& f) {
  const GridSpec& grid = f.grid();
  const std::size_t nodes = grid.node_count();
  const std::size_t dim = f.space().dimension();
  Spectrum s{grid, dim, std::vector<std::complex<double>>(nodes * dim)};
  for (std::size_t c = 0; c < dim; ++c) {
    auto out = s.component(c);
    for (std::size_t j = 0; j < nodes; ++j) out[j] = f.values()[j * dim + c];
    dft_inplace(grid, out.data(), FFTW_FORWARD);
    for (std::size_t m = 0; m < nodes; ++m) out[m] *= centre_phase(grid, m);
  }
  return s;
}

std::vector<double> inverse_scalar(const GridSpec& grid, std::span<const std::complex<double>> spectrum) {
  const std::size_t nodes = grid.node_count();
  if (spectrum.size() != nodes) throw std::invalid_argument("inverse_scalar: spectrum size mismatch");
  std::vector<std::complex<double>> work(spectrum.begin(), spectrum.end());
  for (std::size_t m = 0; m < nodes; ++m) work[m] *= centre_phase(grid, m);
  dft_inplace(grid, work.data(), FFTW_BACKWARD);
  std::vector<double> out(nodes);
  const double scale = 1.0 / static_cast<double>(nodes);
  for (std::size_t j = 0; j < nodes; ++j) out[j] = work[j].real() * scale;
  return out;
}

std::size_t quadrant_side(const GridSpec& grid) { return grid.points / 2 + 1; }

std::vector<double> inverse_even_scalar(const GridSpec& grid, std::vector<double> quadrant) {
  const std::size_t side = quadrant_side(grid);
  const std::size_t count = grid.dimension == 1 ? side : side * side;
  if (quadrant.size() != count) throw std::invalid_argument("inverse_even_scalar: quadrant size mismatch");
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    const int n = static_cast<int>(side);
    plan = grid.dimension == 1
               ? fftw_plan_r2r_1d(n, quadrant.data(), quadrant.data(), FFTW_REDFT00, FFTW_ESTIMATE)
               : fftw_plan_r2r_2d(n, n, quadrant.data(), quadrant.data(), FFTW_REDFT00, FFTW_REDFT00, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double scale = 1.0 / static_cast<double>(grid.node_count());
  for (double& v : quadrant) v *= scale;
  return quadrant;
}

double quadrant_multiplicity(const GridSpec& grid, std::size_t node) {
  const std::size_t side = quadrant_side(grid);
  auto axis = [&](std::size_t i) { return (i == 0 || i == side - 1) ? 1.0 : 2.0; };
  if (grid.dimension == 1) return axis(node);
  return axis(node / side) * axis(node % side);
}

GridFunction inverse(const Spectrum& s, const NormedSpace& space) {
  if (space.dimension() != s.components) throw std::invalid_argument("inverse: space dimension mismatch");
  const std::size_t nodes = s.grid.node_count();
  std::vector<double> values(nodes * s.components);
  for (std::size_t c = 0; c < s.components; ++c) {
    const auto comp = inverse_scalar(s.grid, s.component(c));
    for (std::size_t j = 0; j < nodes; ++j) values[j * s.components + c] = comp[j];
  }
  return GridFunction(s.grid, space, std::move(values));
}

GridFunction apply_multiplier(const Spectrum& s, const NormedSpace& space, std::span<const double> multiplier) {
  const std::size_t nodes = s.grid.node_count();
  if (multiplier.size() != nodes) throw std::invalid_argument("apply_multiplier: multiplier size mismatch");
  Spectrum out = s;
  for (std::size_t c = 0; c < s.components; ++c) {
    auto comp = out.component(c);
    for (std::size_t m = 0; m < nodes; ++m) comp[m] *= multiplier[m];
  }
  return inverse(out, space);
}

GridFunction apply_multiplier(const GridFunction& f, std::span<const double> multiplier) {
  return apply_multiplier(forward(f), f.space(), multiplier);
}

double spectral_energy_fraction_above(const Spectrum& s, double cutoff) {
  double total = 0.0;
  double above = 0.0;
  const std::size_t nodes = s.grid.node_count();
  for (std::size_t c = 0; c < s.components; ++c) {
    const auto comp = s.component(c);
    for (std::size_t m = 0; m < nodes; ++m) {
      const double e = std::norm(comp[m]);
      total += e;
      const auto idx = s.grid.axis_indices(m);
      bool out = std::abs(s.grid.frequency(idx[0])) > cutoff;
      if (s.grid.dimension == 2) out = out || std::abs(s.grid.frequency(idx[1])) > cutoff;
      if (out) above += e;
    }
  }
  return total > 0.0 ? above / total : 0.0;
}

GridFunction dilate(const GridFunction& f, int n, double tolerance) {
  if (n == 0) return f;
  if (std::abs(n) >= 30) throw std::domain_error("dilate: |n| too large");
  const GridSpec& grid = f.grid();
  const std::size_t dim = f.space().dimension();
  const std::size_t nodes = grid.node_count();
  const long half = static_cast<long>(grid.points / 2);
  const long npts = static_cast<long>(grid.points);
  const long factor = 1L << std::abs(n);

  if (n > 0) {
    // f(lambda x) at x_j reads the node N/2 + lambda (j - N/2).
    const double cutoff = grid.nyquist() / static_cast<double>(factor);
    const double leak = spectral_energy_fraction_above(forward(f), cutoff);
    if (leak > tolerance) {
      throw std::domain_error("dilate: spectrum above nyquist/2^" + std::to_string(n) + " would alias (energy fraction " +
                              std::to_string(leak) + ")");
    }
    GridFunction out = GridFunction::zeros(grid, f.space());
    auto source = [&](std::size_t i) { return half + factor * (static_cast<long>(i) - half); };
    for (std::size_t node = 0; node < nodes; ++node) {
      const auto idx = grid.axis_indices(node);
      const long s0 = source(idx[0]);
      const long s1 = grid.dimension == 2 ? source(idx[1]) : 0;
      if (s0 < 0 || s0 >= npts || s1 < 0 || s1 >= npts) continue;
      const std::size_t src = grid.dimension == 2 ? static_cast<std::size_t>(s0 * npts + s1) : static_cast<std::size_t>(s0);
      const auto from = f.at(src);
      auto to = out.at(node);
      std::copy(from.begin(), from.end(), to.begin());
    }
    return out;
  }

  // n < 0: G(m) = mu^d F(mu m), exact when f vanishes outside the shrunken box.
  const double box = 0.5 * grid.period / static_cast<double>(factor);
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t node = 0; node < nodes; ++node) {
    const auto idx = grid.axis_indices(node);
    bool out = std::abs(grid.coordinate(idx[0])) >= box;
    if (grid.dimension == 2) out = out || std::abs(grid.coordinate(idx[1])) >= box;
    for (double v : f.at(node)) {
      total += v * v;
      if (out) outside += v * v;
    }
  }
  if (total > 0.0 && outside / total > tolerance) {
    throw std::domain_error("dilate: support exceeds |x| < L/2^" + std::to_string(1 - n) + " (energy fraction " +
                            std::to_string(outside / total) + ")");
  }
  const Spectrum s = forward(f);
  Spectrum g{grid, dim, std::vector<std::complex<double>>(s.data.size())};
  const double gain = std::pow(static_cast<double>(factor), grid.dimension);
  auto target = [&](std::size_t m) -> long {
    const long k = factor * grid.signed_index(m);
    if (k < -half || k >= half) return -1;
    return k < 0 ? k + npts : k;
  };
  for (std::size_t m = 0; m < nodes; ++m) {
    const auto idx = grid.axis_indices(m);
    const long t0 = target(idx[0]);
    const long t1 = grid.dimension == 2 ? target(idx[1]) : 0;
    if (t0 < 0 || t1 < 0) continue;
    const std::size_t src = grid.dimension == 2 ? static_cast<std::size_t>(t0 * npts + t1) : static_cast<std::size_t>(t0);
    for (std::size_t c = 0; c < dim; ++c) g.component(c)[m] = gain * s.component(c)[src];
  }
  return inverse(g, f.space());
}

}  // namespace bg
