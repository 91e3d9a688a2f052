#include "bg/constructions.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace bg {

namespace {

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

double bump(double u) { return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

GridFunction unit_l2_from_spectrum(const GridSpec& grid, const std::vector<double>& spectrum) {
  const std::vector<std::complex<double>> s(spectrum.begin(), spectrum.end());
  std::vector<double> values = inverse_scalar(grid, s);
  GridFunction f(grid, NormedSpace::hilbert(1), std::move(values));
  const double nrm = f.lp_norm(Exponent::finite(2.0));
  if (!(nrm > 0.0)) throw std::invalid_argument("construction: spectrum has no grid nodes (band too narrow)");
  return f.scaled(1.0 / nrm);
}

GridFunction tensor(const GridFunction& scalar, const NormedSpace& space, const Vector& x) {
  if (x.size() != space.dimension()) throw std::invalid_argument("construction: vector dimension mismatch");
  const std::size_t dim = space.dimension();
  std::vector<double> values(scalar.grid().node_count() * dim);
  for (std::size_t j = 0; j < scalar.grid().node_count(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) values[j * dim + i] = scalar.values()[j] * x[i];
  }
  return GridFunction(scalar.grid(), space, std::move(values));
}

}  // namespace

double zeta(double r) {
  if (!(r > 1.0)) throw std::invalid_argument("zeta: r must exceed 1");
  static std::mutex mutex;
  static std::map<double, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(r); it != cache.end()) return it->second;
  }
  constexpr long kTerms = 1000000;
  CompensatedSum s;
  for (long i = kTerms; i >= 1; --i) s.add(std::pow(static_cast<double>(i), -r));
  const double n = static_cast<double>(kTerms);
  // Euler-Maclaurin for sum_{i > N} i^{-r}; the next term is O(N^{-r-5}).
  const double tail = std::pow(n, 1.0 - r) / (r - 1.0) - 0.5 * std::pow(n, -r) + r * std::pow(n, -r - 1.0) / 12.0 -
                      r * (r + 1.0) * (r + 2.0) * std::pow(n, -r - 3.0) / 720.0;
  s.add(tail);
  std::lock_guard lock(mutex);
  cache[r] = s.value();
  return s.value();
}

PiecewiseFunction make_step(const NormedSpace& space, const std::vector<Vector>& vectors) {
  const std::size_t n = vectors.size();
  if (n == 0) throw std::invalid_argument("make_step: need n >= 1 vectors");
  std::vector<double> t(2 * n + 1);
  for (std::size_t j = 0; j <= 2 * n; ++j) t[j] = static_cast<double>(j) / static_cast<double>(2 * n);
  std::vector<Vector> values;
  values.reserve(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    values.push_back(vectors[k]);
    values.emplace_back(space.dimension(), 0.0);
  }
  return PiecewiseFunction::step(space, std::move(t), std::move(values));
}

std::vector<double> tent_breakpoints(std::size_t n, double r) {
  if (n == 0) throw std::invalid_argument("tent family: n must be >= 1");
  const double c = zeta(r);
  std::vector<double> t(n + 1, 0.0);
  CompensatedSum s;
  for (std::size_t k = 1; k <= n; ++k) {
    s.add(std::pow(static_cast<double>(k), -r));
    t[k] = s.value() / c;
  }
  return t;
}

PiecewiseFunction make_tent_family(std::size_t n, double r, double p) {
  const auto t = tent_breakpoints(n, r);
  const NormedSpace space = NormedSpace::lp(p, n);
  std::vector<double> bps{0.0};
  std::vector<Vector> nodes{Vector(n, 0.0)};
  for (std::size_t k = 1; k <= n; ++k) {
    Vector peak(n, 0.0);
    peak[k - 1] = 1.0;
    bps.push_back(0.5 * (t[k - 1] + t[k]));
    nodes.push_back(std::move(peak));
    bps.push_back(t[k]);
    nodes.emplace_back(n, 0.0);
  }
  if (bps.back() < 1.0) {
    bps.push_back(1.0);
    nodes.emplace_back(n, 0.0);
  }
  return PiecewiseFunction::linear(space, std::move(bps), std::move(nodes));
}

GridFunction make_psi(const FilterBank& bank, int level) {
  const GridSpec& grid = bank.grid();
  if (level < 1) throw std::invalid_argument("make_psi: level must be >= 1");
  if (std::ldexp(bank.transition_end(), level) >= grid.nyquist()) {
    throw std::invalid_argument("make_psi: level " + std::to_string(level) + " exceeds the grid band");
  }
  std::vector<double> spectrum(grid.node_count());
  for (std::size_t m = 0; m < spectrum.size(); ++m) spectrum[m] = bank.profile(std::ldexp(grid.frequency_radius(m), -level));
  return unit_l2_from_spectrum(grid, spectrum);
}

GridFunction make_psi_system(const FilterBank& bank, const NormedSpace& space, const std::vector<Vector>& vectors) {
  const std::size_t count = vectors.size();
  if (count == 0) throw std::invalid_argument("make_psi_system: need N >= 1 vectors");
  if (static_cast<int>(3 * count) > bank.levels()) {
    throw std::invalid_argument("make_psi_system: 3N = " + std::to_string(3 * count) + " exceeds the bank levels " +
                                std::to_string(bank.levels()));
  }
  GridFunction f = GridFunction::zeros(bank.grid(), space);
  for (std::size_t n = 1; n <= count; ++n) {
    f = combine(f, 1.0, tensor(make_psi(bank, static_cast<int>(3 * n)), space, vectors[n - 1]), 1.0);
  }
  return f;
}

GridFunction make_single_band_scalar(const FilterBank& bank, int k0, double fill) {
  if (k0 < 0 || k0 > bank.levels()) throw std::invalid_argument("make_single_band: k0 outside the bank levels");
  if (!(fill > 0.0 && fill <= 1.0)) throw std::invalid_argument("make_single_band: fill must lie in (0, 1]");
  const GridSpec& grid = bank.grid();
  const double lo = bank.plateau_lower(k0);
  const double hi = bank.plateau_upper(k0);
  const double centre = k0 == 0 ? 0.0 : 0.5 * (lo + hi);
  const double half_width = fill * (k0 == 0 ? hi : 0.5 * (hi - lo));
  std::vector<double> spectrum(grid.node_count());
  for (std::size_t m = 0; m < spectrum.size(); ++m) {
    spectrum[m] = bump((grid.frequency_radius(m) - centre) / half_width);
  }
  return unit_l2_from_spectrum(grid, spectrum);
}

GridFunction make_single_band(const FilterBank& bank, int k0, const NormedSpace& space, const Vector& x, double fill) {
  return tensor(make_single_band_scalar(bank, k0, fill), space, x);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::step: return "step";
    case Family::tent: return "tent";
    case Family::psi_system: return "psi_system";
    case Family::single_band: return "single_band";
  }
  return "step";
}

Family family_from_string(const std::string& name) {
  if (name == "step") return Family::step;
  if (name == "tent") return Family::tent;
  if (name == "psi_system") return Family::psi_system;
  if (name == "single_band") return Family::single_band;
  throw std::invalid_argument("family: unknown construction '" + name + "'");
}

NormedSpace spec_space(const ConstructionSpec& spec) {
  return NormedSpace(Exponent::from_double(spec.space_exponent), spec.space_dimension);
}

void validate(const ConstructionSpec& spec) {
  const auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument(field + ": " + why);
  };
  if (spec.family == Family::tent) {
    if (spec.n < 1) fail("n", "must be >= 1");
    if (!(spec.r > 1.0)) fail("r", "must exceed 1");
    if (!(spec.p >= 1.0) || !std::isfinite(spec.p)) fail("p", "must be finite and >= 1");
    if (!(spec.alpha > 0.0 && spec.alpha < 1.0)) fail("alpha", "must lie in (0, 1)");
    return;
  }
  if (!(spec.space_exponent >= 1.0)) fail("space_exponent", "must be >= 1");
  if (spec.space_dimension < 1) fail("space_dimension", "must be >= 1");
  for (const auto& v : spec.vectors) {
    if (v.size() != spec.space_dimension) fail("vectors", "every vector needs space_dimension entries");
  }
  if (spec.family == Family::step && spec.vectors.empty()) fail("vectors", "step needs n >= 1 vectors");
  if (spec.family == Family::psi_system && spec.vectors.empty()) fail("vectors", "psi_system needs N >= 1 vectors");
  if (spec.family == Family::single_band && spec.vectors.size() != 1) fail("vectors", "single_band needs one vector");
  if (spec.family == Family::psi_system || spec.family == Family::single_band) {
    try {
      spec.grid.validate();
    } catch (const std::invalid_argument& e) {
      fail("grid", e.what());
    }
    if (spec.levels < 0) fail("levels", "must be >= 0");
    if (spec.family == Family::single_band && (spec.k0 < 0 || spec.k0 > spec.levels)) fail("k0", "must lie in [0, levels]");
    if (!(spec.fill > 0.0 && spec.fill <= 1.0)) fail("fill", "must lie in (0, 1]");
  }
}

PiecewiseFunction build_piecewise(const ConstructionSpec& spec) {
  validate(spec);
  if (spec.family == Family::step) return make_step(spec_space(spec), spec.vectors);
  if (spec.family == Family::tent) return make_tent_family(spec.n, spec.r, spec.p);
  throw std::invalid_argument("family: " + to_string(spec.family) + " is a grid construction");
}

GridFunction build_grid(const ConstructionSpec& spec) {
  validate(spec);
  const FilterBank bank(spec.grid, spec.levels, spec.transition_end);
  if (spec.family == Family::psi_system) return make_psi_system(bank, spec_space(spec), spec.vectors);
  if (spec.family == Family::single_band) return make_single_band(bank, spec.k0, spec_space(spec), spec.vectors[0], spec.fill);
  throw std::invalid_argument("family: " + to_string(spec.family) + " is a piecewise construction");
}

}  // namespace bg
