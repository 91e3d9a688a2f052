#include "bg/besov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bg/parallel.hpp"

namespace bg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_level(const FilterBank& bank, int k) {
  if (k < 0 || k > bank.levels()) throw std::out_of_range("level outside the filter bank");
}

double finite_exponent(const Exponent& p, const char* what) {
  if (p.is_infinite()) throw std::invalid_argument(std::string(what) + ": exponent must be finite");
  return p.value();
}

}  // namespace

GridFunction lp_block(const GridFunction& f, const FilterBank& bank, int k) {
  check_level(bank, k);
  if (!(f.grid() == bank.grid())) throw std::invalid_argument("lp_block: grid does not match the filter bank");
  return apply_multiplier(f, bank.multiplier(k));
}

std::vector<GridFunction> lp_blocks(const GridFunction& f, const FilterBank& bank) {
  if (!(f.grid() == bank.grid())) throw std::invalid_argument("lp_blocks: grid does not match the filter bank");
  const Spectrum s = forward(f);
  std::vector<GridFunction> out;
  out.reserve(bank.levels() + 1);
  for (int k = 0; k <= bank.levels(); ++k) out.push_back(apply_multiplier(s, f.space(), bank.multiplier(k)));
  return out;
}

std::vector<double> block_norms(const GridFunction& f, const FilterBank& bank, const Exponent& p) {
  if (!(f.grid() == bank.grid())) throw std::invalid_argument("block_norms: grid does not match the filter bank");
  const Spectrum s = forward(f);
  std::vector<double> out(bank.levels() + 1);
  parallel_chunks(out.size(), 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      out[k] = apply_multiplier(s, f.space(), bank.multiplier(static_cast<int>(k))).lp_norm(p);
    }
  });
  return out;
}

double besov_from_blocks(const std::vector<double>& block_norms, double s, const Exponent& q) {
  std::vector<double> weighted(block_norms.size());
  for (std::size_t k = 0; k < block_norms.size(); ++k) {
    weighted[k] = std::exp2(s * static_cast<double>(k)) * block_norms[k];
  }
  return sequence_norm(weighted, q);
}

double besov_norm_fourier(const GridFunction& f, double s, const Exponent& p, const Exponent& q,
                          const FilterBank& bank) {
  return besov_from_blocks(block_norms(f, bank, p), s, q);
}

std::vector<double> kernel_from_multiplier(const GridSpec& grid, const std::vector<double>& multiplier) {
  std::vector<std::complex<double>> spectrum(multiplier.begin(), multiplier.end());
  std::vector<double> kernel = inverse_scalar(grid, spectrum);
  const double scale = 1.0 / grid.cell_volume();
  for (double& v : kernel) v *= scale;
  return kernel;
}

namespace {

double kernel_norm(const GridSpec& grid, const std::vector<double>& kernel, const Exponent& p) {
  const double vol = grid.cell_volume();
  if (p.is_infinite()) return sequence_norm(kernel, p);
  return std::pow(vol, p.reciprocal()) * sequence_norm(kernel, p);
}

}  // namespace

double convolution_norm(const FilterBank& bank, int k, const Exponent& p) {
  if (k < 0 || k > bank.levels()) throw std::out_of_range("convolution_norm: level outside the filter bank");
  // The multiplier is radial, hence even in each axis: one quadrant suffices.
  const GridSpec& grid = bank.grid();
  const std::size_t side = quadrant_side(grid);
  std::vector<double> m(grid.dimension == 1 ? side : side * side);
  for (std::size_t j = 0; j < m.size(); ++j) {
    const double a = grid.frequency(grid.dimension == 1 ? j : j / side);
    const double b = grid.dimension == 1 ? 0.0 : grid.frequency(j % side);
    const double v = bank.profile(std::ldexp(std::hypot(a, b), -k));
    m[j] = v * v;
  }
  const std::vector<double> kernel = inverse_even_scalar(grid, std::move(m));
  const double scale = 1.0 / grid.cell_volume();
  if (p.is_infinite()) {
    double best = 0.0;
    for (double v : kernel) best = std::max(best, std::abs(v));
    return scale * best;
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < kernel.size(); ++j) {
    sum += quadrant_multiplicity(grid, j) * std::pow(std::abs(kernel[j]), p.value());
  }
  return scale * std::pow(grid.cell_volume() * sum, p.reciprocal());
}

double kernel_l1_norm(const FilterBank& bank, int k) {
  const auto mult = bank.multiplier(k);
  return kernel_norm(bank.grid(), kernel_from_multiplier(bank.grid(), {mult.begin(), mult.end()}),
                     Exponent::finite(1.0));
}

ModulusOfContinuity::ModulusOfContinuity(PiecewiseFunction f, const Exponent& p, std::size_t h_grid)
    : f_(std::move(f)),
      p_(finite_exponent(p, "modulus_of_continuity")),
      h_grid_(h_grid),
      is_step_(f_.interpolation() == Interpolation::step) {
  const auto& t = f_.breakpoints();
  std::vector<double> d;
  d.reserve(t.size() * (t.size() - 1) / 2);
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) d.push_back(t[j] - t[i]);
  }
  std::sort(d.begin(), d.end());
  for (double x : d) {
    if (differences_.empty() || x > differences_.back() * (1.0 + 1e-12)) differences_.push_back(x);
  }
  prefix_max_.resize(differences_.size());
  double best = 0.0;
  for (std::size_t i = 0; i < differences_.size(); ++i) {
    best = std::max(best, shift_power(differences_[i]));
    prefix_max_[i] = best;
  }
}

double ModulusOfContinuity::shift_power(double h) const {
  return lp_norm_power(combine(translate(f_, h), 1.0, f_, -1.0), p_);
}

double ModulusOfContinuity::operator()(double t) const {
  if (!(t > 0.0)) return 0.0;
  double best = shift_power(t);
  const auto it = std::upper_bound(differences_.begin(), differences_.end(), t);
  if (it != differences_.begin()) best = std::max(best, prefix_max_[static_cast<std::size_t>(it - differences_.begin()) - 1]);
  if (!is_step_) {
    for (std::size_t j = 1; j < h_grid_; ++j) {
      best = std::max(best, shift_power(t * static_cast<double>(j) / static_cast<double>(h_grid_)));
    }
  }
  return std::pow(best, 1.0 / p_);
}

double modulus_of_continuity(const PiecewiseFunction& f, double t, const Exponent& p, std::size_t h_grid) {
  return ModulusOfContinuity(f, p, h_grid)(t);
}

DifferenceNorm besov_norm_difference(const PiecewiseFunction& f, double s, const Exponent& p, const Exponent& q,
                                     std::size_t quad, std::size_t h_grid) {
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("besov_norm_difference: s must lie in (0, 1)");
  const double pv = finite_exponent(p, "besov_norm_difference");
  const double qv = finite_exponent(q, "besov_norm_difference");
  if (quad == 0) throw std::invalid_argument("besov_norm_difference: quad must be positive");

  DifferenceNorm out;
  const auto& t = f.breakpoints();
  double min_gap = kInf;
  for (std::size_t j = 0; j + 1 < t.size(); ++j) min_gap = std::min(min_gap, t[j + 1] - t[j]);
  const double count = static_cast<double>(t.size());
  out.t_min = std::min(1.0 / (16.0 * count * count), 0.5 * min_gap);
  if (f.is_zero()) return out;
  out.lp_part = lp_norm(f, p);

  double jump_power = 0.0;
  for (const auto& jump : jumps(f)) jump_power += std::pow(f.space().norm(jump), pv);
  const bool has_jumps = jump_power > 0.0;
  if (has_jumps && s >= 1.0 / pv) {
    out.integral_part = kInf;
    out.tail_share = 1.0;
    return out;
  }

  const ModulusOfContinuity rho(f, p, h_grid);
  const double log_lo = std::log(out.t_min);
  const double du = -log_lo / static_cast<double>(quad);
  std::vector<double> terms(quad);
  parallel_chunks(quad, 8, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double tau = std::exp(log_lo + (static_cast<double>(i) + 0.5) * du);
      terms[i] = std::pow(std::pow(tau, -s) * rho(tau), qv) * du;
    }
  });
  double body = 0.0;
  for (double v : terms) body += v;

  double tail;
  if (has_jumps) {
    const double e = (1.0 / pv - s) * qv;
    tail = std::pow(jump_power, qv / pv) * std::pow(out.t_min, e) / e;
  } else {
    const double e = (1.0 - s) * qv;
    tail = std::pow(lp_norm(derivative(f), p), qv) * std::pow(out.t_min, e) / e;
  }
  out.integral_part = std::pow(body + tail, 1.0 / qv);
  out.tail_share = body + tail > 0.0 ? tail / (body + tail) : 0.0;
  return out;
}

HolderNorm holder_norm(const PiecewiseFunction& f, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("holder_norm: alpha must lie in (0, 1)");
  const NormedSpace& space = f.space();
  std::vector<double> points{0.0};
  for (double x : f.breakpoints()) {
    if (x > 0.0 && x < 1.0) points.push_back(x);
  }
  points.push_back(1.0);

  HolderNorm out;
  std::vector<Vector> values;
  values.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = points[i];
    Vector v = f.value(x);
    const bool jump = (i > 0 && f.left_limit(x) != v) || (i + 1 < points.size() && f.right_limit(x) != v);
    if (jump) {
      out.sup_norm = kInf;
      out.seminorm = kInf;
      return out;
    }
    out.sup_norm = std::max(out.sup_norm, space.norm(v));
    values.push_back(std::move(v));
  }

  const std::size_t dim = space.dimension();
  std::vector<double> best(points.size(), 0.0);
  parallel_chunks(points.size(), 16, [&](std::size_t begin, std::size_t end) {
    Vector diff(dim);
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        for (std::size_t c = 0; c < dim; ++c) diff[c] = values[j][c] - values[i][c];
        best[i] = std::max(best[i], space.norm(diff) / std::pow(points[j] - points[i], alpha));
      }
    }
  });
  out.seminorm = *std::max_element(best.begin(), best.end());
  return out;
}

}  // namespace bg
