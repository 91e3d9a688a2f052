#include "bg/gamma.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bg/quadrature.hpp"

namespace bg {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double cell_boundary(double lo, double hi, std::size_t i, std::size_t cells) {
  return i == cells ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cells);
}

bool all_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

// Euclidean int ||f||_2^2 over all segments.
double euclidean_energy(const PiecewiseFunction& f) {
  const auto& t = f.breakpoints();
  double total = 0.0;
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const Vector& a = f.segment_start(j);
    const Vector& b = f.segment_end(j);
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * a[i] + a[i] * b[i] + b[i] * b[i];
    total += (t[j + 1] - t[j]) * s / 3.0;
  }
  return total;
}

double euclidean_sq(const Vector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double relative_residual(double energy, const std::vector<Vector>& coefficients) {
  if (energy <= 0.0) return 0.0;
  double captured = 0.0;
  for (const auto& c : coefficients) captured += euclidean_sq(c);
  return std::max(0.0, (energy - captured) / energy);
}

void check_alignment(const PiecewiseFunction& f, double lo, double hi, std::size_t cells) {
  const auto j = jumps(f);
  const auto& t = f.breakpoints();
  const double width = (hi - lo) / static_cast<double>(cells);
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (all_zero(j[k])) continue;
    const double pos = (t[k] - lo) / width;
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) > 1e-9) {
      throw std::invalid_argument("cell basis misaligned: breakpoint " + std::to_string(t[k]) +
                                  " is not a boundary of the " + std::to_string(cells) + " cells");
    }
  }
}

// int_u^v f over the part of f's domain inside [u, v], per coordinate.
void accumulate_integrals(const PiecewiseFunction& f, double lo, double hi, std::size_t cells,
                          std::vector<Vector>& out) {
  const auto& t = f.breakpoints();
  const std::size_t dim = f.space().dimension();
  const double width = (hi - lo) / static_cast<double>(cells);
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const double s0 = std::max(t[j], lo);
    const double s1 = std::min(t[j + 1], hi);
    if (!(s1 > s0)) continue;
    std::size_t first = static_cast<std::size_t>(std::clamp(std::floor((s0 - lo) / width), 0.0, double(cells - 1)));
    while (first > 0 && cell_boundary(lo, hi, first, cells) > s0) --first;
    for (std::size_t c = first; c < cells; ++c) {
      const double c0 = std::max(s0, cell_boundary(lo, hi, c, cells));
      const double c1 = std::min(s1, cell_boundary(lo, hi, c + 1, cells));
      if (cell_boundary(lo, hi, c, cells) >= s1) break;
      if (!(c1 > c0)) continue;
      const Vector a = f.segment_value(j, c0);
      const Vector b = f.segment_value(j, c1);
      for (std::size_t i = 0; i < dim; ++i) out[c][i] += 0.5 * (c1 - c0) * (a[i] + b[i]);
    }
  }
}

// int_0^delta (A + B tau) exp(i omega tau) dtau as (I0, I1) for A = 1, B = 1 parts.
std::pair<std::complex<double>, std::complex<double>> oscillatory_moments(double omega, double delta) {
  const std::complex<double> i(0.0, 1.0);
  if (std::abs(omega * delta) < 0.5) {
    std::complex<double> m0 = 0.0, m1 = 0.0;
    const auto& rule = gauss_legendre(16);
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double tau = 0.5 * delta * (rule.nodes[k] + 1.0);
      const std::complex<double> e = std::exp(i * (omega * tau));
      m0 += rule.weights[k] * e;
      m1 += rule.weights[k] * tau * e;
    }
    return {0.5 * delta * m0, 0.5 * delta * m1};
  }
  const std::complex<double> e = std::exp(i * (omega * delta));
  const std::complex<double> m0 = (e - 1.0) / (i * omega);
  const std::complex<double> m1 = delta * e / (i * omega) + (e - 1.0) / (omega * omega);
  return {m0, m1};
}

// Real grid Fourier basis element: spectral node and part (0 cos / self-conjugate, 1 sin).
struct GridMode {
  std::size_t node;
  int part;
  bool self_conjugate;
};

std::size_t conjugate_node(const GridSpec& g, std::size_t m) {
  const auto idx = g.axis_indices(m);
  const auto neg = [&](std::size_t i) { return (g.points - i) % g.points; };
  return g.dimension == 1 ? neg(idx[0]) : neg(idx[0]) * g.points + neg(idx[1]);
}

std::vector<GridMode> grid_modes(const GridSpec& g, std::size_t count) {
  std::vector<GridMode> modes;
  for (std::size_t m = 0; m < g.node_count(); ++m) {
    const std::size_t c = conjugate_node(g, m);
    if (c < m) continue;
    if (c == m) {
      modes.push_back({m, 0, true});
    } else {
      modes.push_back({m, 0, false});
      modes.push_back({m, 1, false});
    }
  }
  std::stable_sort(modes.begin(), modes.end(), [&](const GridMode& a, const GridMode& b) {
    return g.frequency_radius(a.node) < g.frequency_radius(b.node);
  });
  modes.resize(count);
  return modes;
}

std::size_t cells_per_axis(const GridSpec& g, std::size_t total) {
  const std::size_t per = g.dimension == 1 ? total : static_cast<std::size_t>(std::llround(std::sqrt(double(total))));
  const std::size_t check = g.dimension == 1 ? per : per * per;
  if (per == 0 || check != total || g.points % per != 0) {
    throw std::invalid_argument("cell basis: " + std::to_string(total) + " cells do not tile the " +
                                std::to_string(g.points) + "-point grid");
  }
  return per;
}

}  // namespace

std::string to_string(BasisKind kind) {
  return kind == BasisKind::cell_indicators ? "cells" : "trigonometric";
}

BasisKind basis_kind_from_string(const std::string& name) {
  if (name == "cells") return BasisKind::cell_indicators;
  if (name == "trigonometric") return BasisKind::trigonometric;
  throw std::invalid_argument("unknown basis '" + name + "' (expected cells or trigonometric)");
}

GammaOperator GammaOperator::from_piecewise(const PiecewiseFunction& f, BasisKind kind, std::size_t basis_size) {
  return from_piecewise(f, kind, basis_size, f.lower(), f.upper());
}

GammaOperator GammaOperator::from_piecewise(const PiecewiseFunction& f, BasisKind kind, std::size_t basis_size,
                                            double lower, double upper) {
  if (basis_size == 0) throw std::invalid_argument("gamma operator: basis size must be positive");
  if (!(lower < upper)) throw std::invalid_argument("gamma operator: empty domain");
  if (f.lower() < lower || f.upper() > upper) {
    throw std::invalid_argument("gamma operator: function extends beyond the domain");
  }
  GammaOperator op(f.space(), kind);
  op.source_ = f;
  op.lower_ = lower;
  op.upper_ = upper;
  const std::size_t dim = f.space().dimension();
  op.coefficients_.assign(basis_size, Vector(dim, 0.0));
  const double length = upper - lower;

  if (kind == BasisKind::cell_indicators) {
    if (f.interpolation() == Interpolation::step) check_alignment(f, lower, upper, basis_size);
    accumulate_integrals(f, lower, upper, basis_size, op.coefficients_);
    const double scale = 1.0 / std::sqrt(length / static_cast<double>(basis_size));
    for (auto& c : op.coefficients_) {
      for (double& x : c) x *= scale;
    }
  } else {
    const auto& t = f.breakpoints();
    const std::size_t top = basis_size / 2;
    for (std::size_t j = 0; j < f.segment_count(); ++j) {
      const double u = t[j];
      const double delta = t[j + 1] - t[j];
      const Vector& a = f.segment_start(j);
      const Vector& b = f.segment_end(j);
      // Constant mode.
      for (std::size_t i = 0; i < dim; ++i) op.coefficients_[0][i] += 0.5 * delta * (a[i] + b[i]) / std::sqrt(length);
      for (std::size_t k = 1; k <= top; ++k) {
        const double omega = 2.0 * std::numbers::pi * static_cast<double>(k) / length;
        const auto [m0, m1] = oscillatory_moments(omega, delta);
        const std::complex<double> phase = std::exp(std::complex<double>(0.0, omega * (u - lower)));
        const double norm = std::sqrt(2.0 / length);
        for (std::size_t i = 0; i < dim; ++i) {
          const double slope = (b[i] - a[i]) / delta;
          const std::complex<double> v = phase * (a[i] * m0 + slope * m1);
          if (2 * k - 1 < basis_size) op.coefficients_[2 * k - 1][i] += norm * v.real();
          if (2 * k < basis_size) op.coefficients_[2 * k][i] += norm * v.imag();
        }
      }
    }
  }
  op.truncation_residual_ = relative_residual(euclidean_energy(f), op.coefficients_);
  return op;
}

GammaOperator GammaOperator::from_grid(const GridFunction& f, BasisKind kind, std::size_t basis_size) {
  const GridSpec& g = f.grid();
  if (basis_size == 0 || basis_size > g.node_count()) {
    throw std::invalid_argument("gamma operator: basis size must lie in [1, N^d]");
  }
  GammaOperator op(f.space(), kind);
  op.grid_ = g;
  op.lower_ = -0.5 * g.period;
  op.upper_ = 0.5 * g.period;
  const std::size_t dim = f.space().dimension();
  op.coefficients_.assign(basis_size, Vector(dim, 0.0));
  const double vol = g.cell_volume();

  if (kind == BasisKind::cell_indicators) {
    const std::size_t per = cells_per_axis(g, basis_size);
    const std::size_t block = g.points / per;
    const double cell_measure = std::pow(static_cast<double>(block) * g.spacing(), g.dimension);
    const double scale = vol / std::sqrt(cell_measure);
    for (std::size_t node = 0; node < g.node_count(); ++node) {
      const auto idx = g.axis_indices(node);
      const std::size_t cell = g.dimension == 1 ? idx[0] / block : (idx[0] / block) * per + idx[1] / block;
      const auto v = f.at(node);
      for (std::size_t i = 0; i < dim; ++i) op.coefficients_[cell][i] += scale * v[i];
    }
  } else {
    const Spectrum s = forward(f);
    const auto modes = grid_modes(g, basis_size);
    const double scale = vol / std::pow(g.period, 0.5 * g.dimension);
    for (std::size_t n = 0; n < modes.size(); ++n) {
      for (std::size_t i = 0; i < dim; ++i) {
        const std::complex<double> c = scale * s.component(i)[modes[n].node];
        if (modes[n].self_conjugate) {
          op.coefficients_[n][i] = c.real();
        } else {
          op.coefficients_[n][i] = modes[n].part == 0 ? std::sqrt(2.0) * c.real() : -std::sqrt(2.0) * c.imag();
        }
      }
    }
  }
  double energy = 0.0;
  for (double v : f.values()) energy += vol * v * v;
  op.truncation_residual_ = relative_residual(energy, op.coefficients_);
  return op;
}

GammaOperator GammaOperator::from_coefficients(NormedSpace space, BasisKind kind, std::vector<Vector> coefficients) {
  for (const auto& c : coefficients) {
    if (c.size() != space.dimension()) throw std::invalid_argument("gamma operator: coefficient dimension mismatch");
  }
  GammaOperator op(std::move(space), kind);
  op.coefficients_ = std::move(coefficients);
  return op;
}

double GammaOperator::gram_error() const {
  const std::size_t m = coefficients_.size();
  double err = 0.0;
  if (grid_) {
    const GridSpec& g = *grid_;
    const double vol = g.cell_volume();
    if (basis_ == BasisKind::cell_indicators) {
      const std::size_t per = cells_per_axis(g, m);
      const std::size_t block = g.points / per;
      const double cell_measure = std::pow(static_cast<double>(block) * g.spacing(), g.dimension);
      const double count = std::pow(static_cast<double>(block), g.dimension);
      return std::abs(count * vol / cell_measure - 1.0);
    }
    const auto modes = grid_modes(g, m);
    std::vector<std::vector<double>> basis(m, std::vector<double>(g.node_count()));
    const double amp = 1.0 / std::pow(g.period, 0.5 * g.dimension);
    for (std::size_t n = 0; n < m; ++n) {
      const auto fidx = g.axis_indices(modes[n].node);
      for (std::size_t node = 0; node < g.node_count(); ++node) {
        const auto x = g.axis_indices(node);
        double phase = g.frequency(fidx[0]) * g.coordinate(x[0]);
        if (g.dimension == 2) phase += g.frequency(fidx[1]) * g.coordinate(x[1]);
        const double w = modes[n].self_conjugate ? 1.0 : std::sqrt(2.0);
        basis[n][node] = amp * w * (modes[n].part == 0 ? std::cos(phase) : std::sin(phase));
      }
    }
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a; b < m; ++b) {
        double dot = 0.0;
        for (std::size_t node = 0; node < g.node_count(); ++node) dot += basis[a][node] * basis[b][node];
        err = std::max(err, std::abs(vol * dot - (a == b ? 1.0 : 0.0)));
      }
    }
    return err;
  }
  if (!(upper_ > lower_)) return 0.0;
  const double length = upper_ - lower_;
  if (basis_ == BasisKind::cell_indicators) {
    const double width = length / static_cast<double>(m);
    for (std::size_t i = 0; i < m; ++i) {
      err = std::max(err, std::abs((cell_boundary(lower_, upper_, i + 1, m) - cell_boundary(lower_, upper_, i, m)) / width - 1.0));
    }
    return err;
  }
  // The equispaced rule with K > m nodes is exact for the products below.
  const std::size_t nodes = 2 * m + 2;
  std::vector<std::vector<double>> basis(m, std::vector<double>(nodes));
  for (std::size_t q = 0; q < nodes; ++q) {
    const double x = length * static_cast<double>(q) / static_cast<double>(nodes);
    basis[0][q] = 1.0 / std::sqrt(length);
    for (std::size_t n = 1; n < m; ++n) {
      const double k = static_cast<double>((n + 1) / 2);
      const double arg = 2.0 * std::numbers::pi * k * x / length;
      basis[n][q] = std::sqrt(2.0 / length) * (n % 2 == 1 ? std::cos(arg) : std::sin(arg));
    }
  }
  const double w = length / static_cast<double>(nodes);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      double dot = 0.0;
      for (std::size_t q = 0; q < nodes; ++q) dot += basis[a][q] * basis[b][q];
      err = std::max(err, std::abs(w * dot - (a == b ? 1.0 : 0.0)));
    }
  }
  return err;
}

double gamma_norm_hilbert(const PiecewiseFunction& f) {
  if (!f.space().is_hilbert()) throw std::invalid_argument("gamma_norm_hilbert: target space is not a Hilbert space");
  return std::sqrt(lp_norm_power(f, 2.0));
}

double gamma_norm_hilbert(const GridFunction& f) {
  if (!f.space().is_hilbert()) throw std::invalid_argument("gamma_norm_hilbert: target space is not a Hilbert space");
  return f.lp_norm(Exponent::finite(2.0));
}

double gamma_norm_hilbert(const GammaOperator& op) {
  if (!op.space().is_hilbert()) throw std::invalid_argument("gamma_norm_hilbert: target space is not a Hilbert space");
  double s = 0.0;
  for (const auto& c : op.coefficients()) s += euclidean_sq(c);
  return std::sqrt(s);
}

MCEstimate gamma_norm_mc(const GammaOperator& op, const MCConfig& cfg) {
  const auto& coefs = op.coefficients();
  const NormedSpace& space = op.space();
  if (std::all_of(coefs.begin(), coefs.end(), all_zero)) return MCEstimate::exact_value(0.0);
  if (!cfg.force_sampling) {
    if (space.is_hilbert()) return MCEstimate::exact_value(gamma_norm_hilbert(op));
    // Rank one: sum_n gamma_n a_n w has the law of (sum a_n^2)^{1/2} gamma w.
    const auto widest = std::max_element(coefs.begin(), coefs.end(),
                                         [](const Vector& a, const Vector& b) { return euclidean_sq(a) < euclidean_sq(b); });
    const Vector& w = *widest;
    const double ww = euclidean_sq(w);
    double scale = 0.0;
    double a2 = 0.0;
    bool rank_one = true;
    for (const auto& c : coefs) {
      double cw = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) cw += c[i] * w[i];
      const double a = cw / ww;
      for (std::size_t i = 0; i < w.size(); ++i) {
        scale = std::max(scale, std::abs(w[i]));
        if (std::abs(c[i] - a * w[i]) > 1e-14 * std::sqrt(ww)) rank_one = false;
      }
      a2 += a * a;
    }
    if (rank_one) return MCEstimate::exact_value(std::sqrt(a2) * space.norm(w));
  }
  MCConfig sampled = cfg;
  sampled.force_sampling = true;
  return sqrt_estimate(gaussian_second_moment(space, coefs, sampled));
}

DisjointGamma gamma_norm_disjoint_lp(const PiecewiseFunction& f, const MCConfig& cfg) {
  const NormedSpace& space = f.space();
  if (space.exponent().is_infinite()) throw std::invalid_argument("gamma_norm_disjoint_lp: needs finite p");
  const double p = space.exponent().value();
  const std::size_t dim = space.dimension();
  const auto& t = f.breakpoints();
  std::vector<double> energy(dim, 0.0);
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const Vector& a = f.segment_start(j);
    const Vector& b = f.segment_end(j);
    std::size_t active = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (a[i] == 0.0 && b[i] == 0.0) continue;
      ++active;
      energy[i] += (t[j + 1] - t[j]) * (a[i] * a[i] + a[i] * b[i] + b[i] * b[i]) / 3.0;
    }
    if (active > 1) {
      throw std::invalid_argument("gamma_norm_disjoint_lp: coordinate supports overlap on (" + std::to_string(t[j]) +
                                  ", " + std::to_string(t[j + 1]) + ")");
    }
  }
  DisjointGamma out;
  out.sigmas.resize(dim);
  double moment = 0.0;
  std::vector<Vector> diagonal;
  for (std::size_t i = 0; i < dim; ++i) {
    out.sigmas[i] = std::sqrt(energy[i]);
    moment += gaussian_p_moment(out.sigmas[i], p);
    Vector v(dim, 0.0);
    v[i] = out.sigmas[i];
    diagonal.push_back(std::move(v));
  }
  out.p_moment = std::pow(moment, 1.0 / p);
  out.l2_moment = sqrt_estimate(gaussian_second_moment(space, diagonal, cfg));
  return out;
}

GammaOperator restrict_gamma(const GammaOperator& op, const IntervalSet& subset) {
  if (!op.piecewise_source()) throw std::invalid_argument("restrict_gamma: needs an operator with a piecewise source");
  return GammaOperator::from_piecewise(restrict(*op.piecewise_source(), subset), op.basis(), op.basis_size(),
                                       op.lower(), op.upper());
}

GammaOperator ideal_compose(const GammaOperator& op, const std::vector<std::vector<double>>& t) {
  const std::size_t m = op.basis_size();
  if (t.size() != m) throw std::invalid_argument("ideal_compose: matrix has " + std::to_string(t.size()) +
                                                 " rows, expected " + std::to_string(m));
  for (const auto& row : t) {
    if (row.size() != m) throw std::invalid_argument("ideal_compose: matrix is not square");
  }
  const std::size_t dim = op.space().dimension();
  std::vector<Vector> out(m, Vector(dim, 0.0));
  for (std::size_t n = 0; n < m; ++n) {
    for (std::size_t k = 0; k < m; ++k) {
      if (t[n][k] == 0.0) continue;
      for (std::size_t i = 0; i < dim; ++i) out[n][i] += t[n][k] * op.coefficients()[k][i];
    }
  }
  if (op.basis() == BasisKind::cell_indicators && op.piecewise_source()) {
    // Still a Pettis operator: the step function sum_n c'_n h_n.
    std::vector<double> bps(m + 1);
    for (std::size_t i = 0; i <= m; ++i) bps[i] = cell_boundary(op.lower(), op.upper(), i, m);
    const double scale = 1.0 / std::sqrt((op.upper() - op.lower()) / static_cast<double>(m));
    std::vector<Vector> values = out;
    for (auto& v : values) {
      for (double& x : v) x *= scale;
    }
    return GammaOperator::from_piecewise(PiecewiseFunction::step(op.space(), bps, values), op.basis(), m,
                                         op.lower(), op.upper());
  }
  return GammaOperator::from_coefficients(op.space(), op.basis(), std::move(out));
}

double operator_norm(const std::vector<std::vector<double>>& t) {
  if (t.empty()) return 0.0;
  const std::size_t m = t.size();
  Eigen::MatrixXd a(m, t[0].size());
  for (std::size_t i = 0; i < m; ++i) {
    if (t[i].size() != t[0].size()) throw std::invalid_argument("operator_norm: ragged matrix");
    for (std::size_t j = 0; j < t[i].size(); ++j) a(i, j) = t[i][j];
  }
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues()(0);
}

PartitionReport partition_inequality_check(const GammaOperator& op, const std::vector<IntervalSet>& partition,
                                           PartitionDirection direction, const Exponent& exponent, double constant,
                                           const MCConfig& cfg) {
  if (direction == PartitionDirection::type) {
    if (exponent.is_infinite() || exponent.value() > 2.0) {
      throw std::invalid_argument("partition check: type exponent must lie in [1, 2]");
    }
  } else if (!exponent.is_infinite() && exponent.value() < 2.0) {
    throw std::invalid_argument("partition check: cotype exponent must lie in [2, inf]");
  }
  if (!(constant >= 1.0)) throw std::invalid_argument("partition check: constant must be >= 1");
  if (partition.empty()) throw std::invalid_argument("partition check: empty partition");

  const IntervalSet domain = IntervalSet::single(op.lower(), op.upper());
  const double length = op.upper() - op.lower();
  IntervalSet covered;
  for (std::size_t a = 0; a < partition.size(); ++a) {
    for (std::size_t b = a + 1; b < partition.size(); ++b) {
      if (partition[a].intersect(partition[b]).measure() > 1e-12 * length) {
        throw std::invalid_argument("partition check: overlapping partition (sets " + std::to_string(a) + " and " +
                                    std::to_string(b) + ")");
      }
    }
    covered = covered.unite(partition[a].intersect(domain));
  }
  if (covered.measure() < length * (1.0 - 1e-12)) {
    throw std::invalid_argument("partition check: the sets do not cover the domain");
  }

  PartitionReport r;
  r.direction = direction;
  r.exponent = exponent;
  r.constant = constant;
  r.whole = gamma_norm_mc(op, cfg);
  std::vector<GammaOperator> restricted;
  for (const auto& s : partition) {
    restricted.push_back(restrict_gamma(op, s));
    r.pieces.push_back(gamma_norm_mc(restricted.back(), cfg));
  }

  std::vector<double> x;
  for (const auto& e : r.pieces) x.push_back(e.mean);
  const double agg = sequence_norm(x, exponent);
  // Linear propagation: the estimates share random numbers, so errors add.
  double agg_se = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double weight;
    if (agg == 0.0) {
      weight = 1.0;
    } else if (exponent.is_infinite()) {
      weight = x[j] == agg ? 1.0 : 0.0;
    } else {
      weight = std::pow(x[j] / agg, exponent.value() - 1.0);
    }
    if (weight > 0.0) agg_se += weight * r.pieces[j].std_error;
  }
  if (direction == PartitionDirection::type) {
    r.lhs = r.whole.mean;
    r.lhs_se = r.whole.std_error;
    r.rhs = constant * agg;
    r.rhs_se = constant * agg_se;
  } else {
    r.lhs = agg;
    r.lhs_se = agg_se;
    r.rhs = constant * r.whole.mean;
    r.rhs_se = constant * r.whole.std_error;
  }
  r.margin = r.rhs - r.lhs;
  r.tolerance = 3.0 * (r.lhs_se + r.rhs_se);
  r.holds = r.margin >= -r.tolerance;

  if (op.space().is_hilbert()) {
    const double whole = gamma_norm_hilbert(op);
    double parts = 0.0;
    for (const auto& g : restricted) {
      const double v = gamma_norm_hilbert(g);
      parts += v * v;
    }
    r.pythagoras_residual = std::abs(whole * whole - parts);
  } else {
    r.pythagoras_residual = kNaN;
  }
  return r;
}

}  // namespace bg
