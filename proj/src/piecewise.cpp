#include "bg/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bg/quadrature.hpp"

namespace bg {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

void check_breakpoints(const std::vector<double>& t) {
  if (t.size() < 2) throw std::invalid_argument("piecewise function needs at least two breakpoints");
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    if (!(t[j] < t[j + 1])) throw std::invalid_argument("breakpoints must be strictly increasing");
  }
}

void check_values(const NormedSpace& space, const std::vector<Vector>& values) {
  for (const auto& v : values) {
    if (v.size() != space.dimension()) throw std::invalid_argument("piecewise value has wrong dimension");
  }
}

// int_0^1 |a + (b - a) s|^p ds
double scalar_segment_power(double a, double b, double p) {
  if (a == b) return std::pow(std::abs(a), p);
  const double scale = std::max(std::abs(a), std::abs(b));
  if (std::abs(b - a) <= 1e-3 * scale) {
    // Same sign and nearly constant: analytic integrand.
    return integrate_gl([&](double s) { return std::pow(std::abs(a + (b - a) * s), p); }, 0.0, 1.0, 16);
  }
  const auto antiderivative = [p](double y) { return y * std::pow(std::abs(y), p); };
  return (antiderivative(b) - antiderivative(a)) / ((p + 1.0) * (b - a));
}

// int over [lo, hi] with graded subdivision toward endpoints flagged singular.
template <class Fn>
double graded_integral(Fn&& fn, double lo, double hi, bool singular_lo, bool singular_hi) {
  constexpr int kLevels = 24;
  if (!singular_lo && !singular_hi) return integrate_gl(fn, lo, hi, 32);
  const double mid = 0.5 * (lo + hi);
  double total = 0.0;
  const auto half = [&](double inner, double outer, bool singular) {
    if (!singular) return integrate_gl(fn, std::min(inner, outer), std::max(inner, outer), 32);
    double sum = 0.0;
    double far = outer;
    for (int k = 0; k < kLevels; ++k) {
      const double near = inner + 0.5 * (far - inner);
      sum += integrate_gl(fn, std::min(near, far), std::max(near, far), 32);
      far = near;
    }
    return sum + integrate_gl(fn, std::min(inner, far), std::max(inner, far), 32);
  };
  total += half(lo, mid, singular_lo);
  total += half(hi, mid, singular_hi);
  return total;
}

double segment_power(const NormedSpace& space, const Vector& start, const Vector& end, double length,
                     double p) {
  if (length <= 0.0) return 0.0;
  const std::size_t dim = start.size();
  if (start == end) return length * std::pow(space.norm(start), p);

  // Collinear start/end: ||f(s)|| = |alpha + (beta - alpha) s| ||w||.
  const double ns = space.norm(start);
  const double ne = space.norm(end);
  const Vector& w = ns >= ne ? start : end;
  const Vector& other = ns >= ne ? end : start;
  double ww = 0.0, wo = 0.0, wmax = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    ww += w[i] * w[i];
    wo += w[i] * other[i];
    wmax = std::max(wmax, std::abs(w[i]));
  }
  if (ww > 0.0) {
    const double lambda = wo / ww;
    double residual = 0.0;
    for (std::size_t i = 0; i < dim; ++i) residual = std::max(residual, std::abs(other[i] - lambda * w[i]));
    if (residual <= 1e-15 * wmax) {
      const double nw = space.norm(w);
      const double a = ns >= ne ? 1.0 : lambda;
      const double b = ns >= ne ? lambda : 1.0;
      return length * std::pow(nw, p) * scalar_segment_power(a, b, p);
    }
  }

  const Exponent& r = space.exponent();
  if (!r.is_infinite() && r.value() == p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) sum += scalar_segment_power(start[i], end[i], p);
    return length * sum;
  }

  // Split at coordinate sign changes; the norm is analytic between them.
  std::vector<double> cuts{0.0, 1.0};
  for (std::size_t i = 0; i < dim; ++i) {
    if ((start[i] < 0.0 && end[i] > 0.0) || (start[i] > 0.0 && end[i] < 0.0)) {
      cuts.push_back(start[i] / (start[i] - end[i]));
    }
  }
  if (r.is_infinite()) {
    // The max switches where |y_i| = |y_k|.
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = i + 1; k < dim; ++k) {
        for (double sign : {1.0, -1.0}) {
          const double a = start[i] - sign * start[k];
          const double b = end[i] - sign * end[k];
          if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) cuts.push_back(a / (a - b));
        }
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const auto vanishes_at = [&](double s) {
    if (s == 0.0 || s == 1.0) {
      const Vector& v = s == 0.0 ? start : end;
      return std::any_of(v.begin(), v.end(), [](double x) { return x == 0.0; }) &&
             std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; });
    }
    return true;
  };
  Vector point(dim);
  const auto integrand = [&](double s) {
    for (std::size_t i = 0; i < dim; ++i) point[i] = start[i] + (end[i] - start[i]) * s;
    return std::pow(space.norm(point), p);
  };
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    if (cuts[c + 1] <= cuts[c]) continue;
    total += graded_integral(integrand, cuts[c], cuts[c + 1], vanishes_at(cuts[c]), vanishes_at(cuts[c + 1]));
  }
  return length * total;
}

Vector interpolate(const Vector& a, const Vector& b, double s) {
  if (s == 0.0) return a;
  if (s == 1.0) return b;
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + (b[i] - a[i]) * s;
  return out;
}

std::vector<double> merged_breakpoints(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

PiecewiseFunction::PiecewiseFunction(NormedSpace space, std::vector<double> breakpoints,
                                     std::vector<Vector> starts, std::vector<Vector> ends)
    : space_(space), breakpoints_(std::move(breakpoints)), starts_(std::move(starts)), ends_(std::move(ends)) {}

PiecewiseFunction PiecewiseFunction::step(NormedSpace space, std::vector<double> breakpoints,
                                          std::vector<Vector> values) {
  check_breakpoints(breakpoints);
  if (values.size() + 1 != breakpoints.size()) {
    throw std::invalid_argument("step function needs one value per segment");
  }
  check_values(space, values);
  auto ends = values;
  return PiecewiseFunction(space, std::move(breakpoints), std::move(values), std::move(ends));
}

PiecewiseFunction PiecewiseFunction::linear(NormedSpace space, std::vector<double> breakpoints,
                                            std::vector<Vector> node_values) {
  check_breakpoints(breakpoints);
  if (node_values.size() != breakpoints.size()) {
    throw std::invalid_argument("linear function needs one value per breakpoint");
  }
  check_values(space, node_values);
  std::vector<Vector> starts(node_values.begin(), node_values.end() - 1);
  std::vector<Vector> ends(node_values.begin() + 1, node_values.end());
  return PiecewiseFunction(space, std::move(breakpoints), std::move(starts), std::move(ends));
}

PiecewiseFunction PiecewiseFunction::segments(NormedSpace space, std::vector<double> breakpoints,
                                              std::vector<Vector> starts, std::vector<Vector> ends) {
  check_breakpoints(breakpoints);
  if (starts.size() + 1 != breakpoints.size() || ends.size() != starts.size()) {
    throw std::invalid_argument("segment form needs start and end values per segment");
  }
  check_values(space, starts);
  check_values(space, ends);
  return PiecewiseFunction(space, std::move(breakpoints), std::move(starts), std::move(ends));
}

PiecewiseFunction PiecewiseFunction::zero(NormedSpace space, double lower, double upper) {
  return step(space, {lower, upper}, {Vector(space.dimension(), 0.0)});
}

Interpolation PiecewiseFunction::interpolation() const {
  for (std::size_t j = 0; j < starts_.size(); ++j) {
    if (starts_[j] != ends_[j]) return Interpolation::linear;
  }
  return Interpolation::step;
}

std::size_t PiecewiseFunction::segment_containing(double t) const {
  if (!(t > lower()) || !(t < upper())) return npos;
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return t > breakpoints_[j] ? j : npos;
}

Vector PiecewiseFunction::segment_value(std::size_t j, double t) const {
  const double s = (t - breakpoints_[j]) / (breakpoints_[j + 1] - breakpoints_[j]);
  return interpolate(starts_[j], ends_[j], s);
}

Vector PiecewiseFunction::left_limit(double t) const {
  if (!(t > lower()) || t > upper()) return Vector(space_.dimension(), 0.0);
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return segment_value(j, t);
}

Vector PiecewiseFunction::right_limit(double t) const {
  if (t < lower() || !(t < upper())) return Vector(space_.dimension(), 0.0);
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
  const std::size_t j = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return segment_value(j, t);
}

Vector PiecewiseFunction::value(double t) const {
  return t == lower() ? right_limit(t) : left_limit(t);
}

bool PiecewiseFunction::is_zero() const {
  const auto zero = [](const Vector& v) { return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }); };
  return std::all_of(starts_.begin(), starts_.end(), zero) && std::all_of(ends_.begin(), ends_.end(), zero);
}

PiecewiseFunction PiecewiseFunction::scaled(double c) const {
  PiecewiseFunction out = *this;
  for (auto* list : {&out.starts_, &out.ends_}) {
    for (auto& v : *list) {
      for (double& x : v) x *= c;
    }
  }
  return out;
}

double lp_norm_power(const PiecewiseFunction& f, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm_power: p must be in [1, inf)");
  const auto& t = f.breakpoints();
  double total = 0.0;
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    total += segment_power(f.space(), f.segment_start(j), f.segment_end(j), t[j + 1] - t[j], p);
  }
  return total;
}

double lp_norm(const PiecewiseFunction& f, const Exponent& p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (std::size_t j = 0; j < f.segment_count(); ++j) {
      m = std::max({m, f.space().norm(f.segment_start(j)), f.space().norm(f.segment_end(j))});
    }
    return m;
  }
  return std::pow(lp_norm_power(f, p.value()), 1.0 / p.value());
}

PiecewiseFunction translate(const PiecewiseFunction& f, double h) {
  std::vector<double> t = f.breakpoints();
  for (double& x : t) x -= h;
  // Rounding can merge breakpoints for huge |h|; drop the degenerate segments.
  std::vector<double> kept{t.front()};
  std::vector<Vector> starts, ends;
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    if (t[j + 1] > kept.back()) {
      kept.push_back(t[j + 1]);
      starts.push_back(f.segment_start(j));
      ends.push_back(f.segment_end(j));
    }
  }
  if (starts.empty()) return PiecewiseFunction::zero(f.space(), t.front(), std::nextafter(t.front(), INFINITY));
  return PiecewiseFunction::segments(f.space(), std::move(kept), std::move(starts), std::move(ends));
}

PiecewiseFunction combine(const PiecewiseFunction& f, double a, const PiecewiseFunction& g, double b) {
  if (!(f.space() == g.space())) throw std::invalid_argument("combine: functions live in different spaces");
  const auto t = merged_breakpoints(f.breakpoints(), g.breakpoints());
  const std::size_t dim = f.space().dimension();
  std::vector<Vector> starts, ends;
  starts.reserve(t.size() - 1);
  ends.reserve(t.size() - 1);
  const auto piece_values = [&](const PiecewiseFunction& h, double lo, double hi, Vector& s, Vector& e) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > h.lower()) || !(mid < h.upper())) {
      s.assign(dim, 0.0);
      e.assign(dim, 0.0);
      return;
    }
    auto it = std::upper_bound(h.breakpoints().begin(), h.breakpoints().end(), mid);
    const std::size_t j = static_cast<std::size_t>(it - h.breakpoints().begin()) - 1;
    s = h.segment_value(j, lo);
    e = h.segment_value(j, hi);
  };
  Vector fs, fe, gs, ge;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    piece_values(f, t[k], t[k + 1], fs, fe);
    piece_values(g, t[k], t[k + 1], gs, ge);
    Vector s(dim), e(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      s[i] = a * fs[i] + b * gs[i];
      e[i] = a * fe[i] + b * ge[i];
    }
    starts.push_back(std::move(s));
    ends.push_back(std::move(e));
  }
  return PiecewiseFunction::segments(f.space(), t, std::move(starts), std::move(ends));
}

double translate_diff_norm(const PiecewiseFunction& f, double h, const Exponent& p) {
  if (h == 0.0) return 0.0;
  return lp_norm(combine(translate(f, h), 1.0, f, -1.0), p);
}

PiecewiseFunction restrict(const PiecewiseFunction& f, const IntervalSet& subset) {
  std::vector<double> cuts;
  for (const auto& piece : subset.intervals()) {
    for (double x : {piece.lo, piece.hi}) {
      if (x > f.lower() && x < f.upper()) cuts.push_back(x);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  const auto t = merged_breakpoints(f.breakpoints(), cuts);
  const std::size_t dim = f.space().dimension();
  std::vector<Vector> starts, ends;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const double mid = 0.5 * (t[k] + t[k + 1]);
    if (subset.contains_interior(mid)) {
      auto it = std::upper_bound(f.breakpoints().begin(), f.breakpoints().end(), mid);
      const std::size_t j = static_cast<std::size_t>(it - f.breakpoints().begin()) - 1;
      starts.push_back(f.segment_value(j, t[k]));
      ends.push_back(f.segment_value(j, t[k + 1]));
    } else {
      starts.emplace_back(dim, 0.0);
      ends.emplace_back(dim, 0.0);
    }
  }
  return PiecewiseFunction::segments(f.space(), t, std::move(starts), std::move(ends));
}

PiecewiseFunction derivative(const PiecewiseFunction& f) {
  const auto& t = f.breakpoints();
  std::vector<Vector> slopes;
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    Vector s(f.space().dimension());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = (f.segment_end(j)[i] - f.segment_start(j)[i]) / (t[j + 1] - t[j]);
    slopes.push_back(std::move(s));
  }
  return PiecewiseFunction::step(f.space(), t, std::move(slopes));
}

std::vector<Vector> jumps(const PiecewiseFunction& f) {
  const std::size_t m = f.segment_count();
  const std::size_t dim = f.space().dimension();
  std::vector<Vector> out;
  out.reserve(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    Vector jump(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
      const double right = j < m ? f.segment_start(j)[i] : 0.0;
      const double left = j > 0 ? f.segment_end(j - 1)[i] : 0.0;
      jump[i] = right - left;
    }
    out.push_back(std::move(jump));
  }
  return out;
}

}  // namespace bg
