#ifndef BG_PIECEWISE_HPP
#define BG_PIECEWISE_HPP

#include <cstddef>
#include <vector>

#include "bg/interval_set.hpp"
#include "bg/normed_space.hpp"

namespace bg {

enum class Interpolation { step, linear };

/// E-valued function on [a, b] that is affine on each segment (t_j, t_{j+1}]
/// and zero outside [a, b]. Segments may jump at breakpoints; at a breakpoint
/// the left segment's value is taken, matching indicators of (s, t].
class PiecewiseFunction {
 public:
  /// values[j] is the constant value on (t_j, t_{j+1}].
  static PiecewiseFunction step(NormedSpace space, std::vector<double> breakpoints,
                                std::vector<Vector> values);
  /// Continuous interpolation of values[j] at breakpoint t_j.
  static PiecewiseFunction linear(NormedSpace space, std::vector<double> breakpoints,
                                  std::vector<Vector> node_values);
  /// General form: segment j runs from starts[j] (at t_j+) to ends[j] (at t_{j+1}-).
  static PiecewiseFunction segments(NormedSpace space, std::vector<double> breakpoints,
                                    std::vector<Vector> starts, std::vector<Vector> ends);
  static PiecewiseFunction zero(NormedSpace space, double lower, double upper);

  const NormedSpace& space() const { return space_; }
  /// step iff every segment is constant.
  Interpolation interpolation() const;
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::size_t segment_count() const { return starts_.size(); }
  double lower() const { return breakpoints_.front(); }
  double upper() const { return breakpoints_.back(); }
  const Vector& segment_start(std::size_t j) const { return starts_[j]; }
  const Vector& segment_end(std::size_t j) const { return ends_[j]; }

  /// Value at t with the left-segment convention; f(a) is the right limit.
  Vector value(double t) const;
  Vector left_limit(double t) const;
  Vector right_limit(double t) const;
  /// Value of segment j's affine piece at t (no range check).
  Vector segment_value(std::size_t j, double t) const;
  bool is_zero() const;
  PiecewiseFunction scaled(double c) const;

 private:
  PiecewiseFunction(NormedSpace space, std::vector<double> breakpoints,
                    std::vector<Vector> starts, std::vector<Vector> ends);
  // Segment whose open interior contains t, or npos.
  std::size_t segment_containing(double t) const;

  NormedSpace space_;
  std::vector<double> breakpoints_;
  std::vector<Vector> starts_;
  std::vector<Vector> ends_;
};

/// int ||f(t)||^p dt for finite p. Constant and collinear segments, and
/// segments where p equals the space exponent, are integrated in closed form.
/// Other segments use 32-point Gauss-Legendre split at coordinate zero
/// crossings and graded toward them; relative error there is below 1e-12.
double lp_norm_power(const PiecewiseFunction& f, double p);
/// ||f||_{L^p(R;E)}; for p = inf the maximum over segment endpoints
/// (exact, ||.|| is convex along each segment).
double lp_norm(const PiecewiseFunction& f, const Exponent& p);

/// (T(h) f)(t) = f(t + h).
PiecewiseFunction translate(const PiecewiseFunction& f, double h);
/// a f + b g on the union of both breakpoint sets.
PiecewiseFunction combine(const PiecewiseFunction& f, double a, const PiecewiseFunction& g, double b);
/// ||T(h) f - f||_{L^p(R;E)}, exact up to the per-segment integration above.
double translate_diff_norm(const PiecewiseFunction& f, double h, const Exponent& p);
/// f * 1_subset; subset endpoints become breakpoints.
PiecewiseFunction restrict(const PiecewiseFunction& f, const IntervalSet& subset);
/// Derivative as a step function (jumps are not included).
PiecewiseFunction derivative(const PiecewiseFunction& f);
/// f(t+) - f(t-) at every breakpoint, with f = 0 outside [a, b].
std::vector<Vector> jumps(const PiecewiseFunction& f);

}  // namespace bg

#endif  // BG_PIECEWISE_HPP
