#ifndef BG_BESOV_HPP
#define BG_BESOV_HPP

#include <cstddef>
#include <vector>

#include "bg/filter_bank.hpp"
#include "bg/grid.hpp"
#include "bg/piecewise.hpp"

namespace bg {

/// phi_k * f = F^{-1}(phi_hat_k F f).
GridFunction lp_block(const GridFunction& f, const FilterBank& bank, int k);
/// All blocks k = 0..K from one forward transform.
std::vector<GridFunction> lp_blocks(const GridFunction& f, const FilterBank& bank);
/// Grid L^p norms of phi_k * f for k = 0..K.
std::vector<double> block_norms(const GridFunction& f, const FilterBank& bank, const Exponent& p);

/// l^q norm over k of 2^{ks} b_k.
double besov_from_blocks(const std::vector<double>& block_norms, double s, const Exponent& q);
double besov_norm_fourier(const GridFunction& f, double s, const Exponent& p, const Exponent& q,
                          const FilterBank& bank);

/// Samples of the kernel with spectrum m, scaled so that h^d sum_y K(x - y) f(y)
/// realizes F^{-1}(m F f).
std::vector<double> kernel_from_multiplier(const GridSpec& grid, const std::vector<double>& multiplier);
/// Grid L^p norm of the kernel of phi_hat(2^{-k} .)^2, i.e. of phi_(k) * phi_(k)
/// for the dilates phi_(k) of phi (k = 0 is phi itself, not phi_0).
double convolution_norm(const FilterBank& bank, int k, const Exponent& p);
/// Grid L^1 norm of the kernel of phi_hat_k.
double kernel_l1_norm(const FilterBank& bank, int k);

/// rho_p(f, t) = sup_{|h| <= t} ||T(h) f - f||_p over a finite candidate set:
/// every breakpoint difference d <= t, the point t, and t j / h_grid for
/// j = 1..h_grid (the last set only for non-step f). The result is a lower
/// bound of the supremum. For step functions ||T(h) f - f||_p^p is piecewise
/// linear in h with kinks at breakpoint differences, so there it is exact.
/// Only h > 0 is evaluated: ||T(-h) f - f|| = ||T(h) f - f|| by substitution.
class ModulusOfContinuity {
 public:
  ModulusOfContinuity(PiecewiseFunction f, const Exponent& p, std::size_t h_grid = 64);

  double operator()(double t) const;
  bool exact() const { return is_step_; }

 private:
  double shift_power(double h) const;

  PiecewiseFunction f_;
  double p_;
  std::size_t h_grid_;
  bool is_step_;
  std::vector<double> differences_;  // sorted, distinct, in (0, span]
  std::vector<double> prefix_max_;   // max of shift_power over differences_[0..i]
};

double modulus_of_continuity(const PiecewiseFunction& f, double t, const Exponent& p, std::size_t h_grid = 64);

struct DifferenceNorm {
  double lp_part = 0.0;        // ||f||_p
  double integral_part = 0.0;  // (int_0^1 (t^{-s} rho_p(f, t))^q dt/t)^{1/q}
  double tail_share = 0.0;     // fraction of the q-th power contributed below t_min
  double t_min = 0.0;
  double total() const { return lp_part + integral_part; }
};

/// ||f||_p + (int_0^1 (t^{-s} rho_p(f, t))^q dt/t)^{1/q} for 0 < s < 1, finite p, q.
/// Midpoint rule in log t on `quad` points over [t_min, 1] with
/// t_min = min(1 / (4 #breakpoints)^2, min gap / 2). Below t_min the small-shift
/// asymptotics are integrated analytically: rho_p(f, t)^p = t sum_j ||J_j||^p
/// over the jumps J_j (exact for step functions below half the minimum gap), or
/// rho_p(f, t) = t ||f'||_p for continuous f. With jumps and s >= 1/p the
/// integral diverges and integral_part is +inf.
DifferenceNorm besov_norm_difference(const PiecewiseFunction& f, double s, const Exponent& p, const Exponent& q,
                                     std::size_t quad = 256, std::size_t h_grid = 64);

struct HolderNorm {
  double sup_norm = 0.0;
  double seminorm = 0.0;
  double total() const { return sup_norm + seminorm; }
};

/// sup_{[0,1]} ||f|| + sup_{0<=s<t<=1} ||f(t) - f(s)|| / (t - s)^alpha, with f
/// extended by zero to [0, 1]. On a pair of segments the quotient is a convex
/// function over a concave positive one, hence quasi-convex, so its supremum is
/// attained at pairs of breakpoints (or of 0, 1). Any jump in [0, 1] other than
/// at 0 itself gives +inf.
HolderNorm holder_norm(const PiecewiseFunction& f, double alpha);

}  // namespace bg

#endif  // BG_BESOV_HPP
