#ifndef BG_NORMED_SPACE_HPP
#define BG_NORMED_SPACE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace bg {

using Vector = std::vector<double>;

/// Integrability exponent in [1, inf]. Infinity is a distinguished state,
/// never a floating sentinel.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent infinity() { return Exponent(0.0, true); }
  /// Accepts any p >= 1 and +inf.
  static Exponent from_double(double p);

  bool is_infinite() const { return infinite_; }
  /// Throws std::logic_error for the infinite exponent.
  double value() const;
  /// 1/p, with 1/inf = 0.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / p_; }
  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.p_ == b.p_);
  }

 private:
  Exponent(double p, bool infinite) : p_(p), infinite_(infinite) {}
  double p_;
  bool infinite_;
};

/// l^p_n over the reals.
class NormedSpace {
 public:
  NormedSpace(Exponent p, std::size_t dimension);
  static NormedSpace lp(double p, std::size_t dimension);
  static NormedSpace linf(std::size_t dimension);
  static NormedSpace hilbert(std::size_t dimension) { return lp(2.0, dimension); }

  const Exponent& exponent() const { return p_; }
  std::size_t dimension() const { return dim_; }
  bool is_hilbert() const { return !p_.is_infinite() && p_.value() == 2.0; }

  /// Throws std::invalid_argument on dimension mismatch.
  double norm(std::span<const double> x) const;
  std::string to_string() const;

  friend bool operator==(const NormedSpace& a, const NormedSpace& b) {
    return a.p_ == b.p_ && a.dim_ == b.dim_;
  }

 private:
  Exponent p_;
  std::size_t dim_;
};

/// l^q norm of a finite sequence, computed relative to its largest entry.
double sequence_norm(std::span<const double> values, const Exponent& q);

/// E|N(0, sigma^2)|^p = sigma^p 2^{p/2} Gamma((p+1)/2) / sqrt(pi).
double gaussian_p_moment(double sigma, double p);

}  // namespace bg

#endif  // BG_NORMED_SPACE_HPP
