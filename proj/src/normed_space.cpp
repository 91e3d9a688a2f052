#include "bg/normed_space.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace bg {

Exponent Exponent::finite(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("exponent must be a finite number >= 1, got " + std::to_string(p));
  }
  return Exponent(p, false);
}

Exponent Exponent::from_double(double p) {
  if (p == std::numeric_limits<double>::infinity()) return infinity();
  return finite(p);
}

double Exponent::value() const {
  if (infinite_) throw std::logic_error("value() of the infinite exponent");
  return p_;
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << p_;
  return os.str();
}

NormedSpace::NormedSpace(Exponent p, std::size_t dimension) : p_(p), dim_(dimension) {
  if (dimension == 0) throw std::invalid_argument("normed space dimension must be >= 1");
}

NormedSpace NormedSpace::lp(double p, std::size_t dimension) {
  return NormedSpace(Exponent::from_double(p), dimension);
}

NormedSpace NormedSpace::linf(std::size_t dimension) {
  return NormedSpace(Exponent::infinity(), dimension);
}

double NormedSpace::norm(std::span<const double> x) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("vector of dimension " + std::to_string(x.size()) +
                                " in a space of dimension " + std::to_string(dim_));
  }
  return sequence_norm(x, p_);
}

std::string NormedSpace::to_string() const {
  return "l^" + p_.to_string() + "_" + std::to_string(dim_);
}

double sequence_norm(std::span<const double> values, const Exponent& q) {
  double largest = 0.0;
  for (double v : values) largest = std::max(largest, std::abs(v));
  if (q.is_infinite() || largest == 0.0) return largest;
  const double e = q.value();
  double sum = 0.0;
  if (e == 1.0) {
    for (double v : values) sum += std::abs(v) / largest;
    return largest * sum;
  }
  if (e == 2.0) {
    for (double v : values) {
      const double r = v / largest;
      sum += r * r;
    }
    return largest * std::sqrt(sum);
  }
  for (double v : values) sum += std::pow(std::abs(v) / largest, e);
  return largest * std::pow(sum, 1.0 / e);
}

double gaussian_p_moment(double sigma, double p) {
  if (sigma < 0.0) throw std::invalid_argument("gaussian_p_moment: sigma must be >= 0");
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("gaussian_p_moment: p must be in [1, inf)");
  if (sigma == 0.0) return 0.0;
  const double log_moment = 0.5 * p * std::numbers::ln2 + std::lgamma(0.5 * (p + 1.0)) -
                            0.5 * std::log(std::numbers::pi);
  return std::pow(sigma, p) * std::exp(log_moment);
}

}  // namespace bg
