#ifndef BG_QUADRATURE_HPP
#define BG_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace bg {

struct GaussLegendreRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton on the Legendre recurrence), cached
/// for the sizes used internally.
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Integral of fn over [a, b] with the n-point rule.
template <class Fn>
double integrate_gl(Fn&& fn, double a, double b, std::size_t n = 32) {
  const auto& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  return half * sum;
}

}  // namespace bg

#endif  // BG_QUADRATURE_HPP
