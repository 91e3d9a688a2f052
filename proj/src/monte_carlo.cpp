#include "bg/monte_carlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "bg/parallel.hpp"
#include "bg/random.hpp"

namespace bg {

MCEstimate batch_means(std::span<const double> draws, std::uint64_t seed) {
  MCEstimate est;
  est.samples = draws.size();
  est.seed = seed;
  if (draws.empty()) {
    est.std_error = std::numeric_limits<double>::infinity();
    return est;
  }
  double total = 0.0;
  for (double d : draws) total += d;
  est.mean = total / static_cast<double>(draws.size());
  if (draws.size() < kMinBatchedSamples) {
    est.std_error = std::numeric_limits<double>::infinity();
    return est;
  }
  double spread = 0.0;
  for (std::size_t b = 0; b < kBatchCount; ++b) {
    const std::size_t begin = draws.size() * b / kBatchCount;
    const std::size_t end = draws.size() * (b + 1) / kBatchCount;
    double s = 0.0;
    for (std::size_t i = begin; i < end; ++i) s += draws[i];
    const double dev = s / static_cast<double>(end - begin) - est.mean;
    spread += dev * dev;
  }
  est.std_error = std::sqrt(spread / static_cast<double>(kBatchCount * (kBatchCount - 1)));
  return est;
}

MCEstimate sqrt_estimate(const MCEstimate& m) {
  MCEstimate out = m;
  out.mean = std::sqrt(std::max(0.0, m.mean));
  if (m.exact) {
    out.std_error = 0.0;
  } else if (out.mean > 0.0) {
    out.std_error = m.std_error / (2.0 * out.mean);
  } else {
    out.std_error = std::sqrt(m.std_error);
  }
  return out;
}

std::vector<double> gaussian_sum_draws(const NormedSpace& space,
                                       std::span<const Vector> vectors,
                                       const MCConfig& cfg) {
  const std::size_t dim = space.dimension();
  const std::size_t count = vectors.size();
  std::vector<std::size_t> active;
  for (std::size_t n = 0; n < count; ++n) {
    if (vectors[n].size() != dim) throw std::invalid_argument("gaussian sum: vector dimension mismatch");
    for (double v : vectors[n]) {
      if (v != 0.0) {
        active.push_back(n);
        break;
      }
    }
  }
  std::vector<double> draws(cfg.samples, 0.0);
  if (active.empty()) return draws;
  const GaussianStream gauss(cfg.seed);
  parallel_chunks(cfg.samples, 512, [&](std::size_t begin, std::size_t end) {
    std::vector<double> g(count);
    Vector acc(dim);
    for (std::size_t s = begin; s < end; ++s) {
      gauss.fill(g, static_cast<std::uint64_t>(s) * count);
      std::fill(acc.begin(), acc.end(), 0.0);
      for (std::size_t n : active) {
        const double c = g[n];
        const double* x = vectors[n].data();
        for (std::size_t i = 0; i < dim; ++i) acc[i] += c * x[i];
      }
      const double nrm = space.norm(acc);
      draws[s] = nrm * nrm;
    }
  });
  return draws;
}

MCEstimate gaussian_second_moment(const NormedSpace& space,
                                  std::span<const Vector> vectors,
                                  const MCConfig& cfg) {
  for (const auto& v : vectors) {
    if (v.size() != space.dimension()) throw std::invalid_argument("gaussian_second_moment: dimension mismatch");
  }
  if (vectors.empty()) return MCEstimate::exact_value(0.0);
  if (!cfg.force_sampling && (space.is_hilbert() || vectors.size() == 1)) {
    double sum = 0.0;
    for (const auto& v : vectors) {
      const double n = space.norm(v);
      sum += n * n;
    }
    return MCEstimate::exact_value(sum);
  }
  const auto draws = gaussian_sum_draws(space, vectors, cfg);
  return batch_means(draws, cfg.seed);
}

double rademacher_second_moment(const NormedSpace& space, std::span<const Vector> vectors) {
  if (vectors.empty()) return 0.0;
  if (vectors.size() > 24) throw std::invalid_argument("rademacher_second_moment: at most 24 vectors");
  const std::size_t dim = space.dimension();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw std::invalid_argument("rademacher_second_moment: dimension mismatch");
  }
  // The sign of the first vector is fixed by symmetry.
  const std::size_t free = vectors.size() - 1;
  const std::uint64_t patterns = std::uint64_t{1} << free;
  double total = 0.0;
  Vector acc(dim);
  for (std::uint64_t mask = 0; mask < patterns; ++mask) {
    acc = vectors[0];
    for (std::size_t n = 1; n < vectors.size(); ++n) {
      const double sign = (mask >> (n - 1)) & 1 ? -1.0 : 1.0;
      for (std::size_t i = 0; i < dim; ++i) acc[i] += sign * vectors[n][i];
    }
    const double nrm = space.norm(acc);
    total += nrm * nrm;
  }
  return total / static_cast<double>(patterns);
}

}  // namespace bg
