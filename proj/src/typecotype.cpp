#include "bg/typecotype.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bg/parallel.hpp"
#include "bg/random.hpp"

namespace bg {

namespace {

std::vector<Vector> nonzero(const std::vector<Vector>& vectors) {
  std::vector<Vector> out;
  for (const auto& v : vectors) {
    if (std::any_of(v.begin(), v.end(), [](double x) { return x != 0.0; })) out.push_back(v);
  }
  return out;
}

double aggregate(const NormedSpace& space, const Exponent& p, const std::vector<Vector>& vectors) {
  std::vector<double> norms;
  for (const auto& v : vectors) norms.push_back(space.norm(v));
  return sequence_norm(norms, p);
}

std::vector<Vector> checked_nonzero(const NormedSpace& space, const std::vector<Vector>& vectors) {
  for (const auto& v : vectors) {
    if (v.size() != space.dimension()) throw std::invalid_argument("ratio: vector dimension mismatch");
  }
  auto kept = nonzero(vectors);
  if (kept.empty()) throw std::invalid_argument("ratio: all vectors are zero");
  return kept;
}

void check_exponent(ConstantDirection direction, const Exponent& e) {
  if (direction == ConstantDirection::type) {
    if (e.is_infinite() || e.value() > 2.0) throw std::invalid_argument("type exponent must lie in [1, 2]");
  } else if (!e.is_infinite() && e.value() < 2.0) {
    throw std::invalid_argument("cotype exponent must lie in [2, inf]");
  }
}

double ratio(const NormedSpace& space, ConstantDirection direction, const Exponent& e, const std::vector<Vector>& v,
             const MCConfig& cfg) {
  return direction == ConstantDirection::type ? type_ratio(space, e, v, cfg) : cotype_ratio(space, e, v, cfg);
}

double rademacher_ratio(const NormedSpace& space, ConstantDirection direction, const Exponent& e,
                        const std::vector<Vector>& v) {
  return direction == ConstantDirection::type ? rademacher_type_ratio(space, e, v)
                                              : rademacher_cotype_ratio(space, e, v);
}

void normalize(std::vector<Vector>& tuple) {
  double scale = 0.0;
  for (const auto& v : tuple) {
    double s = 0.0;
    for (double x : v) s += x * x;
    scale = std::max(scale, std::sqrt(s));
  }
  if (scale == 0.0) return;
  for (auto& v : tuple) {
    for (double& x : v) x /= scale;
  }
}

struct RestartResult {
  double value = -1.0;
  std::vector<Vector> tuple;
  std::size_t evaluations = 0;
};

}  // namespace

std::string to_string(ConstantDirection d) { return d == ConstantDirection::type ? "type" : "cotype"; }

double type_ratio(const NormedSpace& space, const Exponent& p, const std::vector<Vector>& vectors,
                  const MCConfig& cfg) {
  const auto kept = checked_nonzero(space, vectors);
  const double num = std::sqrt(gaussian_second_moment(space, kept, cfg).mean);
  return num / aggregate(space, p, kept);
}

double cotype_ratio(const NormedSpace& space, const Exponent& q, const std::vector<Vector>& vectors,
                    const MCConfig& cfg) {
  const auto kept = checked_nonzero(space, vectors);
  const double den = std::sqrt(gaussian_second_moment(space, kept, cfg).mean);
  return aggregate(space, q, kept) / den;
}

double rademacher_type_ratio(const NormedSpace& space, const Exponent& p, const std::vector<Vector>& vectors) {
  const auto kept = checked_nonzero(space, vectors);
  return std::sqrt(rademacher_second_moment(space, kept)) / aggregate(space, p, kept);
}

double rademacher_cotype_ratio(const NormedSpace& space, const Exponent& q, const std::vector<Vector>& vectors) {
  const auto kept = checked_nonzero(space, vectors);
  return aggregate(space, q, kept) / std::sqrt(rademacher_second_moment(space, kept));
}

ConstantEstimate estimate_constant(const NormedSpace& space, ConstantDirection direction, const Exponent& exponent,
                                   const SearchConfig& cfg) {
  if (cfg.budget == 0) throw std::invalid_argument("estimate_constant: budget must be positive");
  if (cfg.tuple_size == 0) throw std::invalid_argument("estimate_constant: tuple size must be positive");
  check_exponent(direction, exponent);

  ConstantEstimate est;
  est.seed = cfg.seed;
  est.ratio_config = MCConfig{cfg.samples, derive_seed(cfg.seed, hash_label("common-random-numbers")), false};
  const std::size_t dim = space.dimension();

  std::string reason;
  if (space.is_hilbert()) {
    reason = "Hilbert space: Parseval and the l^p inclusions give constant 1";
  } else if (dim == 1) {
    reason = "one-dimensional space is isometric to a Hilbert space";
  } else if (direction == ConstantDirection::type && !exponent.is_infinite() && exponent.value() == 1.0) {
    reason = "type 1: triangle inequality in L^2, equality for one vector";
  } else if (direction == ConstantDirection::cotype && exponent.is_infinite()) {
    reason = "cotype inf: E||sum gamma_n x_n||^2 >= max ||x_n||^2 by symmetry";
  }
  if (!reason.empty()) {
    Vector e1(dim, 0.0);
    e1[0] = 1.0;
    est.value = 1.0;
    est.witness = {e1};
    est.analytic = true;
    est.reason = reason;
    est.rademacher_value = 1.0;
    return est;
  }

  std::vector<std::vector<Vector>> starts;
  if (cfg.warm_start) {
    for (const auto& v : *cfg.warm_start) {
      if (v.size() != dim) throw std::invalid_argument("estimate_constant: warm start has wrong dimension");
    }
    if (!nonzero(*cfg.warm_start).empty()) starts.push_back(*cfg.warm_start);
  }
  const std::size_t restarts = std::max<std::size_t>(1, cfg.restarts);
  const std::size_t runs = restarts + starts.size();
  const std::size_t per_run = std::max<std::size_t>(1, cfg.budget / runs);
  const MCConfig crn = est.ratio_config;

  std::vector<RestartResult> results(runs);
  parallel_chunks(runs, 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      const CounterRng rng(derive_seed(cfg.seed, hash_label("restart"), r));
      const GaussianStream gauss(derive_seed(cfg.seed, hash_label("restart-start"), r));
      std::uint64_t counter = 0;
      std::vector<Vector> tuple;
      if (r < starts.size()) {
        tuple = starts[r];
      } else {
        std::uint64_t g = 0;
        tuple.assign(cfg.tuple_size, Vector(dim));
        for (auto& v : tuple) {
          double s = 0.0;
          for (double& x : v) {
            x = gauss(g++);
            s += x * x;
          }
          for (double& x : v) x /= std::sqrt(s);
        }
      }
      RestartResult& out = results[r];
      normalize(tuple);
      out.tuple = tuple;
      out.value = ratio(space, direction, exponent, tuple, crn);
      out.evaluations = 1;
      double delta = 0.25;
      std::size_t fails = 0;
      const std::size_t coords = tuple.size() * dim;
      while (out.evaluations < per_run && delta > 1e-3) {
        const std::uint64_t bits = rng.bits(counter++);
        const std::size_t pick = static_cast<std::size_t>(bits % coords);
        const double sign = (bits >> 63) ? -1.0 : 1.0;
        std::vector<Vector> trial = out.tuple;
        trial[pick / dim][pick % dim] += sign * delta;
        if (nonzero(trial).empty()) continue;
        normalize(trial);
        const double v = ratio(space, direction, exponent, trial, crn);
        ++out.evaluations;
        if (v > out.value) {
          out.value = v;
          out.tuple = std::move(trial);
          fails = 0;
        } else if (++fails >= 2 * coords) {
          delta *= 0.5;
          fails = 0;
        }
      }
    }
  });

  std::size_t best = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    est.evaluations += results[r].evaluations;
    if (results[r].value > results[best].value) best = r;
  }
  est.value = results[best].value;
  est.witness = results[best].tuple;
  if (est.value < 1.0) {
    // A single vector attains 1 exactly in every space.
    Vector e1(dim, 0.0);
    e1[0] = 1.0;
    est.value = 1.0;
    est.witness = {e1};
  }
  est.rademacher_value = rademacher_ratio(space, direction, exponent, est.witness);
  return est;
}

double witness_ratio(const NormedSpace& space, ConstantDirection direction, const Exponent& exponent,
                     const ConstantEstimate& est) {
  return ratio(space, direction, exponent, est.witness, est.ratio_config);
}

}  // namespace bg
