#include "bg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "bg/besov.hpp"
#include "bg/constructions.hpp"
#include "bg/filter_bank.hpp"
#include "bg/gamma.hpp"
#include "bg/random.hpp"
#include "bg/typecotype.hpp"

namespace bg {

namespace {

using Inputs = std::vector<std::pair<std::string, std::string>>;

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative slack for comparisons between two exactly computed quantities.
constexpr double kRoundoff = 1e-12;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_exp(double e) { return std::isinf(e) ? "inf" : fmt(e); }

std::string fmt_count(std::size_t n) { return std::to_string(n); }

// Reads experiment parameters and remembers which keys were consulted, so
// that finish() can reject the rest.
class Params {
 public:
  explicit Params(const Json& j) : j_(j) {
    if (!j_.is_object()) throw UsageError("parameters: expected a JSON object");
  }

  double number(const std::string& key, double def) {
    if (!take(key)) return def;
    return as_number(j_.at(key), key);
  }
  double exponent(const std::string& key, double def) {
    if (!take(key)) return def;
    return as_exponent(j_.at(key), key);
  }
  std::size_t count(const std::string& key, std::size_t def) {
    if (!take(key)) return def;
    return as_count(j_.at(key), key);
  }
  int integer(const std::string& key, int def) {
    if (!take(key)) return def;
    return as_integer(j_.at(key), key);
  }
  std::vector<double> numbers(const std::string& key, std::vector<double> def) {
    return list<double>(key, std::move(def), [&](const Json& v) { return as_number(v, key); });
  }
  std::vector<double> exponents(const std::string& key, std::vector<double> def) {
    return list<double>(key, std::move(def), [&](const Json& v) { return as_exponent(v, key); });
  }
  std::vector<int> integers(const std::string& key, std::vector<int> def) {
    return list<int>(key, std::move(def), [&](const Json& v) { return as_integer(v, key); });
  }
  std::vector<std::string> texts(const std::string& key, std::vector<std::string> def) {
    return list<std::string>(key, std::move(def), [&](const Json& v) {
      if (!v.is_string()) fail(key, "expected strings");
      return v.get<std::string>();
    });
  }
  const Json* raw(const std::string& key) { return take(key) ? &j_.at(key) : nullptr; }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.contains(key)) fail(key, "unknown field");
    }
  }

  [[noreturn]] static void fail(const std::string& key, const std::string& why) {
    throw UsageError("parameters." + key + ": " + why);
  }

 private:
  bool take(const std::string& key) {
    used_.insert(key);
    return j_.contains(key);
  }

  template <class T, class Fn>
  std::vector<T> list(const std::string& key, std::vector<T> def, Fn&& item) {
    if (!take(key)) return def;
    const Json& v = j_.at(key);
    if (!v.is_array() || v.empty()) fail(key, "expected a non-empty array");
    std::vector<T> out;
    for (const auto& x : v) out.push_back(item(x));
    return out;
  }

  static double as_number(const Json& v, const std::string& key) {
    if (!v.is_number()) fail(key, "expected a number");
    return v.get<double>();
  }
  static double as_exponent(const Json& v, const std::string& key) {
    if (v.is_string() && v.get<std::string>() == "inf") return kInf;
    if (!v.is_number() || !(v.get<double>() >= 1.0)) fail(key, "expected an exponent >= 1 or \"inf\"");
    return v.get<double>();
  }
  static std::size_t as_count(const Json& v, const std::string& key) {
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(key, "expected a non-negative integer");
    return v.get<std::size_t>();
  }
  static int as_integer(const Json& v, const std::string& key) {
    if (!v.is_number_integer()) fail(key, "expected an integer");
    return v.get<int>();
  }

  const Json& j_;
  std::set<std::string> used_;
};

void require(bool ok, const std::string& key, const std::string& why) {
  if (!ok) Params::fail(key, why);
}

GridSpec make_grid(const ExperimentConfig& cfg, double period, std::size_t default_points, int dimension) {
  GridSpec g{period, cfg.grid.value_or(default_points), dimension};
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("grid: ") + e.what());
  }
  return g;
}

FilterBank make_bank(const GridSpec& grid, int levels, double transition_end = FilterBank::kDefaultTransitionEnd) {
  try {
    return FilterBank(grid, levels, transition_end);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("parameters.levels: ") + e.what());
  }
}

std::vector<Vector> gaussian_vectors(std::uint64_t seed, std::uint64_t stream, std::size_t count, std::size_t dim) {
  const GaussianStream g(derive_seed(seed, stream));
  std::vector<Vector> out(count, Vector(dim));
  for (std::size_t k = 0; k < count; ++k) g.fill(out[k], k * dim);
  return out;
}

MCConfig mc_for(const ExperimentConfig& cfg, const std::string& label, bool force = false) {
  return MCConfig{cfg.samples, derive_seed(cfg.seed, hash_label(label)), force};
}

ReportRow row(std::string case_label, std::string check, Inputs inputs, double lhs, double rhs, std::string relation,
              double tolerance = 0.0, double constant = std::numeric_limits<double>::quiet_NaN(),
              double std_error = 0.0) {
  ReportRow r;
  r.case_label = std::move(case_label);
  r.check = std::move(check);
  r.inputs = std::move(inputs);
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = std::move(relation);
  r.tolerance = tolerance;
  r.constant = constant;
  r.std_error = std_error;
  judge(r);
  return r;
}

double slack(double a, double b) { return kRoundoff * std::max(std::abs(a), std::abs(b)); }

bool exact_type_constant(const NormedSpace& space, double exponent) {
  return space.is_hilbert() || space.dimension() == 1 || exponent == 1.0;
}

bool exact_cotype_constant(const NormedSpace& space, double exponent) {
  return space.is_hilbert() || space.dimension() == 1 || std::isinf(exponent);
}

struct SearchParams {
  std::size_t budget = 1024;
  std::size_t restarts = 16;
  std::size_t ratio_samples = 4000;
};

SearchParams read_search(Params& P) {
  SearchParams s;
  s.budget = P.count("search_budget", s.budget);
  s.restarts = P.count("search_restarts", s.restarts);
  s.ratio_samples = P.count("search_samples", s.ratio_samples);
  require(s.budget >= 1, "search_budget", "must be >= 1");
  require(s.ratio_samples >= kMinBatchedSamples, "search_samples", "must be >= " + fmt_count(kMinBatchedSamples));
  return s;
}

// Constant for the inequalities: exactly 1 where that is the true constant,
// otherwise the search's lower bound (rows using it are reported only).
struct UsedConstant {
  double value = 1.0;
  bool exact = true;
};

UsedConstant constant_for(const NormedSpace& space, ConstantDirection dir, double exponent, const SearchParams& sp,
                          std::uint64_t seed) {
  const bool exact = dir == ConstantDirection::type ? exact_type_constant(space, exponent)
                                                    : exact_cotype_constant(space, exponent);
  if (exact) return {1.0, true};
  SearchConfig sc;
  sc.budget = sp.budget;
  sc.restarts = sp.restarts;
  sc.samples = sp.ratio_samples;
  sc.seed = derive_seed(seed, hash_label("constant/" + space.to_string() + "/" + to_string(dir)));
  const auto est = estimate_constant(space, dir, Exponent::from_double(exponent), sc);
  return {est.value, false};
}

// l^p_dim, with p = +inf allowed.
NormedSpace space_of(double exponent, std::size_t dim) { return NormedSpace(Exponent::from_double(exponent), dim); }

Inputs space_inputs(double exponent, std::size_t dim) {
  return {{"space_exponent", fmt_exp(exponent)}, {"dimension", fmt_count(dim)}};
}

// ----------------------------------------------------------------------------
// embedding-type / embedding-cotype

void run_embedding(const ExperimentConfig& cfg, ConstantDirection dir, Report& rep) {
  Params P(cfg.parameters);
  const bool type = dir == ConstantDirection::type;
  const auto exps = P.exponents("exponents", type ? std::vector<double>{1.0, 1.25, 1.5, 2.0}
                                                  : std::vector<double>{2.0, 3.0, 4.0, kInf});
  const std::size_t dim = P.count("dimension", 4);
  const auto systems = P.integers("systems", {1, 2});
  const auto bands = P.integers("bands", {1, 2});
  const std::size_t trials = P.count("trials", 2);
  const int levels = P.integer("levels", 6);
  const double period = P.number("period", 64.0);
  P.finish();

  for (double e : exps) {
    if (type) require(e <= 2.0, "exponents", "type exponents must lie in [1, 2]");
    else require(e >= 2.0, "exponents", "cotype exponents must lie in [2, inf]");
  }
  require(dim >= 1, "dimension", "must be >= 1");
  require(trials >= 1, "trials", "must be >= 1");
  for (int n : systems) require(n >= 1 && 3 * n <= levels, "systems", "need 1 <= N and 3N <= levels");
  for (int k : bands) require(k >= 0 && k <= levels, "bands", "need 0 <= k0 <= levels");
  const GridSpec grid = make_grid(cfg, period, 4096, 1);
  const FilterBank bank = make_bank(grid, levels);
  for (int n : systems) {
    require(std::ldexp(bank.transition_end(), 3 * n) < grid.nyquist(), "systems", "level 3N exceeds the grid band");
  }

  const std::string id = rep.experiment;
  for (double e : exps) {
    const NormedSpace space = space_of(e, dim);
    const Exponent pe = Exponent::from_double(e);
    const double s = pe.reciprocal() - 0.5;
    double worst = 0.0;
    auto add = [&](const std::string& label, const ConstructionSpec& spec, const MCEstimate& gamma, Inputs in) {
      const GridFunction f = build_grid(spec);
      const double besov = besov_norm_fourier(f, s, pe, pe, bank);
      const double lhs = type ? gamma.mean : besov;
      const double rhs = type ? besov : gamma.mean;
      in.emplace_back("s", fmt(s));
      in.emplace_back("grid_points", fmt_count(grid.points));
      in.emplace_back("levels", std::to_string(levels));
      rep.rows.push_back(row(label, type ? "gamma_over_besov" : "besov_over_gamma", std::move(in), lhs, rhs, "report",
                             0.0, lhs / rhs, gamma.std_error));
      rep.cases[label] = construction_to_json(spec);
      worst = std::max(worst, lhs / rhs);
    };
    for (int n : systems) {
      for (std::size_t t = 0; t < trials; ++t) {
        const std::string label = "psi/p=" + fmt_exp(e) + "/N=" + std::to_string(n) + "/trial=" + fmt_count(t);
        ConstructionSpec spec;
        spec.family = Family::psi_system;
        spec.space_exponent = e;
        spec.space_dimension = dim;
        spec.vectors = gaussian_vectors(cfg.seed, hash_label(id + "/" + label), static_cast<std::size_t>(n), dim);
        spec.grid = grid;
        spec.levels = levels;
        // The psi_{3n} have disjoint spectra and unit L^2 norm, so I_f maps an
        // orthonormal family to the x_n.
        const MCEstimate gamma = sqrt_estimate(gaussian_second_moment(space, spec.vectors, mc_for(cfg, id + "/" + label)));
        Inputs in = space_inputs(e, dim);
        in.emplace_back("N", std::to_string(n));
        in.emplace_back("trial", fmt_count(t));
        add(label, spec, gamma, std::move(in));
      }
    }
    for (int k0 : bands) {
      for (std::size_t t = 0; t < trials; ++t) {
        const std::string label = "band/p=" + fmt_exp(e) + "/k0=" + std::to_string(k0) + "/trial=" + fmt_count(t);
        ConstructionSpec spec;
        spec.family = Family::single_band;
        spec.space_exponent = e;
        spec.space_dimension = dim;
        spec.vectors = gaussian_vectors(cfg.seed, hash_label(id + "/" + label), 1, dim);
        spec.grid = grid;
        spec.levels = levels;
        spec.k0 = k0;
        const auto op = GammaOperator::from_grid(build_grid(spec), BasisKind::cell_indicators, grid.points);
        const MCEstimate gamma = gamma_norm_mc(op, mc_for(cfg, id + "/" + label));
        Inputs in = space_inputs(e, dim);
        in.emplace_back("k0", std::to_string(k0));
        in.emplace_back("trial", fmt_count(t));
        add(label, spec, gamma, std::move(in));
      }
    }
    rep.empirical_constants["max_ratio/p=" + fmt_exp(e)] = worst;
  }
}

// ----------------------------------------------------------------------------
// band-limited

GridFunction roll_axis0(const GridFunction& scalar, long shift) {
  const GridSpec& g = scalar.grid();
  const long n = static_cast<long>(g.points);
  const std::size_t stride = g.dimension == 1 ? 1 : g.points;
  std::vector<double> values(scalar.values().size());
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const auto idx = g.axis_indices(node);
    const long src = ((static_cast<long>(idx[0]) - shift) % n + n) % n;
    const std::size_t from = static_cast<std::size_t>(src) * stride + (g.dimension == 1 ? 0 : idx[1]);
    values[node] = scalar.values()[from];
  }
  return GridFunction(g, scalar.space(), std::move(values));
}

void run_band_limited(const ExperimentConfig& cfg, Report& rep) {
  Params P(cfg.parameters);
  const auto directions = P.texts("directions", {"type", "cotype"});
  const auto type_exps = P.exponents("type_exponents", {1.0, 1.5, 2.0});
  const auto cotype_exps = P.exponents("cotype_exponents", {2.0, 4.0, kInf});
  const std::size_t dim = P.count("dimension", 4);
  const std::size_t bumps = P.count("bumps", 3);
  const double spacing = P.number("spacing", 3.0);
  const auto k0s = P.integers("k0", {0, 1});
  const std::size_t trials = P.count("trials", 2);
  const double period = P.number("period", 64.0);
  const int gdim = P.integer("grid_dimension", 1);
  const SearchParams sp = read_search(P);
  P.finish();

  for (const auto& d : directions) require(d == "type" || d == "cotype", "directions", "expected \"type\" or \"cotype\"");
  for (double e : type_exps) require(e <= 2.0, "type_exponents", "must lie in [1, 2]");
  for (double e : cotype_exps) require(e >= 2.0, "cotype_exponents", "must lie in [2, inf]");
  require(dim >= 1, "dimension", "must be >= 1");
  require(bumps >= 1, "bumps", "must be >= 1");
  require(trials >= 1, "trials", "must be >= 1");
  require(spacing >= 0.0, "spacing", "must be >= 0");
  require(gdim == 1 || gdim == 2, "grid_dimension", "must be 1 or 2");
  // Band [.., 2^k0] inside [-pi, pi]^d needs k0 <= 1.
  for (int k : k0s) require(k == 0 || k == 1, "k0", "spectrum must lie in [-pi, pi]^d, so k0 is 0 or 1");
  const GridSpec grid = make_grid(cfg, period, gdim == 1 ? 4096 : 256, gdim);
  require(static_cast<double>(bumps - 1) * spacing <= 0.25 * period, "spacing", "bump centres must span at most L/4");
  const FilterBank bank = make_bank(grid, 1);

  const std::string id = rep.experiment;
  for (int k0 : k0s) {
    const GridFunction bump = make_single_band_scalar(bank, k0);
    const double cutoff = bank.plateau_upper(k0) * (1.0 + 1e-12);
    std::size_t modes = 0;
    for (std::size_t m = 0; m < grid.node_count(); ++m) modes += grid.frequency_radius(m) <= cutoff ? 1 : 0;
    for (const auto& dname : directions) {
      const ConstantDirection dir = dname == "type" ? ConstantDirection::type : ConstantDirection::cotype;
      for (double e : dir == ConstantDirection::type ? type_exps : cotype_exps) {
        const NormedSpace space = space_of(e, dim);
        const UsedConstant c = constant_for(space, dir, e, sp, cfg.seed);
        for (std::size_t t = 0; t < trials; ++t) {
          const std::string label =
              dname + "/p=" + fmt_exp(e) + "/k0=" + std::to_string(k0) + "/trial=" + fmt_count(t);
          const auto xs = gaussian_vectors(cfg.seed, hash_label(id + "/" + label), bumps, dim);
          std::vector<double> values(grid.node_count() * dim, 0.0);
          std::vector<long> shifts;
          for (std::size_t j = 0; j < bumps; ++j) {
            const double centre = (static_cast<double>(j) - 0.5 * static_cast<double>(bumps - 1)) * spacing;
            const long shift = std::lround(centre / grid.spacing());
            shifts.push_back(shift);
            const GridFunction b = roll_axis0(bump, shift);
            for (std::size_t node = 0; node < grid.node_count(); ++node) {
              for (std::size_t i = 0; i < dim; ++i) values[node * dim + i] += b.values()[node] * xs[j][i];
            }
          }
          const GridFunction f(grid, space, std::move(values));
          const auto op = GammaOperator::from_grid(f, BasisKind::trigonometric, modes);
          const MCEstimate gamma = gamma_norm_mc(op, mc_for(cfg, id + "/" + label));
          const double lp = f.lp_norm(Exponent::from_double(e));
          Inputs in = space_inputs(e, dim);
          in.emplace_back("direction", dname);
          in.emplace_back("k0", std::to_string(k0));
          in.emplace_back("trial", fmt_count(t));
          in.emplace_back("modes", fmt_count(modes));
          in.emplace_back("truncation_residual", fmt(op.truncation_residual()));
          in.emplace_back("grid_points", fmt_count(grid.points));
          in.emplace_back("grid_dimension", std::to_string(gdim));
          const double lhs = gamma.mean;
          const double rhs = dir == ConstantDirection::type ? c.value * lp : lp / c.value;
          const std::string rel = !c.exact ? "report" : dir == ConstantDirection::type ? "<=" : ">=";
          rep.rows.push_back(row(label, dname == "type" ? "gamma_le_T_lp" : "gamma_ge_lp_over_C", std::move(in), lhs,
                                 rhs, rel, 3.0 * gamma.std_error + slack(lhs, rhs), c.value, gamma.std_error));
          Json cj{{"bump", construction_to_json(ConstructionSpec{
                               Family::single_band, e, dim, {Vector(dim, 1.0)}, 1, 1.05, 0.1, 1.5, grid, 1,
                               FilterBank::kDefaultTransitionEnd, k0, 1.0})},
                  {"shifts", shifts},
                  {"vectors", xs}};
          rep.cases[label] = cj;
        }
        rep.empirical_constants[dname + "_constant/p=" + fmt_exp(e)] = c.value;
      }
    }
  }
}

// ----------------------------------------------------------------------------
// partition

struct Check {
  PartitionDirection direction;
  double exponent;
};

std::vector<Check> default_checks(const NormedSpace& space) {
  std::vector<Check> out{{PartitionDirection::type, 1.0}};
  const double p = space.exponent().is_infinite() ? kInf : space.exponent().value();
  const double t = std::min(p, 2.0);
  const double q = std::max(p, 2.0);
  if (t > 1.0) out.push_back({PartitionDirection::type, t});
  out.push_back({PartitionDirection::cotype, q});
  if (!std::isinf(q)) out.push_back({PartitionDirection::cotype, kInf});
  return out;
}

void run_partition(const ExperimentConfig& cfg, Report& rep) {
  Params P(cfg.parameters);
  std::vector<NormedSpace> spaces{NormedSpace::hilbert(8), NormedSpace::lp(1.0, 4), NormedSpace::linf(4)};
  if (const Json* js = P.raw("spaces")) {
    if (!js->is_array() || js->empty()) Params::fail("spaces", "expected a non-empty array of spaces");
    spaces.clear();
    for (const auto& s : *js) {
      try {
        spaces.push_back(space_from_json(s));
      } catch (const std::exception& e) {
        Params::fail("spaces", e.what());
      }
    }
  }
  const std::size_t cases = P.count("cases", 20);
  const std::size_t cells = P.count("cells", 16);
  const std::size_t parts_min = P.count("parts_min", 2);
  const std::size_t parts_max = P.count("parts_max", 4);
  const double pythagoras_tolerance = P.number("pythagoras_tolerance", 1e-10);
  const SearchParams sp = read_search(P);
  P.finish();
  require(cases >= 1, "cases", "must be >= 1");
  require(cells >= 2, "cells", "must be >= 2");
  require(parts_min >= 2 && parts_min <= parts_max, "parts_min", "need 2 <= parts_min <= parts_max");
  require(parts_max <= cells, "parts_max", "must not exceed cells");

  const std::string id = rep.experiment;
  for (const NormedSpace& space : spaces) {
    const std::size_t dim = space.dimension();
    const double pe = space.exponent().is_infinite() ? kInf : space.exponent().value();
    const auto checks = default_checks(space);
    std::vector<UsedConstant> constants;
    for (const Check& ch : checks) {
      constants.push_back(constant_for(space,
                                       ch.direction == PartitionDirection::type ? ConstantDirection::type
                                                                                : ConstantDirection::cotype,
                                       ch.exponent, sp, cfg.seed));
    }
    for (std::size_t c = 0; c < cases; ++c) {
      const std::string label = space.to_string() + "/case=" + fmt_count(c);
      const std::uint64_t stream = hash_label(id + "/" + label);
      std::vector<double> bps(cells + 1);
      for (std::size_t i = 0; i <= cells; ++i) bps[i] = static_cast<double>(i) / static_cast<double>(cells);
      const PiecewiseFunction f =
          PiecewiseFunction::step(space, bps, gaussian_vectors(cfg.seed, stream, cells, dim));
      const auto op = GammaOperator::from_piecewise(f, BasisKind::cell_indicators, cells);

      const CounterRng rng(derive_seed(cfg.seed, stream, 1));
      std::uint64_t counter = 0;
      const std::size_t parts = parts_min + static_cast<std::size_t>(rng.bits(counter++) % (parts_max - parts_min + 1));
      std::vector<std::size_t> owner(cells);
      for (std::size_t i = 0; i < cells; ++i) owner[i] = i < parts ? i : rng.bits(counter++) % parts;
      for (std::size_t i = cells - 1; i > 0; --i) std::swap(owner[i], owner[rng.bits(counter++) % (i + 1)]);
      std::vector<IntervalSet> partition(parts);
      for (std::size_t i = 0; i < cells; ++i) {
        partition[owner[i]] = partition[owner[i]].unite(IntervalSet::single(bps[i], bps[i + 1]));
      }

      Json pj = Json::array();
      for (const auto& set : partition) {
        Json sj = Json::array();
        for (const auto& iv : set.intervals()) sj.push_back({iv.lo, iv.hi});
        pj.push_back(sj);
      }
      rep.cases[label] = Json{{"function", piecewise_to_json(f)}, {"partition", pj}};

      const MCConfig mc = mc_for(cfg, id + "/" + label);
      for (std::size_t k = 0; k < checks.size(); ++k) {
        const Check& ch = checks[k];
        const auto pr = partition_inequality_check(op, partition, ch.direction, Exponent::from_double(ch.exponent),
                                                   constants[k].value, mc);
        const std::string dname = ch.direction == PartitionDirection::type ? "type" : "cotype";
        Inputs in = space_inputs(pe, dim);
        in.emplace_back("direction", dname);
        in.emplace_back("exponent", fmt_exp(ch.exponent));
        in.emplace_back("parts", fmt_count(parts));
        in.emplace_back("cells", fmt_count(cells));
        rep.rows.push_back(row(label, dname + "_" + fmt_exp(ch.exponent), std::move(in), pr.lhs, pr.rhs,
                               constants[k].exact ? "<=" : "report", pr.tolerance + slack(pr.lhs, pr.rhs),
                               pr.constant, pr.lhs_se + pr.rhs_se));
        if (k == 0 && space.is_hilbert()) {
          Inputs pin = space_inputs(pe, dim);
          pin.emplace_back("parts", fmt_count(parts));
          rep.rows.push_back(row(label, "pythagoras", std::move(pin), pr.pythagoras_residual, pythagoras_tolerance,
                                 "<=", 0.0));
        }
      }
    }
    for (std::size_t k = 0; k < checks.size(); ++k) {
      const std::string dname = checks[k].direction == PartitionDirection::type ? "type" : "cotype";
      rep.empirical_constants[space.to_string() + "/" + dname + "_" + fmt_exp(checks[k].exponent)] =
          constants[k].value;
    }
  }
}

// ----------------------------------------------------------------------------
// dilation

void run_dilation(const ExperimentConfig& cfg, Report& rep) {
  Params P(cfg.parameters);
  const int k0 = P.integer("k0", 1);
  const double s = P.number("s", 0.5);
  const double p = P.exponent("p", 4.0 / 3.0);
  const double q = P.exponent("q", 4.0 / 3.0);
  const auto ns = P.integers("n_values", {1, 2, 3, 4});
  const int levels = P.integer("levels", 7);
  const double fill = P.number("fill", 1.0);
  const double spread = P.number("spread", 0.2);
  const double period = P.number("period", 64.0);
  P.finish();
  require(s != 0.0, "s", "must be nonzero");
  for (int n : ns) {
    require(s > 0.0 ? n >= 1 : n <= -1, "n_values", "need n >= 1 for s > 0 and n <= -1 for s < 0");
  }
  require(fill > 0.0 && fill <= 1.0, "fill", "must lie in (0, 1]");
  require(spread > 0.0, "spread", "must be positive");
  require(k0 >= 0 && k0 <= levels, "k0", "must lie in [0, levels]");
  const GridSpec grid = make_grid(cfg, period, 4096, 1);
  const FilterBank bank = make_bank(grid, levels);
  const Exponent pe = Exponent::from_double(p);
  const Exponent qe = Exponent::from_double(q);
  const double d = 1.0;

  const GridFunction f = make_single_band_scalar(bank, k0, fill);
  const double base = besov_norm_fourier(f, s, pe, qe, bank);
  ConstructionSpec spec;
  spec.family = Family::single_band;
  spec.vectors = {Vector{1.0}};
  spec.grid = grid;
  spec.levels = levels;
  spec.k0 = k0;
  spec.fill = fill;
  rep.cases["f"] = construction_to_json(spec);

  std::vector<double> ratios;
  std::vector<Inputs> ins;
  for (int n : ns) {
    GridFunction fl = GridFunction::zeros(grid, f.space());
    try {
      fl = dilate(f, n);
    } catch (const std::domain_error& e) {
      Params::fail("n_values", std::string("dilation leaves the grid: ") + e.what());
    }
    const double lambda = std::ldexp(1.0, n);
    const double lhs = besov_norm_fourier(fl, s, pe, qe, bank);
    const double rhs = std::pow(lambda, s - d / pe.value()) * base;
    const double ratio = lhs / rhs;
    ratios.push_back(ratio);
    Inputs in{{"k0", std::to_string(k0)}, {"s", fmt(s)},       {"p", fmt_exp(p)},
              {"q", fmt_exp(q)},          {"n", std::to_string(n)}, {"lambda", fmt(lambda)},
              {"grid_points", fmt_count(grid.points)}};
    ins.push_back(in);
    rep.rows.push_back(row("lambda=" + fmt(lambda), "scaled_ratio", std::move(in), lhs, rhs, "report", 0.0, ratio));
  }
  double log_sum = 0.0;
  for (double r : ratios) log_sum += std::log(r);
  const double gm = std::exp(log_sum / static_cast<double>(ratios.size()));
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    rep.rows.push_back(row("lambda=" + fmt(std::ldexp(1.0, ns[i])), "spread_around_geomean", ins[i],
                           std::abs(ratios[i] / gm - 1.0), spread, "<", 0.0, ratios[i]));
  }
  rep.empirical_constants["C_geometric_mean"] = gm;
  rep.empirical_constants["C_max"] = *std::max_element(ratios.begin(), ratios.end());
}

// ----------------------------------------------------------------------------
// step-identities

void run_step_identities(const ExperimentConfig& cfg, Report& rep) {
  Params P(cfg.parameters);
  const auto n_values = P.integers("n_values", {1, 2, 4, 8, 16, 32, 64});
  const auto lp_exps = P.exponents("lp_exponents", {1.0, 4.0 / 3.0, 2.0});
  const auto gamma_exps = P.exponents("gamma_exponents", {1.0, 4.0 / 3.0, 2.0});
  const auto besov_exps = P.exponents("besov_exponents", {4.0 / 3.0, 1.5});
  const std::size_t dim = P.count("dimension", 4);
  const std::size_t quad = P.count("quadrature", 256);
  P.finish();
  for (int n : n_values) require(n >= 1, "n_values", "must be >= 1");
  for (double e : lp_exps) require(!std::isinf(e), "lp_exponents", "must be finite");
  for (double e : besov_exps) require(e > 1.0 && e < 2.0, "besov_exponents", "need 1 < p < 2 so that 0 < 1/p - 1/2 < 1/2");
  require(dim >= 1, "dimension", "must be >= 1");
  require(quad >= 8, "quadrature", "must be >= 8");

  const std::string id = rep.experiment;
  const auto build = [&](int n, double e) {
    const auto vecs = gaussian_vectors(cfg.seed, hash_label(id + "/n=" + std::to_string(n)), n, dim);
    ConstructionSpec spec;
    spec.family = Family::step;
    spec.space_exponent = e;
    spec.space_dimension = dim;
    spec.vectors = vecs;
    return spec;
  };
  const auto norm_sum = [](const NormedSpace& space, const std::vector<Vector>& vecs, double p) {
    std::vector<double> norms;
    for (const auto& v : vecs) norms.push_back(space.norm(v));
    return sequence_norm(norms, Exponent::from_double(p));
  };

  for (int n : n_values) {
    const double two_n = 2.0 * n;
    for (double e : lp_exps) {
      const ConstructionSpec spec = build(n, e);
      const std::string label = "lp/p=" + fmt_exp(e) + "/n=" + std::to_string(n);
      const PiecewiseFunction f = build_piecewise(spec);
      const NormedSpace space = spec_space(spec);
      const double lhs = lp_norm(f, Exponent::from_double(e));
      const double rhs = std::pow(two_n, -1.0 / e) * norm_sum(space, spec.vectors, e);
      Inputs in = space_inputs(e, dim);
      in.emplace_back("n", std::to_string(n));
      in.emplace_back("p", fmt_exp(e));
      rep.rows.push_back(row(label, "lp_closed_form", std::move(in), lhs, rhs, "==", slack(lhs, rhs)));
      rep.cases[label] = construction_to_json(spec);
    }
    for (double e : gamma_exps) {
      const ConstructionSpec spec = build(n, e);
      const std::string label = "gamma/p=" + fmt_exp(e) + "/n=" + std::to_string(n);
      const PiecewiseFunction f = build_piecewise(spec);
      const NormedSpace space = spec_space(spec);
      const auto op = GammaOperator::from_piecewise(f, BasisKind::cell_indicators, static_cast<std::size_t>(2 * n));
      const MCEstimate lhs = gamma_norm_mc(op, mc_for(cfg, id + "/" + label + "/operator"));
      const MCEstimate direct =
          sqrt_estimate(gaussian_second_moment(space, spec.vectors, mc_for(cfg, id + "/" + label + "/direct")));
      const double scale = 1.0 / std::sqrt(two_n);
      const double rhs = scale * direct.mean;
      const double se = lhs.std_error + scale * direct.std_error;
      Inputs in = space_inputs(e, dim);
      in.emplace_back("n", std::to_string(n));
      rep.rows.push_back(row(label, "gamma_closed_form", std::move(in), lhs.mean, rhs, "==",
                             3.0 * se + slack(lhs.mean, rhs), std::numeric_limits<double>::quiet_NaN(), se));
      rep.cases[label] = construction_to_json(spec);
    }
    for (double e : besov_exps) {
      const ConstructionSpec spec = build(n, e);
      const std::string label = "besov/p=" + fmt_exp(e) + "/n=" + std::to_string(n);
      const PiecewiseFunction f = build_piecewise(spec);
      const NormedSpace space = spec_space(spec);
      const double s = 1.0 / e - 0.5;
      const double cp = 1.0 + std::pow(2.0, 1.0 / e + 1.0) + 2.0 / s;
      const double lhs =
          besov_norm_difference(f, s, Exponent::from_double(e), Exponent::finite(1.0), quad).total();
      const double rhs = cp * std::pow(two_n, -0.5) * norm_sum(space, spec.vectors, e);
      Inputs in = space_inputs(e, dim);
      in.emplace_back("n", std::to_string(n));
      in.emplace_back("s", fmt(s));
      in.emplace_back("q", "1");
      rep.rows.push_back(row(label, "besov_bound", std::move(in), lhs, rhs, "<=", 0.0, cp));
      rep.cases[label] = construction_to_json(spec);
      rep.empirical_constants["max_besov_ratio/p=" + fmt_exp(e)] =
          std::max(rep.empirical_constants["max_besov_ratio/p=" + fmt_exp(e)], lhs / rhs * cp);
    }
  }
}

// ----------------------------------------------------------------------------
// tent-scaling

void run_tent_scaling(const ExperimentConfig& cfg, Report& rep) {
  Params P(cfg.parameters);
  const auto n_values = P.integers("n_values", {4, 8, 16, 32, 64, 128});
  const double p = P.number("p", 1.5);
  const double alpha = P.number("alpha", 0.1);
  const double r = P.number("r", 1.05);
  const double slope_tol = P.number("slope_tolerance", 0.1);
  P.finish();
  require(n_values.size() >= 2, "n_values", "need at least two sizes for a fit");
  for (int n : n_values) require(n >= 1, "n_values", "must be >= 1");
  require(p >= 1.0 && std::isfinite(p), "p", "must be finite and >= 1");
  require(alpha > 0.0 && alpha < 1.0, "alpha", "must lie in (0, 1)");
  require(r > 1.0 && r < 1.0 / (0.5 * p + alpha * p), "r", "need 1 < r < 1 / (p/2 + alpha p)");
  require(slope_tol > 0.0, "slope_tolerance", "must be positive");

  const double c = zeta(r);
  std::vector<double> xs, ys;
  for (int n : n_values) {
    ConstructionSpec spec;
    spec.family = Family::tent;
    spec.n = static_cast<std::size_t>(n);
    spec.r = r;
    spec.alpha = alpha;
    spec.p = p;
    const std::string label = "n=" + std::to_string(n);
    rep.cases[label] = construction_to_json(spec);
    const PiecewiseFunction g = build_piecewise(spec);
    const Inputs in{{"n", std::to_string(n)}, {"p", fmt(p)}, {"alpha", fmt(alpha)}, {"r", fmt(r)}};
    const double holder = holder_norm(g, alpha).total();
    const double bound = 1.0 + 4.0 * std::pow(c, alpha) * std::pow(static_cast<double>(n), r * alpha);
    rep.rows.push_back(row(label, "holder_bound", in, holder, bound, "<=", 0.0));
    const DisjointGamma dg = gamma_norm_disjoint_lp(g, mc_for(cfg, rep.experiment + "/" + label));
    rep.rows.push_back(row(label, "gamma_proxy", in, dg.p_moment, dg.l2_moment.mean, "report", 0.0,
                           std::numeric_limits<double>::quiet_NaN(), dg.l2_moment.std_error));
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(dg.p_moment));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  const double target = (1.0 - p * r / 2.0) / p;
  const Inputs in{{"p", fmt(p)}, {"alpha", fmt(alpha)}, {"r", fmt(r)}, {"sizes", fmt_count(n_values.size())}};
  rep.rows.push_back(row("fit", "slope_relative_error", in, std::abs(slope / target - 1.0), slope_tol, "<=", 0.0, slope));
  rep.rows.push_back(row("fit", "holder_exponent_below_gamma_slope", in, r * alpha, slope, "<", 0.0, slope));
  rep.empirical_constants["fitted_slope"] = slope;
  rep.empirical_constants["target_slope"] = target;
  rep.empirical_constants["holder_exponent"] = r * alpha;
}

// ----------------------------------------------------------------------------
// type-constant / cotype-constant

void run_constant(const ExperimentConfig& cfg, ConstantDirection dir, Report& rep) {
  Params P(cfg.parameters);
  const bool type = dir == ConstantDirection::type;
  const auto space_exps = P.exponents("space_exponents", type ? std::vector<double>{kInf, 2.0}
                                                              : std::vector<double>{1.0, 2.0});
  const auto exps = P.exponents("exponents", type ? std::vector<double>{1.0, 2.0} : std::vector<double>{2.0, kInf});
  const auto dims = P.integers("dimensions", {2, 4, 8});
  SearchConfig base;
  base.tuple_size = P.count("tuple_size", base.tuple_size);
  base.budget = P.count("budget", base.budget);
  base.restarts = P.count("restarts", base.restarts);
  base.samples = P.count("ratio_samples", base.samples);
  P.finish();
  for (double e : exps) {
    if (type) require(e <= 2.0, "exponents", "type exponents must lie in [1, 2]");
    else require(e >= 2.0, "exponents", "cotype exponents must lie in [2, inf]");
  }
  for (int d : dims) require(d >= 1, "dimensions", "must be >= 1");
  for (std::size_t i = 1; i < dims.size(); ++i) require(dims[i] > dims[i - 1], "dimensions", "must increase");
  require(base.tuple_size >= 1, "tuple_size", "must be >= 1");
  require(base.budget >= 1, "budget", "must be >= 1");
  require(base.samples >= kMinBatchedSamples, "ratio_samples", "must be >= " + fmt_count(kMinBatchedSamples));

  const std::string dname = to_string(dir);
  for (double se : space_exps) {
    for (double e : exps) {
      std::optional<std::vector<Vector>> previous;
      double previous_value = 0.0;
      for (int d : dims) {
        const NormedSpace space = space_of(se, static_cast<std::size_t>(d));
        SearchConfig sc = base;
        sc.seed = derive_seed(cfg.seed, hash_label(rep.experiment + "/" + space.to_string() + "/" + fmt_exp(e)));
        if (previous) {
          // l^p_d sits isometrically in l^p_{d'} on the first d coordinates.
          std::vector<Vector> padded = *previous;
          for (auto& v : padded) v.resize(static_cast<std::size_t>(d), 0.0);
          sc.warm_start = padded;
        }
        const auto est = estimate_constant(space, dir, Exponent::from_double(e), sc);
        const std::string label = space.to_string() + "/" + dname + "=" + fmt_exp(e);
        Inputs in = space_inputs(se, static_cast<std::size_t>(d));
        in.emplace_back("exponent", fmt_exp(e));
        in.emplace_back("samples", fmt_count(sc.samples));
        in.emplace_back("budget", fmt_count(sc.budget));
        in.emplace_back("evaluations", fmt_count(est.evaluations));
        if (est.analytic) {
          rep.rows.push_back(row(label, "analytic_value", in, est.value, 1.0, "==", 0.0, est.value));
        } else {
          rep.rows.push_back(row(label, "lower_bound", in, est.value, witness_ratio(space, dir, Exponent::from_double(e), est),
                                 "report", 0.0, est.value));
        }
        rep.rows.push_back(row(label, "rademacher_ratio_of_witness", in, est.rademacher_value, est.value, "report",
                               0.0, est.value));
        if (previous) {
          rep.rows.push_back(row(label, "nondecreasing_in_dimension", in, previous_value, est.value, "<=", 0.0,
                                 est.value));
        }
        rep.cases[label] = Json{{"space", space_to_json(space)},
                                {"direction", dname},
                                {"exponent", exponent_to_json(Exponent::from_double(e))},
                                {"witness", est.witness},
                                {"ratio_seed", est.ratio_config.seed},
                                {"ratio_samples", est.ratio_config.samples},
                                {"reason", est.reason}};
        rep.empirical_constants[label] = est.value;
        previous = est.witness;
        previous_value = est.value;
      }
    }
  }
}

using Runner = std::function<void(const ExperimentConfig&, Report&)>;

struct Entry {
  ExperimentInfo info;
  Runner run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {{"embedding-type",
        "type p: B^{(1/p-1/2)d}_{p,p}(R^d;E) embeds continuously into gamma(R^d;E); reports ||f||_gamma / ||f||_B"},
       [](const ExperimentConfig& c, Report& r) { run_embedding(c, ConstantDirection::type, r); }},
      {{"embedding-cotype",
        "cotype q: gamma(R^d;E) embeds continuously into B^{(1/q-1/2)d}_{q,q}(R^d;E); reports ||f||_B / ||f||_gamma"},
       [](const ExperimentConfig& c, Report& r) { run_embedding(c, ConstantDirection::cotype, r); }},
      {{"band-limited",
        "spectrum in [-pi,pi]^d: ||f||_gamma <= T_p ||f||_{L^p} (type p), ||f||_gamma >= ||f||_{L^q} / C_q (cotype q)"},
       run_band_limited},
      {{"partition",
        "partition of S: ||R|| <= T_p (sum ||R|S_j||^p)^{1/p}, (sum ||R|S_j||^q)^{1/q} <= C_q ||R||"},
       run_partition},
      {{"dilation", "||f_lambda||_{B^s_{p,q}} <= C lambda^{s-d/p} ||f||_{B^s_{p,q}} for lambda = 2^n"}, run_dilation},
      {{"step-identities",
        "alternating step functions: closed-form L^p and gamma norms and the B^{1/p-1/2}_{p,1} bound"},
       run_step_identities},
      {{"tent-scaling",
        "tent family in l^p_n: Holder bound, gamma growth exponent (1 - pr/2)/p against the Holder exponent r alpha"},
       run_tent_scaling},
      {{"type-constant", "Gaussian type constants: analytic values and randomized lower bounds"},
       [](const ExperimentConfig& c, Report& r) { run_constant(c, ConstantDirection::type, r); }},
      {{"cotype-constant", "Gaussian cotype constants: analytic values and randomized lower bounds"},
       [](const ExperimentConfig& c, Report& r) { run_constant(c, ConstantDirection::cotype, r); }},
  };
  return entries;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  return fmt(v);
}

}  // namespace

const std::vector<ExperimentInfo>& experiments() {
  static const std::vector<ExperimentInfo> infos = [] {
    std::vector<ExperimentInfo> out;
    for (const auto& e : registry()) out.push_back(e.info);
    return out;
  }();
  return infos;
}

bool is_experiment(const std::string& id) {
  const auto& all = experiments();
  return std::any_of(all.begin(), all.end(), [&](const ExperimentInfo& e) { return e.id == id; });
}

ExperimentConfig config_from_json(const Json& j, const std::string& id) {
  if (!j.is_object()) throw UsageError("config: expected a JSON object");
  ExperimentConfig cfg;
  cfg.experiment = id;
  for (const auto& [key, value] : j.items()) {
    if (key == "experiment") {
      if (!value.is_string() || value.get<std::string>() != id) {
        throw UsageError("config.experiment: names a different experiment than '" + id + "'");
      }
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw UsageError("config.seed: expected an unsigned integer");
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "samples") {
      if (!value.is_number_unsigned()) throw UsageError("config.samples: expected an unsigned integer");
      cfg.samples = value.get<std::size_t>();
    } else if (key == "grid") {
      if (!value.is_number_unsigned()) throw UsageError("config.grid: expected an unsigned integer");
      cfg.grid = value.get<std::size_t>();
    } else if (key == "parameters") {
      if (!value.is_object()) throw UsageError("config.parameters: expected a JSON object");
      cfg.parameters = value;
    } else {
      throw UsageError("config." + key + ": unknown field");
    }
  }
  return cfg;
}

Json config_to_json(const ExperimentConfig& cfg) {
  Json j{{"experiment", cfg.experiment}, {"seed", cfg.seed}, {"samples", cfg.samples}, {"parameters", cfg.parameters}};
  if (cfg.grid) j["grid"] = *cfg.grid;
  return j;
}

void judge(ReportRow& r) {
  r.asserted = r.relation != "report";
  if (r.relation == ">=") {
    r.margin = r.lhs - r.rhs;
  } else if (r.relation == "==") {
    r.margin = -std::abs(r.lhs - r.rhs);
  } else {
    r.margin = r.rhs - r.lhs;
  }
  if (!r.asserted) {
    r.passed = true;
  } else if (r.relation == "<") {
    r.passed = r.margin > 0.0;
  } else if (r.relation == "<=" || r.relation == ">=" || r.relation == "==") {
    r.passed = r.margin >= -r.tolerance;
  } else {
    throw std::invalid_argument("report row: unknown relation '" + r.relation + "'");
  }
}

std::vector<AssertionSummary> Report::assertions() const {
  std::vector<AssertionSummary> out;
  for (const auto& r : rows) {
    if (!r.asserted) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const AssertionSummary& a) { return a.check == r.check; });
    if (it == out.end()) {
      out.push_back({r.check, 0, 0, kInf});
      it = out.end() - 1;
    }
    ++it->rows;
    if (!r.passed) ++it->failed;
    const double m = std::isnan(r.margin) ? -kInf : r.margin + r.tolerance;
    it->worst_margin = std::min(it->worst_margin, m);
  }
  return out;
}

bool Report::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.asserted || r.passed; });
}

Report run_experiment(const std::string& id, const ExperimentConfig& cfg) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const Entry& e) { return e.info.id == id; });
  if (it == reg.end()) throw UsageError("experiment: unknown id '" + id + "' (see `list`)");
  if (cfg.samples < kMinBatchedSamples) {
    throw UsageError("samples: must be >= " + fmt_count(kMinBatchedSamples) + " for batch-means errors");
  }
  Report rep;
  rep.experiment = id;
  rep.config = cfg;
  rep.config.experiment = id;
  it->run(rep.config, rep);
  return rep;
}

std::string to_csv(const Report& report) {
  std::ostringstream os;
  os << "# schema_version=" << kSchemaVersion << "\n";
  os << "experiment,case,check,inputs,lhs,rhs,constant,margin,std_error,tolerance,relation,asserted,passed\n";
  for (const auto& r : report.rows) {
    std::string inputs;
    for (const auto& [k, v] : r.inputs) {
      if (!inputs.empty()) inputs += ';';
      inputs += k + "=" + v;
    }
    os << csv_field(report.experiment) << ',' << csv_field(r.case_label) << ',' << csv_field(r.check) << ','
       << csv_field(inputs) << ',' << fmt(r.lhs) << ',' << fmt(r.rhs) << ',' << fmt(r.constant) << ','
       << fmt(r.margin) << ',' << fmt(r.std_error) << ',' << fmt(r.tolerance) << ',' << csv_field(r.relation) << ','
       << (r.asserted ? "true" : "false") << ',' << (r.passed ? "true" : "false") << "\n";
  }
  return os.str();
}

Json summary_json(const Report& report) {
  Json assertions = Json::array();
  for (const auto& a : report.assertions()) {
    assertions.push_back({{"check", a.check},
                          {"rows", a.rows},
                          {"failed", a.failed},
                          {"worst_margin", finite_or_string(a.worst_margin)},
                          {"passed", a.passed()}});
  }
  Json constants = Json::object();
  for (const auto& [k, v] : report.empirical_constants) constants[k] = finite_or_string(v);
  return Json{{"schema_version", kSchemaVersion},
              {"experiment", report.experiment},
              {"config", config_to_json(report.config)},
              {"passed", report.passed()},
              {"assertions", assertions},
              {"empirical_constants", constants},
              {"cases", report.cases}};
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"besovgamma: Besov, gamma-radonifying and type/cotype experiments"};
  app.require_subcommand(1);
  auto* list = app.add_subcommand("list", "List experiment ids with the statement each one checks");
  auto* run = app.add_subcommand("run", "Run one experiment and write its CSV report");
  std::string id, config_path, out_path;
  std::uint64_t seed = 0;
  std::size_t samples = 0, grid = 0;
  run->add_option("experiment", id, "Experiment id")->required();
  run->add_option("--config", config_path, "Config JSON path")->required();
  run->add_option("--out", out_path, "CSV output path")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
  auto* samples_opt = run->add_option("--samples", samples, "Override the Monte Carlo sample count");
  auto* grid_opt = run->add_option("--grid", grid, "Override the grid points per axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  if (*list) {
    for (const auto& e : experiments()) out << e.id << "\t" << e.anchor << "\n";
    return 0;
  }

  try {
    if (!is_experiment(id)) throw UsageError("experiment: unknown id '" + id + "' (see `list`)");
    std::ifstream in(config_path);
    if (!in) throw UsageError("--config: cannot read '" + config_path + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw UsageError("--config: " + std::string(e.what()));
    }
    ExperimentConfig cfg = config_from_json(j, id);
    if (*seed_opt) cfg.seed = seed;
    if (*samples_opt) cfg.samples = samples;
    if (*grid_opt) cfg.grid = grid;

    const Report rep = run_experiment(id, cfg);

    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) throw UsageError("--out: cannot write '" + out_path + "'");
    csv << to_csv(rep);
    std::ofstream summary(out_path + ".summary.json", std::ios::binary);
    summary << summary_json(rep).dump(2) << "\n";

    for (const auto& a : rep.assertions()) {
      out << (a.passed() ? "PASS " : "FAIL ") << a.check << " (" << a.rows - a.failed << "/" << a.rows
          << " rows, worst margin " << fmt(a.worst_margin) << ")\n";
    }
    out << id << ": " << (rep.passed() ? "all assertions pass" : "assertion failure") << "\n";
    return rep.passed() ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    // UsageError, and argument checks in the library reached through the config.
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bg
