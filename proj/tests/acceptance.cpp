// Acceptance suite: one PASS/FAIL line per criterion. `acceptance --only <id>`
// runs a single criterion; the exit status is nonzero iff a criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bg/besov.hpp"
#include "bg/constructions.hpp"
#include "bg/filter_bank.hpp"
#include "bg/gamma.hpp"
#include "bg/random.hpp"
#include "bg/typecotype.hpp"

using namespace bg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<Outcome()> run;
};

constexpr std::uint64_t kSeed = 20240601;

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::vector<Vector> gaussian_vectors(std::uint64_t stream, std::size_t count, std::size_t dim) {
  const GaussianStream g(derive_seed(kSeed, stream));
  std::vector<Vector> out(count, Vector(dim));
  for (std::size_t k = 0; k < count; ++k) g.fill(out[k], k * dim);
  return out;
}

std::vector<double> uniform_breakpoints(std::size_t cells) {
  std::vector<double> t(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) t[i] = static_cast<double>(i) / static_cast<double>(cells);
  return t;
}

double norm_sum(const NormedSpace& space, const std::vector<Vector>& v, double p) {
  std::vector<double> n;
  for (const auto& x : v) n.push_back(space.norm(x));
  return sequence_norm(n, Exponent::from_double(p));
}

// 1. MC gamma norm against the Hilbert identity.
Outcome hilbert_identity() {
  std::size_t agree = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const CounterRng rng(derive_seed(kSeed, hash_label("c1"), i));
    const std::size_t cells = 2 + rng.bits(0) % 15;
    const std::size_t refine = 1 + rng.bits(1) % 3;
    const NormedSpace space = NormedSpace::hilbert(8);
    const auto f = PiecewiseFunction::step(space, uniform_breakpoints(cells),
                                           gaussian_vectors(hash_label("c1") + i, cells, 8));
    const auto op = GammaOperator::from_piecewise(f, BasisKind::cell_indicators, cells * refine);
    const MCEstimate mc = gamma_norm_mc(op, MCConfig{20000, derive_seed(kSeed, i), true});
    if (std::abs(mc.mean - gamma_norm_hilbert(f)) <= 3.0 * mc.std_error) ++agree;
  }
  return {agree >= 48, std::to_string(agree) + "/50 within 3 std_error (need >= 48)"};
}

// 2. Closed forms for the alternating step functions.
Outcome step_closed_forms() {
  std::size_t lp_bad = 0, gamma_bad = 0, checked = 0;
  double worst_lp = 0.0;
  for (double p : {1.0, 4.0 / 3.0, 2.0}) {
    const NormedSpace space = NormedSpace::lp(p, 4);
    for (std::size_t n = 1; n <= 64; ++n) {
      const auto v = gaussian_vectors(hash_label("c2") + n, n, 4);
      const auto f = make_step(space, v);
      const double two_n = 2.0 * static_cast<double>(n);
      const double lp = lp_norm(f, Exponent::finite(p));
      const double lp_ref = std::pow(two_n, -1.0 / p) * norm_sum(space, v, p);
      const double rel = std::abs(lp - lp_ref) / lp_ref;
      worst_lp = std::max(worst_lp, rel);
      if (rel > 1e-12) ++lp_bad;

      const auto op = GammaOperator::from_piecewise(f, BasisKind::cell_indicators, 2 * n);
      const MCEstimate g = gamma_norm_mc(op, MCConfig{20000, derive_seed(kSeed, hash_label("c2/op"), n), false});
      const MCEstimate d =
          sqrt_estimate(gaussian_second_moment(space, v, MCConfig{20000, derive_seed(kSeed, hash_label("c2/x"), n), false}));
      const double scale = 1.0 / std::sqrt(two_n);
      const double diff = std::abs(g.mean - scale * d.mean);
      const bool ok = space.is_hilbert() ? diff <= 1e-12 * g.mean : diff <= 3.0 * (g.std_error + scale * d.std_error);
      if (!ok) ++gamma_bad;
      ++checked;
    }
  }
  return {lp_bad == 0 && gamma_bad == 0,
          "lp: " + std::to_string(checked - lp_bad) + "/" + std::to_string(checked) + " to 1e-12 (worst rel " +
              fmt("%.2e", worst_lp) + "), gamma: " + std::to_string(checked - gamma_bad) + "/" +
              std::to_string(checked)};
}

// 3. Difference Besov norm bound for the step functions.
Outcome step_besov_bound() {
  std::size_t bad = 0, checked = 0;
  double worst = 0.0;
  for (double p : {4.0 / 3.0, 1.5}) {
    const NormedSpace space = NormedSpace::lp(p, 4);
    const double s = 1.0 / p - 0.5;
    const double cp = 1.0 + std::pow(2.0, 1.0 / p + 1.0) + 2.0 / s;
    for (std::size_t n = 1; n <= 64; ++n) {
      const auto v = gaussian_vectors(hash_label("c3") + n, n, 4);
      const auto f = make_step(space, v);
      const double lhs = besov_norm_difference(f, s, Exponent::finite(p), Exponent::finite(1.0)).total();
      const double rhs = cp * std::pow(2.0 * static_cast<double>(n), -0.5) * norm_sum(space, v, p);
      worst = std::max(worst, lhs / rhs);
      if (!(lhs <= rhs)) ++bad;
      ++checked;
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " below the bound, worst lhs/rhs " +
                        fmt("%.4f", worst)};
}

// 4. Tent family: Holder bound, gamma slope, exponent comparison.
constexpr double kTentP = 1.5, kTentAlpha = 0.1, kTentR = 1.05;
const std::vector<std::size_t> kTentSizes{4, 8, 16, 32, 64, 128};

double tent_slope() {
  std::vector<double> xs, ys;
  for (std::size_t n : kTentSizes) {
    const auto g = make_tent_family(n, kTentR, kTentP);
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(gamma_norm_disjoint_lp(g).p_moment));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

Outcome tent_holder() {
  const double c = zeta(kTentR);
  std::size_t bad = 0;
  double worst = 0.0;
  for (std::size_t n : kTentSizes) {
    const auto g = make_tent_family(n, kTentR, kTentP);
    const double h = holder_norm(g, kTentAlpha).total();
    const double bound = 1.0 + 4.0 * std::pow(c, kTentAlpha) * std::pow(static_cast<double>(n), kTentR * kTentAlpha);
    worst = std::max(worst, h / bound);
    if (!(h <= bound)) ++bad;
  }
  return {bad == 0, std::to_string(kTentSizes.size() - bad) + "/" + std::to_string(kTentSizes.size()) +
                        " below 1 + 4 c^alpha n^{r alpha}, worst ratio " + fmt("%.4f", worst)};
}

Outcome tent_slope_fit() {
  const double slope = tent_slope();
  const double target = (1.0 - kTentP * kTentR / 2.0) / kTentP;
  const double rel = std::abs(slope / target - 1.0);
  return {rel <= 0.1, "fitted slope " + fmt("%.6f", slope) + " vs (1 - pr/2)/p = " + fmt("%.6f", target) +
                          ", relative error " + fmt("%.3f", rel) + " (need <= 0.1)"};
}

Outcome tent_exponents() {
  const double slope = tent_slope();
  return {kTentR * kTentAlpha < slope,
          "r alpha = " + fmt("%.4f", kTentR * kTentAlpha) + " vs gamma slope " + fmt("%.4f", slope)};
}

// 5. Partition inequalities.
IntervalSet cells_union(const std::vector<std::size_t>& owner, std::size_t part, std::size_t cells) {
  IntervalSet s;
  for (std::size_t i = 0; i < cells; ++i) {
    if (owner[i] == part) s = s.unite(IntervalSet::single(double(i) / cells, double(i + 1) / cells));
  }
  return s;
}

std::vector<IntervalSet> random_partition(std::uint64_t key, std::size_t cells) {
  const CounterRng rng(key);
  std::uint64_t counter = 0;
  const std::size_t parts = 2 + rng.bits(counter++) % 3;
  std::vector<std::size_t> owner(cells);
  for (std::size_t i = 0; i < cells; ++i) owner[i] = i < parts ? i : rng.bits(counter++) % parts;
  for (std::size_t i = cells - 1; i > 0; --i) std::swap(owner[i], owner[rng.bits(counter++) % (i + 1)]);
  std::vector<IntervalSet> out;
  for (std::size_t j = 0; j < parts; ++j) out.push_back(cells_union(owner, j, cells));
  return out;
}

Outcome partition() {
  constexpr std::size_t cells = 16;
  double worst_residual = 0.0;
  std::size_t type1_ok = 0, total = 0;
  for (std::uint64_t c = 0; c < 20; ++c) {
    const auto parts = random_partition(derive_seed(kSeed, hash_label("c5/partition"), c), cells);
    const auto fh = PiecewiseFunction::step(NormedSpace::hilbert(4), uniform_breakpoints(cells),
                                            gaussian_vectors(hash_label("c5/h") + c, cells, 4));
    const auto rh = partition_inequality_check(GammaOperator::from_piecewise(fh, BasisKind::cell_indicators, cells),
                                               parts, PartitionDirection::type, Exponent::finite(2.0), 1.0, {});
    worst_residual = std::max(worst_residual, rh.pythagoras_residual);
    for (const NormedSpace& space : {NormedSpace::lp(1.0, 4), NormedSpace::linf(4)}) {
      const auto f = PiecewiseFunction::step(space, uniform_breakpoints(cells),
                                             gaussian_vectors(hash_label("c5/" + space.to_string()) + c, cells, 4));
      const auto r = partition_inequality_check(GammaOperator::from_piecewise(f, BasisKind::cell_indicators, cells),
                                                parts, PartitionDirection::type, Exponent::finite(1.0), 1.0,
                                                MCConfig{20000, derive_seed(kSeed, hash_label("c5/mc"), c), false});
      if (r.margin >= -r.tolerance) ++type1_ok;
      ++total;
    }
  }
  return {worst_residual <= 1e-10 && type1_ok == total,
          "Hilbert worst residual " + fmt("%.2e", worst_residual) + ", p = 1 in l^1_4 and l^inf_4: " +
              std::to_string(type1_ok) + "/" + std::to_string(total)};
}

// 6. Filter bank partition of unity and convolution scaling.
Outcome filter_bank() {
  const GridSpec g{8.0, 4096, 1};
  const FilterBank bank(g, 10);
  double residual = 0.0;
  for (std::size_t m = 0; m < g.node_count(); ++m) {
    if (g.frequency_radius(m) > std::ldexp(1.0, bank.levels())) continue;
    double s = 0.0;
    for (int k = 0; k <= bank.levels(); ++k) s += bank.multiplier(k)[m];
    residual = std::max(residual, std::abs(s - 1.0));
  }
  // The base kernel needs a long period (its tail decays slowly) and level 6
  // needs about one sample per base unit after rescaling, hence N = 64 L.
  double worst = 0.0;
  for (int d : {1, 2}) {
    const GridSpec cg = d == 1 ? GridSpec{256.0, 65536, 1} : GridSpec{256.0, 16384, 2};
    const FilterBank cb(cg, 6);
    for (double p : {1.0, 2.0}) {
      const double base = convolution_norm(cb, 0, Exponent::finite(p));
      for (int k = 2; k <= 6; ++k) {
        const double ratio = convolution_norm(cb, k, Exponent::finite(p)) / base;
        const double expected = std::pow(2.0, k * d - k * d / p);
        worst = std::max(worst, std::abs(ratio / expected - 1.0));
      }
    }
  }
  return {residual <= 1e-10 && worst <= 0.01,
          "partition-of-unity residual " + fmt("%.2e", residual) + ", worst convolution ratio error " +
              fmt("%.2e", worst)};
}

// 7. Dilation constant for single bands.
Outcome dilation() {
  const GridSpec g{64.0, 4096, 1};
  const FilterBank bank(g, 7);
  const double s = 0.5, p = 4.0 / 3.0;
  const Exponent pe = Exponent::finite(p);
  const GridFunction f = make_single_band_scalar(bank, 1);
  const double base = besov_norm_fourier(f, s, pe, pe, bank);
  std::vector<double> ratios;
  for (int n = 1; n <= 4; ++n) {
    const double lambda = std::ldexp(1.0, n);
    ratios.push_back(besov_norm_fourier(dilate(f, n), s, pe, pe, bank) / (std::pow(lambda, s - 1.0 / p) * base));
  }
  double logsum = 0.0;
  for (double r : ratios) logsum += std::log(r);
  const double gm = std::exp(logsum / ratios.size());
  double spread = 0.0;
  for (double r : ratios) spread = std::max(spread, std::abs(r / gm - 1.0));
  return {spread < 0.2, "C = " + fmt("%.6f", gm) + " (geometric mean), max deviation " + fmt("%.2e", spread)};
}

// 8. Monotonicity in q and s on a random corpus.
Outcome monotonicity() {
  const GridSpec g{32.0, 1024, 1};
  const FilterBank bank(g, 6);
  const std::vector<double> qs{1.0, 1.5, 2.0, 3.0, 6.0, INFINITY};
  const std::vector<double> ss{-1.0, -0.5, 0.0, 0.25, 0.5, 1.0, 1.5};
  const std::vector<double> space_ps{1.0, 1.5, 2.0, 3.0, INFINITY};
  const std::vector<double> block_ps{1.0, 4.0 / 3.0, 2.0, 4.0, INFINITY};
  std::size_t violations = 0, comparisons = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const CounterRng rng(derive_seed(kSeed, hash_label("c8"), i));
    const NormedSpace space(Exponent::from_double(space_ps[rng.bits(0) % space_ps.size()]), 3);
    const Exponent bp = Exponent::from_double(block_ps[rng.bits(1) % block_ps.size()]);
    const auto amps = gaussian_vectors(hash_label("c8/amp") + i, 3, 3);
    double centre[3], width[3];
    for (int b = 0; b < 3; ++b) {
      centre[b] = -4.0 + 8.0 * rng.uniform(10 + b);
      width[b] = 0.1 + 1.9 * rng.uniform(20 + b);
    }
    const auto f = GridFunction::sample(g, space, [&](std::array<double, 2> x) {
      Vector v(3, 0.0);
      for (int b = 0; b < 3; ++b) {
        const double e = std::exp(-0.5 * (x[0] - centre[b]) * (x[0] - centre[b]) / (width[b] * width[b]));
        for (int c = 0; c < 3; ++c) v[c] += e * amps[b][c];
      }
      return v;
    });
    const auto blocks = block_norms(f, bank, bp);
    for (double s : ss) {
      for (std::size_t j = 0; j + 1 < qs.size(); ++j) {
        ++comparisons;
        if (besov_from_blocks(blocks, s, Exponent::from_double(qs[j])) <
            besov_from_blocks(blocks, s, Exponent::from_double(qs[j + 1]))) {
          ++violations;
        }
      }
    }
    for (double q : qs) {
      for (std::size_t j = 0; j + 1 < ss.size(); ++j) {
        ++comparisons;
        if (besov_from_blocks(blocks, ss[j], Exponent::from_double(q)) >
            besov_from_blocks(blocks, ss[j + 1], Exponent::from_double(q))) {
          ++violations;
        }
      }
    }
  }
  return {violations == 0, std::to_string(comparisons - violations) + "/" + std::to_string(comparisons) +
                               " comparisons monotone (zero tolerance)"};
}

// 9. Ideal property under contractions.
Outcome ideal_property() {
  constexpr std::size_t cells = 16;
  std::size_t ok = 0;
  const std::vector<NormedSpace> spaces{NormedSpace::lp(1.0, 4), NormedSpace::lp(1.5, 4), NormedSpace::linf(4)};
  for (std::uint64_t i = 0; i < 50; ++i) {
    const NormedSpace& space = spaces[i % spaces.size()];
    const auto f = PiecewiseFunction::step(space, uniform_breakpoints(cells),
                                           gaussian_vectors(hash_label("c9/f") + i, cells, 4));
    const auto op = GammaOperator::from_piecewise(f, BasisKind::cell_indicators, cells);
    const auto rows = gaussian_vectors(hash_label("c9/T") + i, cells, cells);
    std::vector<std::vector<double>> t(rows.begin(), rows.end());
    const CounterRng rng(derive_seed(kSeed, hash_label("c9/scale"), i));
    const double scale = (0.5 + 0.5 * rng.uniform(0)) / operator_norm(t);
    for (auto& r : t) {
      for (double& x : r) x *= scale;
    }
    const MCEstimate before = gamma_norm_mc(op, MCConfig{20000, derive_seed(kSeed, hash_label("c9/before"), i), true});
    const MCEstimate after =
        gamma_norm_mc(ideal_compose(op, t), MCConfig{20000, derive_seed(kSeed, hash_label("c9/after"), i), true});
    if (after.mean <= before.mean + 3.0 * (before.std_error + after.std_error)) ++ok;
  }
  return {ok == 50, std::to_string(ok) + "/50 contractions do not increase the gamma norm"};
}

// 10. Type and cotype constants.
Outcome type_cotype() {
  SearchConfig cfg;
  cfg.seed = derive_seed(kSeed, hash_label("c10"));
  bool exact = true;
  for (std::size_t dim : {2u, 4u, 8u}) {
    exact = exact && estimate_constant(NormedSpace::hilbert(dim), ConstantDirection::type, Exponent::finite(2.0), cfg).value == 1.0;
    exact = exact && estimate_constant(NormedSpace::hilbert(dim), ConstantDirection::cotype, Exponent::finite(2.0), cfg).value == 1.0;
    for (double p : {1.0, 1.5, 2.0, 3.0, double(INFINITY)}) {
      exact = exact && estimate_constant(NormedSpace(Exponent::from_double(p), dim), ConstantDirection::type,
                                         Exponent::finite(1.0), cfg)
                               .value == 1.0;
    }
  }
  std::vector<double> values;
  std::optional<std::vector<Vector>> warm;
  for (std::size_t n : {2u, 4u, 8u}) {
    SearchConfig sc = cfg;
    if (warm) {
      for (auto& v : *warm) v.resize(n, 0.0);
      sc.warm_start = warm;
    }
    const auto est = estimate_constant(NormedSpace::linf(n), ConstantDirection::type, Exponent::finite(2.0), sc);
    values.push_back(est.value);
    warm = est.witness;
  }
  const bool monotone = std::is_sorted(values.begin(), values.end());
  return {exact && monotone, std::string("exact ones: ") + (exact ? "yes" : "no") + ", l^inf_n type 2 for n = 2, 4, 8: " +
                                 fmt("%.6f", values[0]) + ", " + fmt("%.6f", values[1]) + ", " + fmt("%.6f", values[2])};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {"1", "Hilbert gamma identity", hilbert_identity},
      {"2", "step closed forms", step_closed_forms},
      {"3", "step Besov bound", step_besov_bound},
      {"4a", "tent Holder bound", tent_holder},
      {"4b", "tent gamma slope within 10%", tent_slope_fit},
      {"4c", "Holder exponent below gamma slope", tent_exponents},
      {"5", "partition inequalities", partition},
      {"6", "filter bank", filter_bank},
      {"7", "dilation constant", dilation},
      {"8", "Besov monotonicities", monotonicity},
      {"9", "ideal property", ideal_property},
      {"10", "type/cotype sanity", type_cotype},
  };
  std::string only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = argv[++i];
    } else {
      std::cerr << "usage: acceptance [--only <criterion>]\n";
      return 2;
    }
  }
  bool all = true, any = false;
  for (const auto& c : criteria) {
    if (!only.empty() && c.id != only) continue;
    any = true;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << "[" << c.id << "] " << c.title << ": " << o.detail << std::endl;
    all = all && o.pass;
  }
  if (!any) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all ? 0 : 1;
}
