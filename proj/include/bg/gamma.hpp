#ifndef BG_GAMMA_HPP
#define BG_GAMMA_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bg/grid.hpp"
#include "bg/interval_set.hpp"
#include "bg/monte_carlo.hpp"
#include "bg/piecewise.hpp"

namespace bg {

enum class BasisKind { cell_indicators, trigonometric };

std::string to_string(BasisKind kind);
BasisKind basis_kind_from_string(const std::string& name);

/// The Pettis operator I_f : L^2(S) -> E, g -> int f g, held through its
/// images c_n = I_f h_n of an orthonormal basis h_1..h_M of (a subspace of) L^2(S).
///
/// Piecewise sources live on S = [a, b]. Cell indicators split S into M equal
/// cells, h_n = |cell|^{-1/2} 1_cell. The trigonometric basis is 1, sqrt 2 cos,
/// sqrt 2 sin of 2 pi k (t - a) / (b - a), normalized, in that order.
/// Grid sources live on the period box. Cells are blocks of nodes (M^{1/d} per
/// axis); the trigonometric basis is the real Fourier basis ordered by |xi|.
class GammaOperator {
 public:
  /// Throws std::invalid_argument for a step function whose breakpoints are not
  /// cell boundaries (cell basis only); truncation would bias the estimate.
  static GammaOperator from_piecewise(const PiecewiseFunction& f, BasisKind kind, std::size_t basis_size);
  static GammaOperator from_piecewise(const PiecewiseFunction& f, BasisKind kind, std::size_t basis_size,
                                      double lower, double upper);
  static GammaOperator from_grid(const GridFunction& f, BasisKind kind, std::size_t basis_size);
  /// Direct coefficient form, no source.
  static GammaOperator from_coefficients(NormedSpace space, BasisKind kind, std::vector<Vector> coefficients);

  const NormedSpace& space() const { return space_; }
  BasisKind basis() const { return basis_; }
  std::size_t basis_size() const { return coefficients_.size(); }
  const std::vector<Vector>& coefficients() const { return coefficients_; }
  /// (||f||_2^2 - sum ||c_n||_2^2) / ||f||_2^2 with Euclidean coordinates: the
  /// share of L^2 energy outside the span of the basis (0 without a source).
  double truncation_residual() const { return truncation_residual_; }
  const std::optional<PiecewiseFunction>& piecewise_source() const { return source_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }

  /// Largest deviation of the basis Gram matrix from the identity, evaluated
  /// with a quadrature that is exact for the basis (O(M^2) inner products).
  double gram_error() const;

 private:
  GammaOperator(NormedSpace space, BasisKind kind) : space_(std::move(space)), basis_(kind) {}

  NormedSpace space_;
  BasisKind basis_;
  std::vector<Vector> coefficients_;
  std::optional<PiecewiseFunction> source_;
  double lower_ = 0.0;
  double upper_ = 0.0;
  std::optional<GridSpec> grid_;
  double truncation_residual_ = 0.0;
};

/// ||f||_{L^2(S;E)}, which equals ||I_f||_gamma for Hilbert E. Throws for other E.
double gamma_norm_hilbert(const PiecewiseFunction& f);
double gamma_norm_hilbert(const GridFunction& f);
double gamma_norm_hilbert(const GammaOperator& op);

/// (E||sum_n gamma_n c_n||^2)^{1/2}. Exact for zero, rank-one and Hilbert
/// operators unless cfg.force_sampling; otherwise Monte Carlo with delta-method
/// standard error.
MCEstimate gamma_norm_mc(const GammaOperator& op, const MCConfig& cfg);

struct DisjointGamma {
  std::vector<double> sigmas;  // (int |f_k|^2)^{1/2} per coordinate
  double p_moment = 0.0;       // (sum_k E|N(0, sigma_k^2)|^p)^{1/p} = (E||X||^p)^{1/p}
  MCEstimate l2_moment;        // (E||X||^2)^{1/2}, exact for p = 2
};

/// For f valued in l^p_n (p finite) whose coordinates have pairwise disjoint
/// supports, the Gaussian coordinates of sum_n gamma_n I_f h_n are independent
/// N(0, sigma_k^2). Throws if two coordinate supports overlap.
DisjointGamma gamma_norm_disjoint_lp(const PiecewiseFunction& f, const MCConfig& cfg = {});

/// I_f restricted to a subset, i.e. I_{f 1_subset}, in the same basis.
GammaOperator restrict_gamma(const GammaOperator& op, const IntervalSet& subset);

/// h -> I_f(T* h): coefficients c'_n = sum_m T[n][m] c_m. Throws unless T is
/// M x M.
GammaOperator ideal_compose(const GammaOperator& op, const std::vector<std::vector<double>>& t);

/// Spectral norm of a square matrix (largest singular value).
double operator_norm(const std::vector<std::vector<double>>& t);

enum class PartitionDirection { type, cotype };

struct PartitionReport {
  PartitionDirection direction = PartitionDirection::type;
  Exponent exponent = Exponent::finite(1.0);
  double constant = 1.0;
  MCEstimate whole;                 // ||R||_gamma
  std::vector<MCEstimate> pieces;   // ||R|_{S_j}||_gamma
  /// Type: lhs = ||R||, rhs = T (sum ||R|S_j||^p)^{1/p}.
  /// Cotype: lhs = (sum ||R|S_j||^q)^{1/q}, rhs = C ||R||.
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_se = 0.0;
  double rhs_se = 0.0;
  double margin = 0.0;     // rhs - lhs
  double tolerance = 0.0;  // 3 (lhs_se + rhs_se)
  bool holds = false;      // margin >= -tolerance
  /// | ||R||^2 - sum_j ||R|S_j||^2 | from exact values (Hilbert E only, else NaN).
  double pythagoras_residual = 0.0;
};

/// Both sides of the partition inequalities for a partition of the operator's
/// domain. The constant is supplied by the caller. Throws if the subsets
/// overlap or fail to cover the domain.
PartitionReport partition_inequality_check(const GammaOperator& op, const std::vector<IntervalSet>& partition,
                                           PartitionDirection direction, const Exponent& exponent, double constant,
                                           const MCConfig& cfg);

}  // namespace bg

#endif  // BG_GAMMA_HPP
