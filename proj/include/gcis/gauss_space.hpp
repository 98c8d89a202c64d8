#pragma once

// The shift-invariant space V²_c = { Σ c_n e^{-c(x-n)²} : (c_n) ∈ ℓ² }:
// evaluation, collocation matrices, interpolation, empirical frame/Riesz
// bounds, the split f = f₋ + c₀g + f₊ and the Hilbert–Schmidt off-blocks.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "gcis/lattice.hpp"

namespace gcis {

using Complex = std::complex<double>;

/// Finitely supported coefficient sequence (c_n) for n in [n_lo, n_lo + size).
struct CoefficientVector {
  std::int64_t n_lo = 0;
  std::vector<Complex> values;

  static CoefficientVector unit(std::int64_t n) { return {n, {Complex(1.0)}}; }
  static CoefficientVector zeros(IndexRange r) { return {r.lo, std::vector<Complex>(r.size())}; }

  IndexRange range() const { return {n_lo, n_lo + static_cast<std::int64_t>(values.size()) - 1}; }
  bool empty() const { return values.empty(); }
  /// c_n, zero outside the stored range.
  Complex at(std::int64_t n) const;
  double norm() const;
  bool is_real() const;
  /// Throws BadParameter on NaN/Inf entries.
  void validate() const;
};

/// e^{-c t²}
Complex gaussian_atom(const GaussianParam& c, double t);

/// Bound on Σ_{n ∈ ℤ, |x-n| > R} e^{-2a(x-n)²}, uniform in x.
double gaussian_tail_sq(double a, double radius);

struct Evaluation {
  Complex value;
  double tail_bound = 0.0;  // certified bound on the neglected terms
};

/// f(x) = Σ c_n e^{-c(x-n)²}, summing |x-n| ≤ R with R chosen so the
/// neglected part is below tol·‖c‖₂.
Evaluation evaluate(const GaussianParam& c, const CoefficientVector& coeffs, double x, double tol = 1e-15);

struct CollocationMatrix {
  IndexRange rows;             // node indices m
  IndexRange cols;             // coefficient indices n
  std::vector<double> nodes;   // λ_m, one per row
  Eigen::MatrixXcd entries;    // e^{-c(λ_m - n)²}
  int buffer = 0;              // B with e^{-aB²/2} < tol
  double tail_bound = 0.0;     // ℓ² bound on each row's neglected columns
};

/// Buffer width B = ceil(sqrt(2 ln(1/tol) / a)).
int collocation_buffer(double a, double tol);

/// Collocation matrix for arbitrary increasing nodes; columns cover
/// [floor(min λ) - B, ceil(max λ) + B].
CollocationMatrix collocation_matrix_from_nodes(const GaussianParam& c, IndexRange rows,
                                                std::vector<double> nodes, double tol);

/// Collocation matrix on `node_range` (original indexing). Requires a canonical
/// enumeration with bounded δ on that range, else throws NoEnumeration.
CollocationMatrix collocation_matrix(const GaussianParam& c, const NodeSequence& seq, IndexRange node_range,
                                     double tol = 1e-14);

struct InterpolationResult {
  CoefficientVector coeffs;
  double residual = 0.0;    // ‖A c − y‖ / ‖y‖
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double norm_ratio = 0.0;  // ‖c‖ / ‖y‖
};

inline constexpr double kSingularRatio = 1e-13;

/// Minimum-norm least-squares solve of A c = samples on `node_range`.
/// Throws SingularSystem when σ_min < 1e-13·σ_max, BadParameter on size mismatch.
InterpolationResult interpolate(const GaussianParam& c, const NodeSequence& seq, IndexRange node_range,
                                std::span<const Complex> samples, double tol = 1e-14);

enum class Orientation {
  Frame,  // lower sampling bound: restrict coefficients, keep all nodes
  Riesz,  // lower interpolation bound: restrict nodes, keep all (buffered) coefficients
};

struct FrameBoundOptions {
  Orientation orientation = Orientation::Frame;
  /// Fraction of the node window kept; defaults to 2/3 for Frame, 1 for Riesz.
  double interior_fraction = -1.0;
  double tol = 1e-14;

  double effective_fraction() const;
};

struct FrameBoundRecord {
  std::int64_t m = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
};

struct FrameBoundReport {
  Orientation orientation = Orientation::Frame;
  double interior_fraction = 0.0;
  std::vector<FrameBoundRecord> records;
  /// σ_min(M_{k+1}) / σ_min(M_k) for consecutive sizes.
  std::vector<double> trend_ratios;
};

/// Extremal singular values of the interior-restricted collocation matrix on
/// nodes [-M, M] for each M in `sizes` (must be increasing).
FrameBoundReport frame_bounds(const GaussianParam& c, const NodeSequence& seq, std::span<const std::int64_t> sizes,
                              const FrameBoundOptions& options = {});

struct SplitParts {
  CoefficientVector minus;  // n ≤ -1
  Complex c0;
  CoefficientVector plus;   // n ≥ 1
};

SplitParts split_parts(const CoefficientVector& coeffs);
CoefficientVector join_parts(const SplitParts& parts);

struct HsNorm {
  double hs_norm = 0.0;
  double tail_bound = 0.0;  // bound on the squared HS mass outside the window
};

/// Hilbert–Schmidt norm of K₊ : (c_n)_{n≥1} ↦ (f₊(λ_m))_{m≤-1} restricted to
/// -W ≤ m ≤ -1, 1 ≤ n ≤ W, using the canonical enumeration of `seq`.
HsNorm compact_block_hsnorm(const GaussianParam& c, const NodeSequence& seq, int window);

std::string to_string(Orientation o);

}  // namespace gcis
