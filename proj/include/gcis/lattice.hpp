#pragma once

// Real node sequences, their canonical enumeration λ_n = n + δ_n, separation,
// Beurling densities and the averaged-perturbation (Avdonin-type) classifier
// for complete interpolating sequences of Gaussian shift-invariant spaces.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace gcis {

/// Complex Gaussian parameter c = a + ib, a > 0. Generator is e^{-c x^2}.
class GaussianParam {
public:
  explicit GaussianParam(double a, double b = 0.0);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  std::complex<double> c() const noexcept { return {a_, b_}; }
  bool is_real() const noexcept { return b_ == 0.0; }

private:
  double a_;
  double b_;
};

/// Closed integer range [lo, hi]; empty when lo > hi.
struct IndexRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool empty() const noexcept { return lo > hi; }
  std::size_t size() const noexcept { return empty() ? 0 : static_cast<std::size_t>(hi - lo + 1); }
  bool contains(std::int64_t n) const noexcept { return n >= lo && n <= hi; }
  IndexRange widened(std::int64_t by) const noexcept { return {lo - by, hi + by}; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Finite list of nodes λ_m for m in [index_lo, index_lo + size).
struct ExplicitWindow {
  std::int64_t index_lo = 0;
  std::vector<double> nodes;
};

/// λ_n = n + offsets[n mod P].
struct PeriodicPerturbation {
  std::vector<double> offsets;
};

/// λ_n = alpha * n + beta.
struct AffineGrid {
  double alpha = 1.0;
  double beta = 0.0;
};

/// Validated, strictly increasing real node sequence. Immutable.
class NodeSequence {
public:
  using Kind = std::variant<ExplicitWindow, PeriodicPerturbation, AffineGrid>;

  /// Throws NonIncreasing on duplicate or out-of-order nodes, EmptyWindow on no nodes.
  static NodeSequence explicit_window(std::int64_t index_lo, std::vector<double> nodes);
  /// Throws BadParameter on P < 1, NonIncreasing when n + δ_{n mod P} is not increasing.
  static NodeSequence periodic(std::vector<double> offsets);
  /// Throws BadParameter unless alpha > 0.
  static NodeSequence affine(double alpha, double beta);

  const Kind& kind() const noexcept { return kind_; }
  std::string kind_name() const;
  bool is_finite() const noexcept { return std::holds_alternative<ExplicitWindow>(kind_); }

  /// Data range for explicit windows; nullopt for the infinite models.
  std::optional<IndexRange> data_range() const;

  /// λ_n. Throws BadParameter outside an explicit window's data range.
  double node(std::int64_t n) const;
  std::vector<double> nodes(IndexRange range) const;

  /// Clips `range` to the data range (identity for infinite models).
  IndexRange clip(IndexRange range) const;

private:
  explicit NodeSequence(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Re-indexing λ_m ↦ n = m + offset with δ_n = λ_m − n, over new indices `range`.
struct Enumeration {
  std::int64_t offset = 0;
  IndexRange range;
  std::vector<double> deltas;

  double sup_abs() const;
  double delta(std::int64_t n) const { return deltas.at(static_cast<std::size_t>(n - range.lo)); }
};

/// Canonical enumeration when condition (a) is plausible on `window`: always for
/// periodic models, only α = 1 for affine grids, and sup|δ| ≤ max(1, size/20)
/// for explicit windows (a linearly drifting δ has sup comparable to the window).
std::optional<Enumeration> bounded_enumeration(const NodeSequence& seq,
                                               std::optional<IndexRange> window = std::nullopt);

struct SeparationResult {
  double min_gap = 0.0;
  bool separated = false;
};

/// Minimum adjacent gap. Exact (window ignored) for periodic and affine models.
/// Throws EmptyWindow when the window (clipped to data) is empty.
SeparationResult check_separation(const NodeSequence& seq, IndexRange window);

/// Order-respecting re-indexing minimising sup|δ_n| over `window`.
/// `window` is in the sequence's original indexing; defaults to the data range,
/// one period, or [-50, 50] for affine grids. Returns nullopt when the best
/// sup|δ| exceeds `bound` (condition (a) fails on this window).
std::optional<Enumeration> canonical_enumeration(const NodeSequence& seq, double bound,
                                                 std::optional<IndexRange> window = std::nullopt);

enum class DensityMethod { ExactFormula, WindowSweep };

struct DensitySample {
  double r = 0.0;
  double d_plus = 0.0;
  double d_minus = 0.0;
};

struct DensityEstimate {
  double d_plus = 0.0;
  double d_minus = 0.0;
  DensityMethod method = DensityMethod::ExactFormula;
  std::vector<DensitySample> sweep;  // WindowSweep only, in input order of r
  /// Largest change of either estimate between consecutive r values.
  double max_successive_change = 0.0;
};

/// Upper/lower Beurling densities. Exact for periodic and affine models;
/// for explicit windows, exact sliding-window counts of [x, x + r] with x
/// ranging so the window stays inside the data. Throws WindowTooSmall when
/// r_values is empty, some r <= 0, or r exceeds half the data span.
DensityEstimate beurling_densities(const NodeSequence& seq, std::span<const double> r_values);

/// Counts of nodes in [x, x + r] for sorted data: {max, min} over admissible x.
std::pair<std::size_t, std::size_t> window_count_extremes(std::span<const double> sorted_nodes, double r);

enum class VerdictCaveat { Exact, FiniteWindowHeuristic };

struct AvdoninWindow {
  int n = 1;
  double delta_star = 0.0;
};

struct AvdoninVerdict {
  bool separated = false;
  double min_gap = 0.0;
  bool enumerable = false;
  std::int64_t offset = 0;
  double delta_sup = 0.0;
  AvdoninWindow best_window;
  bool passes = false;
  VerdictCaveat caveat = VerdictCaveat::Exact;
};

inline constexpr double kDefaultMargin = 1e-9;
/// Threshold on the averaged perturbation: δ* < 1/2.
inline constexpr double kAvdoninThreshold = 0.5;

/// Sup over all full windows of |mean of n consecutive values|.
double sup_window_average(std::span<const double> values, int n);

/// Classifier for complete interpolating sequences of V²_c (independent of c).
AvdoninVerdict avdonin_verdict(const NodeSequence& seq, int n_max = 8, double margin = kDefaultMargin);

std::string to_string(VerdictCaveat caveat);
std::string to_string(DensityMethod method);

}  // namespace gcis
