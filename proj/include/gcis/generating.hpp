#pragma once

// Generating products G₀(w) = Π_{m≥1} (1 − w e^{-2am}) and
// G₊(w) = Π_{m≥1} (1 − w / w_m), evaluated in log form.

#include <cstdint>
#include <vector>

#include "gcis/fock.hpp"

namespace gcis {

struct GeneratingValue {
  double log_modulus = kNegInf;
  double phase = 0.0;
  bool on_zero = false;
};

/// Relative distance below which a point counts as sitting on a zero.
inline constexpr double kOnZeroTolerance = 1e-14;

/// Factors of G₀ needed at log|w| = t so that every omitted factor is within
/// 1e-16 of one.
std::size_t g0_terms(double a, double t);

/// log of G₀(w); on_zero set (and log_modulus = -inf) when w hits a zero.
GeneratingValue g0_evaluate(double a, const LogPolarPoint& w, std::size_t terms = 0);

/// log dist(w, {e^{2am} : m ≥ 1}).
double g0_log_distance(double a, const LogPolarPoint& w);

/// |G₀(w)| (1 + |w|^{3/2}) / (e^{φ(w)} dist(w, W₀)). Throws OnZero.
double g0_estimate_ratio(double a, const LogPolarPoint& w);

/// Finite product over zeros sorted by modulus. Keeps prefix sums of
/// log|w_m| so factors with |w| > |w_m| cost a single expm1 each.
class GeneratingProduct {
public:
  /// Throws UnsortedInput unless the zeros are sorted by modulus.
  explicit GeneratingProduct(std::vector<LogPolarPoint> zeros);

  /// Zeros w_m = e^{2cλ_m}, m = 1..M, of the canonical enumeration of `seq`,
  /// with M large enough for |w| ≤ e^{t_max} to ignore the rest to 1e-16.
  /// Throws NoEnumeration when the sequence has no bounded enumeration.
  static GeneratingProduct from_sequence(const GaussianParam& c, const NodeSequence& seq, double t_max);

  const std::vector<LogPolarPoint>& zeros() const noexcept { return zeros_; }

  GeneratingValue evaluate(const LogPolarPoint& w) const;
  double log_distance(const LogPolarPoint& w) const;

private:
  std::vector<LogPolarPoint> zeros_;
  std::vector<double> prefix_log_modulus_;  // Σ_{j<k} log|w_j|
};

/// |G₊(w)| (1 + |w|)^{3/2 + δ} / (dist(w, W₊) e^{φ(w)}), δ being the
/// lattice-side averaged bound (< 1/2). Throws OnZero.
double perturbed_estimate_ratio(const GeneratingProduct& g, double a, double delta, const LogPolarPoint& w);

/// Points t = t_lo, t_lo + step, ... ≤ t_hi at `angles` equispaced arguments,
/// dropping those within relative distance min_rel_dist of any zero.
std::vector<LogPolarPoint> estimate_grid(double t_lo, double t_hi, double step, int angles,
                                         const std::vector<LogPolarPoint>& zeros, double min_rel_dist);

/// Zeros e^{2am}, m = 1..count, of G₀.
std::vector<LogPolarPoint> g0_zeros(double a, std::size_t count);

struct FockWindow {
  int n = 1;
  double delta_star = 0.0;
};

struct FockVerdict {
  double gamma = 0.0;  // largest γ with |w_m − w_n| ≥ γ|w_n|, capped at 1/2
  bool separated = false;
  double delta_sup = 0.0;
  FockWindow best_window;
  bool passes = false;
  VerdictCaveat caveat = VerdictCaveat::FiniteWindowHeuristic;
};

/// Condition set for a complete interpolating sequence of F_a, with points
/// indexed n = 1, 2, ... and δ_n = log|w_n| − 2an. The verdict reads only the
/// moduli, apart from γ. Throws UnsortedInput when |w_n| decreases somewhere,
/// EmptyWindow on no points.
FockVerdict fock_cis_verdict(double a, const std::vector<LogPolarPoint>& points, int n_max = 8,
                             double margin = kDefaultMargin);

/// Lattice perturbation δ to the Fock-side δ: 2aδ. The 1/2 threshold maps to a.
inline double lattice_to_fock_delta(double a, double delta) { return 2.0 * a * delta; }
inline double fock_to_lattice_delta(double a, double delta) { return delta / (2.0 * a); }

/// w_n = e^{2cλ_{n − offset}} for n in [1, count], where `offset` is an
/// enumeration offset (as in Enumeration or AvdoninVerdict). Throws
/// BadParameter when an explicit window does not cover the indices.
std::vector<LogPolarPoint> fock_points(const GaussianParam& c, const NodeSequence& seq, std::int64_t offset,
                                       std::size_t count);

}  // namespace gcis
