#pragma once

// Uniqueness up to sign of real f ∈ V²_a from |f| on half-step nodes
// λ_m = m/2 + δ_m, checked by exhausting all sign patterns on a window.

#include <cstdint>
#include <vector>

#include "gcis/gauss_space.hpp"
#include "gcis/lattice.hpp"

namespace gcis {

/// Model after x ↦ 2x: f(x) = Σ c_n e^{-a(x-n)²} = Σ c'_k e^{-(a/4)(y-k)²}
/// with y = 2x, c'_{2n} = c_n and c'_{odd} = 0.
struct DilatedModel {
  GaussianParam c;
  CoefficientVector coeffs;
  NodeSequence nodes;  // 2λ_m over the window, same indices
};

/// Throws BadParameter when the window is empty or not covered by `seq`.
DilatedModel dilate_half_step(const GaussianParam& c, const CoefficientVector& coeffs, const NodeSequence& seq,
                              IndexRange window);

inline constexpr std::size_t kMaxSignWindow = 16;
inline constexpr double kSignResidualCutoff = 1e-8;

struct SignRetrievalResult {
  AvdoninVerdict dilated_verdict;  // classifier on 2λ; δ < 1/4 reads as δ* < 1/2 here
  bool precondition_met = false;
  std::size_t patterns = 0;
  std::size_t survivors = 0;
  /// Distinct least-squares solutions among the survivors (up to 1e-8).
  std::vector<std::vector<double>> solutions;
  /// Smallest relative residual among rejected patterns (inf if none rejected).
  double min_rejected_residual = 0.0;
  bool passes = false;
};

/// Samples |f(λ_m)| on `window` (W = size ≤ 16), solves the real least-squares
/// problem on the support of `coeffs` for each of the 2^W sign patterns, and
/// keeps those with relative residual < 1e-8. Passes iff the precondition
/// holds and every survivor solves to +c or −c within 1e-8 (relative to ‖c‖).
/// Throws WindowTooLarge, ComplexInput (b ≠ 0 or complex coefficients),
/// BadParameter when the window has fewer nodes than coefficients.
SignRetrievalResult sign_retrieval_check(const GaussianParam& c, const CoefficientVector& coeffs,
                                         const NodeSequence& seq, IndexRange window);

}  // namespace gcis
