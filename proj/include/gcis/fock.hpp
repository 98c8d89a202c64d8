#pragma once

// Small Fock space F_a of entire functions with ‖F‖² = Σ |b_n|² e^{2a(n+1)²}.
// Every magnitude on this side is carried as a logarithm: the weights and
// moduli w = e^{2cλ} overflow doubles long before the asymptotics show.

#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "gcis/gauss_space.hpp"
#include "gcis/lattice.hpp"

namespace gcis {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Reduces an angle to (-π, π].
double wrap_phase(double x);

/// log(Σ exp(x_i)); -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> xs);

/// log(1 + e^x) without overflow.
double softplus(double x);

/// e^z − 1 accurate near z = 0.
std::complex<double> expm1(std::complex<double> z);

/// Nonzero complex number w = exp(log_modulus + i·argument).
struct LogPolarPoint {
  double log_modulus = 0.0;
  double argument = 0.0;

  static LogPolarPoint from_complex(std::complex<double> w);
  std::complex<double> to_complex() const { return std::polar(std::exp(log_modulus), argument); }
  std::complex<double> log() const { return {log_modulus, argument}; }
};

/// log|w_1 − w_2| computed from the logs (never forms e^{log_modulus}).
double log_distance(const LogPolarPoint& w1, const LogPolarPoint& w2);

/// A complex scalar as (log|z|, arg z); log_mag = -inf encodes zero.
struct LogPolarValue {
  double log_mag = kNegInf;
  double phase = 0.0;

  bool is_zero() const { return log_mag == kNegInf; }
  static LogPolarValue from_complex(std::complex<double> z);
  std::complex<double> to_complex() const;
};

/// F(w) = Σ_{n=0}^{N} b_n w^n with coefficients in log-polar form.
struct FockSeries {
  std::vector<LogPolarValue> coeffs;

  static FockSeries monomial(std::size_t degree, std::complex<double> b = 1.0);
  static FockSeries from_complex(std::span<const std::complex<double>> b);

  bool is_zero() const;
  /// Highest degree with a nonzero coefficient; -1 for the zero series.
  long degree() const;
};

struct FockDecomposition {
  FockSeries minus;
  std::complex<double> c0;
  FockSeries plus;
};

/// F₊ has degree-(n−1) coefficient c_n e^{-cn²}; F₋ uses c_{−n}.
FockDecomposition to_fock(const GaussianParam& c, const CoefficientVector& coeffs);

/// log ‖F‖² via log-sum-exp of 2 log|b_n| + 2a(n+1)²; -inf for F = 0.
double fock_norm_log(const FockSeries& f, double a);

/// F(w) as a log-polar value.
LogPolarValue fock_evaluate(const FockSeries& f, const LogPolarPoint& w);

/// Trapezoid grid in t = log|w| plus an equispaced angular rule.
struct RadialGrid {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double step = 0.0;
  int angular_points = 0;
};

/// Symmetric grid [-T, T] covering every monomial's Gaussian bump in t.
RadialGrid default_radial_grid(const FockSeries& f, double a);

struct QuadratureResult {
  double log_norm_sq = kNegInf;
  double norm_sq = 0.0;         // exp(log_norm_sq); may be +inf
  double error_estimate = 0.0;  // relative, step h vs 2h
};

/// Area integral (1/(2√(2πa))) ∫ |F|² e^{-(log|w|)²/(2a)} dm₂ in log-radial
/// coordinates. Throws GridTooCoarse when the step-halving estimate or the
/// endpoint tail exceeds rel_tol.
QuadratureResult fock_norm_quadrature(const FockSeries& f, double a, const RadialGrid& grid, double rel_tol = 1e-8);
QuadratureResult fock_norm_quadrature(const FockSeries& f, double a);

/// ⟨F, G⟩ by the same quadrature (linear domain; meant for low degrees).
std::complex<double> fock_inner_quadrature(const FockSeries& f, const FockSeries& g, double a, const RadialGrid& grid);

/// φ(w) = (log|w|)² / (4a).
double phi(double a, const LogPolarPoint& w);

struct KernelNorm {
  double log_norm_sq = 0.0;  // log ‖k_w‖²
  double log_ratio = 0.0;    // log(‖k_w‖² (1 + |w|²) e^{-2φ(w)})
  double ratio = 0.0;
  double certified_tail = 0.0;  // relative bound on the omitted series terms
  std::size_t terms = 0;
};

/// Number of terms of Σ |w|^{2n} e^{-2a(n+1)²} whose omitted tail is < rel_tol.
std::size_t kernel_terms_needed(double a, const LogPolarPoint& w, double rel_tol = 1e-12);

/// ‖k_w‖² from its series. Throws TooFewTerms when the tail after `terms`
/// cannot be certified below 1e-12 of the partial sum.
KernelNorm kernel_norm(double a, const LogPolarPoint& w, std::size_t terms);
KernelNorm kernel_norm(double a, const LogPolarPoint& w);

/// w = e^{2cλ}: log_modulus 2aλ, argument 2bλ reduced to (-π, π].
LogPolarPoint node_transform(const GaussianParam& c, double lambda);

struct ConsistencyResult {
  std::complex<double> lhs;  // f₊(λ) summed in V²_c
  std::complex<double> rhs;  // e^{-φ(w)} e^{-ibλ²} w F₊(w)
  double relative_gap = 0.0;
};

/// Both sides of f₊(λ) = e^{-φ(w)} e^{-ibλ²} w F₊(w). Entries of `coeffs`
/// with n ≤ 0 are rejected (BadParameter).
ConsistencyResult consistency_identity(const GaussianParam& c, const CoefficientVector& coeffs, double lambda);

}  // namespace gcis
