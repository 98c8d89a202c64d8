#include "gcis/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gcis/errors.hpp"

namespace gcis {

double wrap_phase(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(x, two_pi);  // in [-π, π]
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

double log_sum_exp(std::span<const double> xs) {
  double m = kNegInf;
  for (double x : xs) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  if (m == std::numeric_limits<double>::infinity()) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

std::complex<double> expm1(std::complex<double> z) {
  const double s = std::sin(0.5 * z.imag());
  const double re = std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * s * s;
  return {re, std::exp(z.real()) * std::sin(z.imag())};
}

LogPolarPoint LogPolarPoint::from_complex(std::complex<double> w) {
  if (w == 0.0) throw Error(ErrorCode::BadParameter, "log-polar point must be nonzero");
  return {std::log(std::abs(w)), std::arg(w)};
}

double log_distance(const LogPolarPoint& w1, const LogPolarPoint& w2) {
  // |e^{s1} − e^{s2}| = |e^{s2}| · |e^{s1 − s2} − 1|
  const std::complex<double> diff{w1.log_modulus - w2.log_modulus, wrap_phase(w1.argument - w2.argument)};
  const double m = std::abs(gcis::expm1(diff));
  return m == 0.0 ? kNegInf : w2.log_modulus + std::log(m);
}

LogPolarValue LogPolarValue::from_complex(std::complex<double> z) {
  if (z == 0.0) return {};
  return {std::log(std::abs(z)), std::arg(z)};
}

std::complex<double> LogPolarValue::to_complex() const {
  if (is_zero()) return {};
  return std::polar(std::exp(log_mag), phase);
}

FockSeries FockSeries::monomial(std::size_t degree, std::complex<double> b) {
  FockSeries f;
  f.coeffs.resize(degree + 1);
  f.coeffs[degree] = LogPolarValue::from_complex(b);
  return f;
}

FockSeries FockSeries::from_complex(std::span<const std::complex<double>> b) {
  FockSeries f;
  f.coeffs.reserve(b.size());
  for (const auto& v : b) f.coeffs.push_back(LogPolarValue::from_complex(v));
  return f;
}

bool FockSeries::is_zero() const { return degree() < 0; }

long FockSeries::degree() const {
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (!coeffs[i].is_zero()) return static_cast<long>(i);
  }
  return -1;
}

namespace {

// Coefficient of w^{n-1} for input c_n: c_n e^{-c n²}, kept in log-polar form.
LogPolarValue weighted(const GaussianParam& c, std::complex<double> cn, std::int64_t n) {
  if (cn == 0.0) return {};
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  return {std::log(std::abs(cn)) - c.a() * n2, wrap_phase(std::arg(cn) - c.b() * n2)};
}

}  // namespace

FockDecomposition to_fock(const GaussianParam& c, const CoefficientVector& coeffs) {
  coeffs.validate();
  FockDecomposition out;
  const auto range = coeffs.range();
  if (range.empty()) return out;
  if (range.hi >= 1) out.plus.coeffs.resize(static_cast<std::size_t>(range.hi));
  if (range.lo <= -1) out.minus.coeffs.resize(static_cast<std::size_t>(-range.lo));
  for (std::int64_t n = range.lo; n <= range.hi; ++n) {
    const auto cn = coeffs.at(n);
    if (n >= 1) {
      out.plus.coeffs[static_cast<std::size_t>(n - 1)] = weighted(c, cn, n);
    } else if (n <= -1) {
      out.minus.coeffs[static_cast<std::size_t>(-n - 1)] = weighted(c, cn, -n);
    } else {
      out.c0 = cn;
    }
  }
  return out;
}

double fock_norm_log(const FockSeries& f, double a) {
  std::vector<double> terms;
  terms.reserve(f.coeffs.size());
  for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
    if (f.coeffs[n].is_zero()) continue;
    const double k = static_cast<double>(n + 1);
    terms.push_back(2.0 * f.coeffs[n].log_mag + 2.0 * a * k * k);
  }
  return log_sum_exp(terms);
}

LogPolarValue fock_evaluate(const FockSeries& f, const LogPolarPoint& w) {
  double top = kNegInf;
  for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
    if (!f.coeffs[n].is_zero()) top = std::max(top, f.coeffs[n].log_mag + static_cast<double>(n) * w.log_modulus);
  }
  if (top == kNegInf) return {};
  std::complex<double> sum{};
  for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
    const auto& b = f.coeffs[n];
    if (b.is_zero()) continue;
    const double nd = static_cast<double>(n);
    sum += std::polar(std::exp(b.log_mag + nd * w.log_modulus - top), b.phase + nd * w.argument);
  }
  if (sum == 0.0) return {};
  return {top + std::log(std::abs(sum)), std::arg(sum)};
}

RadialGrid default_radial_grid(const FockSeries& f, double a) {
  // Monomial w^n contributes a Gaussian bump in t centred at 2a(n+1), width √a.
  const double reach = 9.0 * std::sqrt(a);
  double extent = reach + 2.0 * a;
  for (std::size_t n = 0; n < f.coeffs.size(); ++n) {
    if (!f.coeffs[n].is_zero()) extent = std::max(extent, 2.0 * a * static_cast<double>(n + 1) + reach);
  }
  RadialGrid g;
  g.t_lo = -extent;
  g.t_hi = extent;
  g.step = 0.05 * std::sqrt(a);
  g.angular_points = 2 * static_cast<int>(std::max<long>(f.degree(), 0)) + 4;
  return g;
}

namespace {

// log of (1/2π)∫|F(e^{t+iθ})|² dθ, exact for angular_points > degree.
double log_angular_mean_sq(const FockSeries& f, double t, int angular_points) {
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(angular_points));
  for (int k = 0; k < angular_points; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / angular_points;
    const auto v = fock_evaluate(f, {t, theta});
    logs.push_back(2.0 * v.log_mag);
  }
  return log_sum_exp(logs) - std::log(static_cast<double>(angular_points));
}

}  // namespace

QuadratureResult fock_norm_quadrature(const FockSeries& f, double a, const RadialGrid& grid, double rel_tol) {
  QuadratureResult out;
  if (f.is_zero()) return out;
  if (!(grid.step > 0.0) || grid.t_hi <= grid.t_lo || grid.angular_points <= f.degree()) {
    throw Error(ErrorCode::GridTooCoarse, "radial grid is degenerate or under-resolves the angular integral");
  }
  const auto steps = static_cast<std::size_t>(std::ceil((grid.t_hi - grid.t_lo) / grid.step));
  const double h = (grid.t_hi - grid.t_lo) / static_cast<double>(steps);
  std::vector<double> log_f(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = grid.t_lo + h * static_cast<double>(i);
    log_f[i] = log_angular_mean_sq(f, t, grid.angular_points) + 2.0 * t - t * t / (2.0 * a);
  }
  auto trapezoid = [&](std::size_t stride, double width) {
    std::vector<double> terms;
    for (std::size_t i = 0; i <= steps; i += stride) {
      const bool end = (i == 0) || (i + stride > steps);
      terms.push_back(log_f[i] + std::log(end ? 0.5 * width : width));
    }
    return log_sum_exp(terms);
  };
  const double fine = trapezoid(1, h);
  const double peak = *std::max_element(log_f.begin(), log_f.end());
  const double tail = std::exp(std::max(log_f.front(), log_f.back()) - peak);
  double err = tail;
  if (steps % 2 == 0) {
    err = std::max(err, std::abs(std::expm1(trapezoid(2, 2.0 * h) - fine)));
  }
  out.log_norm_sq = fine - 0.5 * std::log(2.0 * std::numbers::pi * a);
  out.norm_sq = std::exp(out.log_norm_sq);
  out.error_estimate = err;
  if (err > rel_tol) {
    throw Error(ErrorCode::GridTooCoarse, "quadrature error estimate " + std::to_string(err) + " above tolerance");
  }
  return out;
}

QuadratureResult fock_norm_quadrature(const FockSeries& f, double a) {
  return fock_norm_quadrature(f, a, default_radial_grid(f, a));
}

std::complex<double> fock_inner_quadrature(const FockSeries& f, const FockSeries& g, double a, const RadialGrid& grid) {
  const auto steps = static_cast<std::size_t>(std::ceil((grid.t_hi - grid.t_lo) / grid.step));
  const double h = (grid.t_hi - grid.t_lo) / static_cast<double>(steps);
  std::complex<double> total{};
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = grid.t_lo + h * static_cast<double>(i);
    std::complex<double> ang{};
    for (int k = 0; k < grid.angular_points; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / grid.angular_points;
      ang += fock_evaluate(f, {t, theta}).to_complex() * std::conj(fock_evaluate(g, {t, theta}).to_complex());
    }
    ang /= static_cast<double>(grid.angular_points);
    const double w = (i == 0 || i == steps) ? 0.5 * h : h;
    total += ang * std::exp(2.0 * t - t * t / (2.0 * a)) * w;
  }
  return total / std::sqrt(2.0 * std::numbers::pi * a);
}

double phi(double a, const LogPolarPoint& w) { return w.log_modulus * w.log_modulus / (4.0 * a); }

namespace {

double kernel_log_term(double a, double t, std::size_t n) {
  const double k = static_cast<double>(n + 1);
  return 2.0 * static_cast<double>(n) * t - 2.0 * a * k * k;
}

// Relative bound on Σ_{n ≥ N} terms given the first N; +inf if not yet decaying.
double kernel_tail(double a, double t, std::size_t terms, double log_partial) {
  if (terms == 0) return std::numeric_limits<double>::infinity();
  // term_{n+1}/term_n = exp(2t − 2a(2n+3)), decreasing in n.
  const double log_q = 2.0 * t - 2.0 * a * (2.0 * static_cast<double>(terms - 1) + 3.0);
  if (log_q >= 0.0) return std::numeric_limits<double>::infinity();
  const double q = std::exp(log_q);
  return std::exp(kernel_log_term(a, t, terms - 1) - log_partial) * q / (1.0 - q);
}

}  // namespace

std::size_t kernel_terms_needed(double a, const LogPolarPoint& w, double rel_tol) {
  const double t = w.log_modulus;
  std::vector<double> logs;
  for (std::size_t n = 0;; ++n) {
    logs.push_back(kernel_log_term(a, t, n));
    if (kernel_tail(a, t, logs.size(), log_sum_exp(logs)) < rel_tol) return logs.size();
  }
}

KernelNorm kernel_norm(double a, const LogPolarPoint& w, std::size_t terms) {
  const double t = w.log_modulus;
  std::vector<double> logs(terms);
  for (std::size_t n = 0; n < terms; ++n) logs[n] = kernel_log_term(a, t, n);
  KernelNorm out;
  out.terms = terms;
  out.log_norm_sq = log_sum_exp(logs);
  out.certified_tail = kernel_tail(a, t, terms, out.log_norm_sq);
  if (!(out.certified_tail < 1e-12)) {
    throw Error(ErrorCode::TooFewTerms, "kernel series tail not certified with " + std::to_string(terms) + " terms");
  }
  out.log_ratio = out.log_norm_sq + softplus(2.0 * t) - 2.0 * phi(a, w);
  out.ratio = std::exp(out.log_ratio);
  return out;
}

KernelNorm kernel_norm(double a, const LogPolarPoint& w) { return kernel_norm(a, w, kernel_terms_needed(a, w)); }

LogPolarPoint node_transform(const GaussianParam& c, double lambda) {
  return {2.0 * c.a() * lambda, wrap_phase(2.0 * c.b() * lambda)};
}

ConsistencyResult consistency_identity(const GaussianParam& c, const CoefficientVector& coeffs, double lambda) {
  if (!coeffs.empty() && coeffs.n_lo < 1) {
    for (std::int64_t n = coeffs.n_lo; n <= std::min<std::int64_t>(0, coeffs.range().hi); ++n) {
      if (coeffs.at(n) != 0.0) throw Error(ErrorCode::BadParameter, "consistency identity needs n >= 1 support");
    }
  }
  ConsistencyResult out;
  out.lhs = evaluate(c, coeffs, lambda, 1e-17).value;

  const auto w = node_transform(c, lambda);
  const auto fplus = to_fock(c, coeffs).plus;
  const auto fw = fock_evaluate(fplus, w);
  if (!fw.is_zero()) {
    const double log_mag = -phi(c.a(), w) + w.log_modulus + fw.log_mag;
    const double phase = -c.b() * lambda * lambda + w.argument + fw.phase;
    out.rhs = std::polar(std::exp(log_mag), phase);
  }
  const double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
  out.relative_gap = scale > 0.0 ? std::abs(out.lhs - out.rhs) / scale : 0.0;
  return out;
}

}  // namespace gcis
