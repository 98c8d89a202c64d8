#include "gcis/generating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gcis/errors.hpp"

namespace gcis {

namespace {

constexpr double kLogEpsilon = -36.85;  // log(1e-16)

struct Factor {
  double log_modulus = 0.0;
  double phase = 0.0;
  bool on_zero = false;
};

// log(1 − e^u) for u = log w − log z, phase wrapped to (-π, π].
Factor log_one_minus_exp(std::complex<double> u) {
  Factor f;
  if (u.real() <= 0.0) {
    const auto e = gcis::expm1(u);
    const double m = std::abs(e);
    if (m < kOnZeroTolerance) return {kNegInf, 0.0, true};
    f.log_modulus = std::log(m);
    f.phase = std::arg(-e);
  } else {
    // 1 − e^u = e^u (e^{-u} − 1)
    const auto e = gcis::expm1(-u);
    const double m = std::abs(e);
    if (m < kOnZeroTolerance) return {kNegInf, 0.0, true};
    f.log_modulus = u.real() + std::log(m);
    f.phase = u.imag() + std::arg(e);
  }
  return f;
}

std::complex<double> log_ratio(const LogPolarPoint& w, const LogPolarPoint& z) {
  return {w.log_modulus - z.log_modulus, wrap_phase(w.argument - z.argument)};
}

double geometric_tail_log(double a) { return -std::log(-std::expm1(-2.0 * a)); }

}  // namespace

std::size_t g0_terms(double a, double t) {
  // Omitted factors: Σ_{m>M} |w| e^{-2am} = e^{t − 2a(M+1)} / (1 − e^{-2a}) < 1e-16.
  const double m = std::ceil((t - kLogEpsilon + geometric_tail_log(a)) / (2.0 * a)) - 1.0;
  return static_cast<std::size_t>(std::max(1.0, m));
}

GeneratingValue g0_evaluate(double a, const LogPolarPoint& w, std::size_t terms) {
  if (terms == 0) terms = g0_terms(a, w.log_modulus);
  GeneratingValue out;
  out.log_modulus = 0.0;
  for (std::size_t m = 1; m <= terms; ++m) {
    const LogPolarPoint z{2.0 * a * static_cast<double>(m), 0.0};
    const auto f = log_one_minus_exp(log_ratio(w, z));
    if (f.on_zero) return {kNegInf, 0.0, true};
    out.log_modulus += f.log_modulus;
    out.phase += f.phase;
  }
  out.phase = wrap_phase(out.phase);
  return out;
}

std::vector<LogPolarPoint> g0_zeros(double a, std::size_t count) {
  std::vector<LogPolarPoint> z;
  z.reserve(count);
  for (std::size_t m = 1; m <= count; ++m) z.push_back({2.0 * a * static_cast<double>(m), 0.0});
  return z;
}

double g0_log_distance(double a, const LogPolarPoint& w) {
  // |w − r|² is convex in r, minimal at r = Re w ≤ |w|; zeros beyond |w| grow
  // geometrically, so the scan can stop two zeros past |w|.
  const auto last = static_cast<std::size_t>(std::max(1.0, std::ceil(w.log_modulus / (2.0 * a)) + 2.0));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 1; m <= last; ++m) {
    best = std::min(best, gcis::log_distance(w, {2.0 * a * static_cast<double>(m), 0.0}));
  }
  return best;
}

double g0_estimate_ratio(double a, const LogPolarPoint& w) {
  const auto g = g0_evaluate(a, w);
  if (g.on_zero) throw Error(ErrorCode::OnZero, "point coincides with a zero of G0");
  const double log_dist = g0_log_distance(a, w);
  return std::exp(g.log_modulus + softplus(1.5 * w.log_modulus) - phi(a, w) - log_dist);
}

GeneratingProduct::GeneratingProduct(std::vector<LogPolarPoint> zeros) : zeros_(std::move(zeros)) {
  for (std::size_t i = 1; i < zeros_.size(); ++i) {
    if (zeros_[i].log_modulus < zeros_[i - 1].log_modulus) {
      throw Error(ErrorCode::UnsortedInput, "zeros must be sorted by modulus");
    }
  }
  prefix_log_modulus_.assign(zeros_.size() + 1, 0.0);
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    prefix_log_modulus_[i + 1] = prefix_log_modulus_[i] + zeros_[i].log_modulus;
  }
}

GeneratingProduct GeneratingProduct::from_sequence(const GaussianParam& c, const NodeSequence& seq, double t_max) {
  const auto e = bounded_enumeration(seq);
  if (!e) throw Error(ErrorCode::NoEnumeration, "sequence has no bounded enumeration");
  const double a = c.a();
  const double count =
      std::ceil((std::max(t_max, 0.0) - kLogEpsilon + geometric_tail_log(a)) / (2.0 * a) + e->sup_abs()) + 1.0;
  auto points = fock_points(c, seq, e->offset, static_cast<std::size_t>(count));
  std::stable_sort(points.begin(), points.end(),
                   [](const auto& x, const auto& y) { return x.log_modulus < y.log_modulus; });
  return GeneratingProduct(std::move(points));
}

GeneratingValue GeneratingProduct::evaluate(const LogPolarPoint& w) const {
  // Factors with |w_m| < |w| are written e^u (e^{-u} − 1); their e^u parts
  // sum to k·log|w| − Σ_{m<k} log|w_m|.
  const auto split = std::lower_bound(zeros_.begin(), zeros_.end(), w.log_modulus,
                                      [](const LogPolarPoint& z, double t) { return z.log_modulus < t; });
  const auto k = static_cast<std::size_t>(split - zeros_.begin());
  GeneratingValue out;
  out.log_modulus = static_cast<double>(k) * w.log_modulus - prefix_log_modulus_[k];
  for (std::size_t m = 0; m < zeros_.size(); ++m) {
    const auto u = log_ratio(w, zeros_[m]);
    const bool outer = m < k;
    const auto e = gcis::expm1(outer ? -u : u);
    const double mag = std::abs(e);
    if (mag < kOnZeroTolerance) return {kNegInf, 0.0, true};
    out.log_modulus += std::log(mag);
    out.phase += outer ? u.imag() + std::arg(e) : std::arg(-e);
  }
  out.phase = wrap_phase(out.phase);
  return out;
}

double GeneratingProduct::log_distance(const LogPolarPoint& w) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& z : zeros_) best = std::min(best, gcis::log_distance(w, z));
  return best;
}

double perturbed_estimate_ratio(const GeneratingProduct& g, double a, double delta, const LogPolarPoint& w) {
  const auto v = g.evaluate(w);
  if (v.on_zero) throw Error(ErrorCode::OnZero, "point coincides with a zero of the generating product");
  return std::exp(v.log_modulus + (1.5 + delta) * softplus(w.log_modulus) - g.log_distance(w) - phi(a, w));
}

std::vector<LogPolarPoint> estimate_grid(double t_lo, double t_hi, double step, int angles,
                                         const std::vector<LogPolarPoint>& zeros, double min_rel_dist) {
  if (!(step > 0.0) || angles < 1 || t_hi < t_lo) throw Error(ErrorCode::BadParameter, "invalid estimate grid");
  std::vector<LogPolarPoint> out;
  const auto count = static_cast<std::size_t>(std::floor((t_hi - t_lo) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) {
    const double t = t_lo + step * static_cast<double>(i);
    for (int j = 0; j < angles; ++j) {
      const LogPolarPoint w{t, wrap_phase(2.0 * std::numbers::pi * j / angles)};
      bool keep = true;
      for (const auto& z : zeros) {
        if (std::abs(gcis::expm1(log_ratio(w, z))) < min_rel_dist) {
          keep = false;
          break;
        }
      }
      if (keep) out.push_back(w);
    }
  }
  return out;
}

FockVerdict fock_cis_verdict(double a, const std::vector<LogPolarPoint>& points, int n_max, double margin) {
  if (!(a > 0.0)) throw Error(ErrorCode::BadParameter, "a must be positive");
  if (points.empty()) throw Error(ErrorCode::EmptyWindow, "no points");
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].log_modulus < points[i - 1].log_modulus) {
      throw Error(ErrorCode::UnsortedInput, "moduli must be non-decreasing");
    }
  }
  FockVerdict v;
  // |L_m − L_n| ≥ log 2 already gives |w_m − w_n| ≥ |w_n| / 2.
  const double reach = std::numbers::ln2;
  v.gamma = 0.5;
  for (std::size_t n = 0; n < points.size(); ++n) {
    for (std::size_t m = 0; m < points.size(); ++m) {
      if (m == n || std::abs(points[m].log_modulus - points[n].log_modulus) >= reach) continue;
      v.gamma = std::min(v.gamma, std::abs(gcis::expm1(log_ratio(points[m], points[n]))));
    }
  }
  v.separated = v.gamma > 0.0;

  std::vector<double> deltas(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    deltas[i] = points[i].log_modulus - 2.0 * a * static_cast<double>(i + 1);
    v.delta_sup = std::max(v.delta_sup, std::abs(deltas[i]));
  }
  v.best_window = {1, std::numeric_limits<double>::infinity()};
  const int top = std::min<int>(n_max, static_cast<int>(deltas.size()));
  for (int n = 1; n <= top; ++n) {
    const double s = sup_window_average(deltas, n);
    if (s < v.best_window.delta_star - 1e-12) v.best_window = {n, s};  // ties keep the smaller N
  }
  v.passes = v.separated && v.best_window.delta_star < a - margin;
  return v;
}

std::vector<LogPolarPoint> fock_points(const GaussianParam& c, const NodeSequence& seq, std::int64_t offset,
                                       std::size_t count) {
  std::vector<LogPolarPoint> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) {
    out.push_back(node_transform(c, seq.node(static_cast<std::int64_t>(i) - offset)));
  }
  return out;
}

}  // namespace gcis
