#include "gcis/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gcis/errors.hpp"

namespace gcis {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Window averages closer than this count as equal; the smaller N is kept.
constexpr double kTieTolerance = 1e-12;

std::int64_t floor_mod(std::int64_t n, std::int64_t p) {
  const std::int64_t r = n % p;
  return r < 0 ? r + p : r;
}

// Integer k minimising max(|lo - k|, |hi - k|); ties go to the smaller |k|.
std::int64_t nearest_offset(double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const auto k_floor = static_cast<std::int64_t>(std::floor(mid));
  std::int64_t best = k_floor;
  double best_cost = kInf;
  for (std::int64_t k : {k_floor, k_floor + 1}) {
    const double kd = static_cast<double>(k);
    const double cost = std::max(std::abs(lo - kd), std::abs(hi - kd));
    if (cost < best_cost || (cost == best_cost && std::llabs(k) < std::llabs(best))) {
      best = k;
      best_cost = cost;
    }
  }
  return best;
}

IndexRange default_window(const NodeSequence& seq) {
  return std::visit(
      [](const auto& k) -> IndexRange {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ExplicitWindow>) {
          return {k.index_lo, k.index_lo + static_cast<std::int64_t>(k.nodes.size()) - 1};
        } else if constexpr (std::is_same_v<T, PeriodicPerturbation>) {
          return {0, static_cast<std::int64_t>(k.offsets.size()) - 1};
        } else {
          return {-50, 50};
        }
      },
      seq.kind());
}

void require_increasing(std::span<const double> nodes, const char* what) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i])) {
      throw Error(ErrorCode::BadParameter, std::string(what) + ": non-finite node");
    }
    if (i > 0 && !(nodes[i] > nodes[i - 1])) {
      std::ostringstream os;
      os << what << ": node " << i << " (" << nodes[i] << ") not greater than predecessor ("
         << nodes[i - 1] << ")";
      throw Error(ErrorCode::NonIncreasing, os.str());
    }
  }
}

}  // namespace

GaussianParam::GaussianParam(double a, double b) : a_(a), b_(b) {
  if (!(a > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorCode::BadParameter, "Gaussian parameter requires finite a > 0 and finite b");
  }
}

NodeSequence NodeSequence::explicit_window(std::int64_t index_lo, std::vector<double> nodes) {
  if (nodes.empty()) throw Error(ErrorCode::EmptyWindow, "explicit window has no nodes");
  require_increasing(nodes, "explicit window");
  return NodeSequence(ExplicitWindow{index_lo, std::move(nodes)});
}

NodeSequence NodeSequence::periodic(std::vector<double> offsets) {
  if (offsets.empty()) throw Error(ErrorCode::BadParameter, "period must be >= 1");
  // One period plus the wrap to the next period.
  std::vector<double> period;
  period.reserve(offsets.size() + 1);
  for (std::size_t j = 0; j < offsets.size(); ++j) period.push_back(static_cast<double>(j) + offsets[j]);
  period.push_back(static_cast<double>(offsets.size()) + offsets.front());
  require_increasing(period, "periodic perturbation");
  return NodeSequence(PeriodicPerturbation{std::move(offsets)});
}

NodeSequence NodeSequence::affine(double alpha, double beta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw Error(ErrorCode::BadParameter, "affine grid requires finite alpha > 0");
  }
  return NodeSequence(AffineGrid{alpha, beta});
}

std::string NodeSequence::kind_name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ExplicitWindow>) return "explicit";
        else if constexpr (std::is_same_v<T, PeriodicPerturbation>) return "periodic";
        else return "affine";
      },
      kind_);
}

std::optional<IndexRange> NodeSequence::data_range() const {
  if (const auto* w = std::get_if<ExplicitWindow>(&kind_)) {
    return IndexRange{w->index_lo, w->index_lo + static_cast<std::int64_t>(w->nodes.size()) - 1};
  }
  return std::nullopt;
}

double NodeSequence::node(std::int64_t n) const {
  return std::visit(
      [n](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, ExplicitWindow>) {
          const std::int64_t i = n - k.index_lo;
          if (i < 0 || i >= static_cast<std::int64_t>(k.nodes.size())) {
            throw Error(ErrorCode::BadParameter, "node index " + std::to_string(n) + " outside explicit window");
          }
          return k.nodes[static_cast<std::size_t>(i)];
        } else if constexpr (std::is_same_v<T, PeriodicPerturbation>) {
          const auto p = static_cast<std::int64_t>(k.offsets.size());
          return static_cast<double>(n) + k.offsets[static_cast<std::size_t>(floor_mod(n, p))];
        } else {
          return k.alpha * static_cast<double>(n) + k.beta;
        }
      },
      kind_);
}

std::vector<double> NodeSequence::nodes(IndexRange range) const {
  std::vector<double> out;
  out.reserve(range.size());
  for (std::int64_t n = range.lo; n <= range.hi; ++n) out.push_back(node(n));
  return out;
}

IndexRange NodeSequence::clip(IndexRange range) const {
  if (auto data = data_range()) {
    return {std::max(range.lo, data->lo), std::min(range.hi, data->hi)};
  }
  return range;
}

double Enumeration::sup_abs() const {
  double s = 0.0;
  for (double d : deltas) s = std::max(s, std::abs(d));
  return s;
}

SeparationResult check_separation(const NodeSequence& seq, IndexRange window) {
  if (window.empty()) throw Error(ErrorCode::EmptyWindow, "separation window is empty");
  double gap = kInf;
  if (const auto* p = std::get_if<PeriodicPerturbation>(&seq.kind())) {
    const auto period = static_cast<std::int64_t>(p->offsets.size());
    for (std::int64_t j = 0; j < period; ++j) gap = std::min(gap, seq.node(j + 1) - seq.node(j));
  } else if (const auto* g = std::get_if<AffineGrid>(&seq.kind())) {
    gap = g->alpha;
  } else {
    const IndexRange w = seq.clip(window);
    if (w.empty()) throw Error(ErrorCode::EmptyWindow, "separation window does not meet the data");
    for (std::int64_t n = w.lo; n < w.hi; ++n) gap = std::min(gap, seq.node(n + 1) - seq.node(n));
  }
  return {gap, gap > 0.0};
}

std::optional<Enumeration> canonical_enumeration(const NodeSequence& seq, double bound,
                                                 std::optional<IndexRange> window) {
  const IndexRange w = seq.clip(window.value_or(default_window(seq)));
  if (w.empty()) return std::nullopt;

  std::vector<double> residual;  // λ_m − m
  residual.reserve(w.size());
  for (std::int64_t m = w.lo; m <= w.hi; ++m) residual.push_back(seq.node(m) - static_cast<double>(m));
  const auto [lo_it, hi_it] = std::minmax_element(residual.begin(), residual.end());
  const std::int64_t k = nearest_offset(*lo_it, *hi_it);

  Enumeration e;
  e.offset = k;
  e.range = {w.lo + k, w.hi + k};
  e.deltas.reserve(residual.size());
  for (double v : residual) e.deltas.push_back(v - static_cast<double>(k));
  if (e.sup_abs() > bound) return std::nullopt;
  return e;
}

std::optional<Enumeration> bounded_enumeration(const NodeSequence& seq, std::optional<IndexRange> window) {
  if (const auto* g = std::get_if<AffineGrid>(&seq.kind()); g && g->alpha != 1.0) return std::nullopt;
  const IndexRange w = seq.clip(window.value_or(default_window(seq)));
  double bound = kInf;
  if (seq.is_finite()) bound = std::max(1.0, static_cast<double>(w.size()) / 20.0);
  return canonical_enumeration(seq, bound, w);
}

std::pair<std::size_t, std::size_t> window_count_extremes(std::span<const double> sorted, double r) {
  if (sorted.empty() || !(r > 0.0) || sorted.back() - sorted.front() < r) {
    throw Error(ErrorCode::WindowTooSmall, "window length exceeds the data span");
  }
  const double x_max = sorted.back() - r;
  auto count_closed = [&](double x) {  // #{λ in [x, x + r]}
    const auto first = std::lower_bound(sorted.begin(), sorted.end(), x);
    const auto last = std::upper_bound(sorted.begin(), sorted.end(), x + r);
    return static_cast<std::size_t>(last - first);
  };
  std::size_t hi = std::max(count_closed(sorted.front()), count_closed(x_max));
  std::size_t lo = std::min(count_closed(sorted.front()), count_closed(x_max));
  for (std::size_t i = 0; i < sorted.size() && sorted[i] <= x_max; ++i) {
    const auto end = std::upper_bound(sorted.begin(), sorted.end(), sorted[i] + r);
    const auto with_left = static_cast<std::size_t>(end - (sorted.begin() + static_cast<std::ptrdiff_t>(i)));
    hi = std::max(hi, with_left);
    // x slightly to the right of λ_i drops λ_i and gains nothing new.
    if (sorted[i] < x_max) lo = std::min(lo, with_left - 1);
  }
  return {hi, lo};
}

DensityEstimate beurling_densities(const NodeSequence& seq, std::span<const double> r_values) {
  if (r_values.empty()) throw Error(ErrorCode::WindowTooSmall, "no window lengths given");
  for (double r : r_values) {
    if (!(r > 0.0)) throw Error(ErrorCode::WindowTooSmall, "window length must be positive");
  }
  DensityEstimate est;
  if (const auto* g = std::get_if<AffineGrid>(&seq.kind())) {
    est.d_plus = est.d_minus = 1.0 / g->alpha;
    return est;
  }
  if (std::holds_alternative<PeriodicPerturbation>(seq.kind())) {
    est.d_plus = est.d_minus = 1.0;
    return est;
  }
  const auto& w = std::get<ExplicitWindow>(seq.kind());
  const double span = w.nodes.back() - w.nodes.front();
  est.method = DensityMethod::WindowSweep;
  double largest_r = -1.0;
  for (double r : r_values) {
    if (r > 0.5 * span) {
      throw Error(ErrorCode::WindowTooSmall, "r = " + std::to_string(r) + " exceeds half the data span");
    }
    const auto [hi, lo] = window_count_extremes(w.nodes, r);
    DensitySample s{r, static_cast<double>(hi) / r, static_cast<double>(lo) / r};
    if (!est.sweep.empty()) {
      const auto& prev = est.sweep.back();
      est.max_successive_change = std::max(
          {est.max_successive_change, std::abs(s.d_plus - prev.d_plus), std::abs(s.d_minus - prev.d_minus)});
    }
    if (r > largest_r) {
      largest_r = r;
      est.d_plus = s.d_plus;
      est.d_minus = s.d_minus;
    }
    est.sweep.push_back(s);
  }
  return est;
}

double sup_window_average(std::span<const double> values, int n) {
  if (n < 1 || static_cast<std::size_t>(n) > values.size()) return kInf;
  std::vector<double> prefix(values.size() + 1, 0.0);
  std::partial_sum(values.begin(), values.end(), prefix.begin() + 1);
  double sup = 0.0;
  for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= values.size(); ++i) {
    sup = std::max(sup, std::abs(prefix[i + static_cast<std::size_t>(n)] - prefix[i]) / n);
  }
  return sup;
}

AvdoninVerdict avdonin_verdict(const NodeSequence& seq, int n_max, double margin) {
  AvdoninVerdict v;
  const IndexRange sep_window = seq.data_range().value_or(IndexRange{0, 0});
  const auto sep = check_separation(seq, sep_window);
  v.separated = sep.separated;
  v.min_gap = sep.min_gap;

  if (const auto* g = std::get_if<AffineGrid>(&seq.kind())) {
    v.caveat = VerdictCaveat::Exact;
    if (g->alpha != 1.0) {
      // δ_n = (α − 1)n + β − k is unbounded for every offset k.
      v.enumerable = false;
      v.delta_sup = kInf;
      v.best_window = {1, kInf};
      return v;
    }
    v.enumerable = true;
    v.offset = nearest_offset(g->beta, g->beta);
    v.delta_sup = std::abs(g->beta - static_cast<double>(v.offset));
    v.best_window = {1, v.delta_sup};
  } else if (const auto* p = std::get_if<PeriodicPerturbation>(&seq.kind())) {
    // Every N = P window average equals the period mean, and the average of all
    // N-window averages over one period is the mean, so N = P is optimal.
    v.caveat = VerdictCaveat::Exact;
    v.enumerable = true;
    const auto canonical = canonical_enumeration(seq, kInf);
    const double mean =
        std::accumulate(p->offsets.begin(), p->offsets.end(), 0.0) / static_cast<double>(p->offsets.size());
    double best = kInf;
    for (std::int64_t k : {canonical->offset, canonical->offset - 1, canonical->offset + 1}) {
      const double ds = std::abs(mean - static_cast<double>(k));
      if (ds < best) {
        best = ds;
        v.offset = k;
      }
    }
    v.best_window = {static_cast<int>(p->offsets.size()), best};
    v.delta_sup = 0.0;
    for (double d : p->offsets) v.delta_sup = std::max(v.delta_sup, std::abs(d - static_cast<double>(v.offset)));
  } else {
    v.caveat = VerdictCaveat::FiniteWindowHeuristic;
    const auto canonical = bounded_enumeration(seq);
    v.enumerable = canonical.has_value();
    if (!canonical) {
      v.delta_sup = kInf;
      v.best_window = {1, kInf};
      return v;
    }
    v.best_window = {1, kInf};
    const int top = std::min<int>(n_max, static_cast<int>(canonical->deltas.size()));
    for (std::int64_t shift : {0, -1, 1}) {
      std::vector<double> d = canonical->deltas;
      for (double& x : d) x -= static_cast<double>(shift);
      for (int n = 1; n <= top; ++n) {
        const double s = sup_window_average(d, n);
        if (s < v.best_window.delta_star - kTieTolerance) {
          v.best_window = {n, s};
          v.offset = canonical->offset + shift;
        }
      }
    }
    v.delta_sup = canonical->sup_abs();
    if (v.offset != canonical->offset) {
      v.delta_sup = 0.0;
      for (double x : canonical->deltas) {
        v.delta_sup = std::max(v.delta_sup, std::abs(x - static_cast<double>(v.offset - canonical->offset)));
      }
    }
  }
  v.passes = v.separated && v.enumerable && v.best_window.delta_star < kAvdoninThreshold - margin;
  return v;
}

std::string to_string(VerdictCaveat caveat) {
  return caveat == VerdictCaveat::Exact ? "Exact" : "FiniteWindowHeuristic";
}

std::string to_string(DensityMethod method) {
  return method == DensityMethod::ExactFormula ? "ExactFormula" : "WindowSweep";
}

}  // namespace gcis
