#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "gcis/errors.hpp"
#include "gcis/experiments.hpp"
#include "gcis/sign_retrieval.hpp"

namespace gcis::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const json& params_of(const ScenarioConfig& cfg) { return cfg.params; }

template <class T>
T param(const ScenarioConfig& cfg, const char* key, T fallback) {
  const auto& p = params_of(cfg);
  return p.contains(key) ? p.at(key).get<T>() : fallback;
}

NodeSequence sequence_param(const ScenarioConfig& cfg, const char* key = "sequence") {
  if (!cfg.params.contains(key)) throw Error(ErrorCode::ConfigInvalid, std::string("missing '") + key + "'");
  return sequence_from_json(cfg.params.at(key));
}

std::vector<std::int64_t> sizes_param(const ScenarioConfig& cfg) {
  auto sizes = param(cfg, "sizes", std::vector<std::int64_t>{16, 32, 64});
  if (sizes.empty()) throw Error(ErrorCode::ConfigInvalid, "sizes must be nonempty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1 || (i > 0 && sizes[i] <= sizes[i - 1])) {
      throw Error(ErrorCode::ConfigInvalid, "sizes must be positive and strictly increasing");
    }
  }
  return sizes;
}

Orientation orientation_from(const std::string& name) {
  if (name == "frame") return Orientation::Frame;
  if (name == "riesz") return Orientation::Riesz;
  throw Error(ErrorCode::ConfigInvalid, "orientation must be 'frame' or 'riesz'");
}

FrameBoundOptions options_param(const ScenarioConfig& cfg, const std::string& default_orientation) {
  FrameBoundOptions o;
  o.orientation = orientation_from(param(cfg, "orientation", default_orientation));
  o.interior_fraction = param(cfg, "interior_fraction", -1.0);
  o.tol = cfg.tolerance("truncation", 1e-14);
  return o;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

// One size per task, reassembled in input order.
FrameBoundReport sweep(const GaussianParam& c, const NodeSequence& seq, const std::vector<std::int64_t>& sizes,
                       const FrameBoundOptions& options, unsigned threads) {
  auto parts = parallel_map<FrameBoundReport>(sizes.size(), threads, [&](std::size_t i) {
    const std::int64_t m[] = {sizes[i]};
    return frame_bounds(c, seq, m, options);
  });
  FrameBoundReport out;
  out.orientation = options.orientation;
  out.interior_fraction = options.effective_fraction();
  for (const auto& p : parts) out.records.push_back(p.records.front());
  for (std::size_t i = 1; i < out.records.size(); ++i) {
    out.trend_ratios.push_back(out.records[i].sigma_min / out.records[i - 1].sigma_min);
  }
  return out;
}

// |σ_min(last) − σ_min(previous)| / σ_min(previous).
double last_variation(const FrameBoundReport& r) {
  if (r.records.size() < 2) return 0.0;
  const double prev = r.records[r.records.size() - 2].sigma_min;
  return std::abs(r.records.back().sigma_min - prev) / prev;
}

void add_frame_rows(CsvTable& t, const FrameBoundReport& r, std::vector<double> prefix) {
  for (const auto& x : r.records) {
    auto row = prefix;
    row.insert(row.end(), {static_cast<double>(x.m), static_cast<double>(x.rows), static_cast<double>(x.cols),
                           x.sigma_min, x.sigma_max});
    t.rows.push_back(std::move(row));
  }
}

CsvTable sigma_plot(std::string name, const FrameBoundReport& r) {
  CsvTable p{std::move(name), {"x", "y"}, {}};
  for (const auto& x : r.records) p.rows.push_back({static_cast<double>(x.m), x.sigma_min});
  return p;
}

std::vector<std::complex<double>> random_complex(std::mt19937_64& rng, std::size_t n, bool real_only) {
  std::normal_distribution<double> normal;
  std::vector<std::complex<double>> v(n);
  for (auto& x : v) {
    const double re = normal(rng);
    x = {re, real_only ? 0.0 : normal(rng)};
  }
  return v;
}

}  // namespace

ScenarioReport run_classify(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  const auto seq = sequence_param(cfg);
  const int n_max = param(cfg, "n_max", 8);
  const double margin = param(cfg, "margin", kDefaultMargin);
  const auto v = avdonin_verdict(seq, n_max, margin);
  rep.records["sequence"] = sequence_to_json(seq);
  rep.records["verdict"] = to_json(v);

  const auto window_spec = param(cfg, "window", std::vector<std::int64_t>{-20, 20});
  if (window_spec.size() != 2) throw Error(ErrorCode::ConfigInvalid, "window must be [lo, hi]");
  const IndexRange window = seq.clip({window_spec[0], window_spec[1]});

  if (v.enumerable && !window.empty()) {
    CsvTable t{"deltas", {"m", "n", "lambda", "delta"}, {}};
    CsvTable p{"deltas", {"x", "y"}, {}};
    for (std::int64_t m = window.lo; m <= window.hi; ++m) {
      const double lambda = seq.node(m);
      const auto n = m + v.offset;
      const double d = lambda - static_cast<double>(n);
      t.rows.push_back({static_cast<double>(m), static_cast<double>(n), lambda, d});
      p.rows.push_back({static_cast<double>(n), d});
    }
    rep.tables.push_back(std::move(t));
    rep.plots.push_back(std::move(p));

    // Same nodes seen from the Fock side: δ scales by 2a, threshold 1/2 becomes a.
    std::int64_t count = 64;
    bool covered = true;
    if (const auto data = seq.data_range()) {
      count = std::min<std::int64_t>(count, data->hi + v.offset);
      covered = data->lo + v.offset <= 1;
    }
    if (covered && count >= 1) {
      const GaussianParam c(cfg.a, cfg.b);
      const auto points = fock_points(c, seq, v.offset, static_cast<std::size_t>(count));
      const auto fv = fock_cis_verdict(cfg.a, points, n_max, lattice_to_fock_delta(cfg.a, margin));
      rep.records["fock_verdict"] = to_json(fv);
      rep.records["fock_points"] = count;
    }
  }
  if (cfg.params.contains("r_values")) {
    const auto r = cfg.params.at("r_values").get<std::vector<double>>();
    rep.records["densities"] = to_json(beurling_densities(seq, r));
  }
  if (cfg.params.contains("expect_pass")) {
    const bool expect = cfg.params.at("expect_pass").get<bool>();
    rep.checks.push_back(make_check("verdict_passes", v.passes ? 1.0 : 0.0, "==", expect ? 1.0 : 0.0));
  }
  return rep;
}

ScenarioReport run_framebound_sweep(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  const GaussianParam c(cfg.a, cfg.b);
  const auto seq = sequence_param(cfg);
  const auto sizes = sizes_param(cfg);
  const auto report = sweep(c, seq, sizes, options_param(cfg, "frame"), cfg.threads);
  rep.records["sequence"] = sequence_to_json(seq);
  rep.records["frame_bounds"] = to_json(report);
  rep.records["last_variation"] = last_variation(report);

  CsvTable t{"framebounds", {"a", "b", "m", "rows", "cols", "sigma_min", "sigma_max"}, {}};
  add_frame_rows(t, report, {cfg.a, cfg.b});
  rep.tables.push_back(std::move(t));
  rep.plots.push_back(sigma_plot("sigma_min", report));

  if (cfg.params.contains("max_variation")) {
    rep.checks.push_back(
        make_check("sigma_min_variation", last_variation(report), "<", cfg.params.at("max_variation").get<double>()));
  }
  if (cfg.params.contains("max_trend_ratio")) {
    const double limit = cfg.params.at("max_trend_ratio").get<double>();
    for (std::size_t i = 0; i < report.trend_ratios.size(); ++i) {
      rep.checks.push_back(make_check("trend_ratio_m" + std::to_string(sizes[i]), report.trend_ratios[i], "<=", limit));
    }
  }
  return rep;
}

ScenarioReport run_critical_half(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  const GaussianParam c(cfg.a, cfg.b);
  const double delta = param(cfg, "delta", 0.5);
  const auto seq = NodeSequence::periodic({delta});
  const auto sizes = sizes_param(cfg);
  const double max_ratio = param(cfg, "max_ratio", 0.5);
  const auto report = sweep(c, seq, sizes, options_param(cfg, "riesz"), cfg.threads);
  const auto v = avdonin_verdict(seq);
  rep.records["verdict"] = to_json(v);
  rep.records["frame_bounds"] = to_json(report);

  CsvTable t{"critical_half", {"delta", "m", "rows", "cols", "sigma_min", "sigma_max"}, {}};
  add_frame_rows(t, report, {delta});
  rep.tables.push_back(std::move(t));
  rep.plots.push_back(sigma_plot("sigma_min", report));

  rep.checks.push_back(make_check("classifier_rejects", v.passes ? 1.0 : 0.0, "==", 0.0));
  for (std::size_t i = 0; i < report.trend_ratios.size(); ++i) {
    rep.checks.push_back(make_check("halving_ratio_m" + std::to_string(sizes[i]), report.trend_ratios[i], "<=", max_ratio));
  }
  return rep;
}

ScenarioReport run_kadets_sweep(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  const GaussianParam c(cfg.a, cfg.b);
  const auto deltas = param(cfg, "deltas", std::vector<double>{0.1, 0.3, 0.45, 0.5});
  const auto sizes = sizes_param(cfg);
  const double critical = param(cfg, "critical_delta", 0.5);
  const double stable_tol = param(cfg, "stable_variation", 0.1);
  const double critical_ratio = param(cfg, "critical_ratio", 0.5);
  const auto options = options_param(cfg, "riesz");

  // Flatten (δ, M) so every SVD is its own task.
  const std::size_t per = sizes.size();
  const auto records = parallel_map<FrameBoundRecord>(deltas.size() * per, cfg.threads, [&](std::size_t i) {
    const auto seq = NodeSequence::periodic({deltas[i / per]});
    const std::int64_t m[] = {sizes[i % per]};
    return frame_bounds(c, seq, m, options).records.front();
  });

  CsvTable t{"kadets", {"delta", "m", "rows", "cols", "sigma_min", "sigma_max"}, {}};
  json per_delta = json::array();
  for (std::size_t d = 0; d < deltas.size(); ++d) {
    FrameBoundReport r;
    r.orientation = options.orientation;
    r.interior_fraction = options.effective_fraction();
    r.records.assign(records.begin() + static_cast<std::ptrdiff_t>(d * per),
                     records.begin() + static_cast<std::ptrdiff_t>((d + 1) * per));
    for (std::size_t i = 1; i < per; ++i) r.trend_ratios.push_back(r.records[i].sigma_min / r.records[i - 1].sigma_min);
    add_frame_rows(t, r, {deltas[d]});
    rep.plots.push_back(sigma_plot("sigma_min_delta_" + fmt(deltas[d]), r));
    per_delta.push_back({{"delta", deltas[d]}, {"frame_bounds", to_json(r)}, {"last_variation", last_variation(r)}});

    if (deltas[d] < critical) {
      rep.checks.push_back(make_check("variation_delta_" + fmt(deltas[d]), last_variation(r), "<", stable_tol));
    } else {
      for (std::size_t i = 0; i < r.trend_ratios.size(); ++i) {
        rep.checks.push_back(make_check("halving_ratio_delta_" + fmt(deltas[d]) + "_m" + std::to_string(sizes[i]),
                                        r.trend_ratios[i], "<=", critical_ratio));
      }
    }
  }
  rep.records["sweep"] = per_delta;
  rep.tables.push_back(std::move(t));
  return rep;
}

ScenarioReport run_density_demo(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  const GaussianParam c(cfg.a, cfg.b);
  const auto alphas = param(cfg, "alphas", std::vector<double>{0.9, 1.1});
  const auto sizes = sizes_param(cfg);
  const double stable_tol = param(cfg, "stable_variation", 0.1);

  CsvTable t{"density_framebounds", {"alpha", "riesz", "m", "rows", "cols", "sigma_min", "sigma_max"}, {}};
  json runs = json::array();
  for (double alpha : alphas) {
    // Denser than the lattice: sampling, so bound the synthesis side (frame).
    // Sparser: interpolation, so bound the node side (Riesz).
    const auto options = options_param(cfg, alpha < 1.0 ? "frame" : "riesz");
    const auto seq = NodeSequence::affine(alpha, 0.0);
    const auto report = sweep(c, seq, sizes, options, cfg.threads);
    const double r_values[] = {1.0};
    const auto dens = beurling_densities(seq, r_values);
    add_frame_rows(t, report, {alpha, options.orientation == Orientation::Riesz ? 1.0 : 0.0});
    rep.plots.push_back(sigma_plot("sigma_min_alpha_" + fmt(alpha), report));
    runs.push_back({{"alpha", alpha},
                    {"densities", to_json(dens)},
                    {"frame_bounds", to_json(report)},
                    {"last_variation", last_variation(report)}});
    rep.checks.push_back(make_check("variation_alpha_" + fmt(alpha), last_variation(report), "<", stable_tol));
  }
  rep.records["affine"] = runs;
  rep.tables.push_back(std::move(t));

  // Integers in [-L, L] with 0 removed: one missing point moves the counts by
  // at most one, so the estimates stay within 1/r of the lattice value 1.
  const auto half = param(cfg, "removal_half_width", std::int64_t{100});
  std::vector<double> nodes;
  for (std::int64_t n = -half; n <= half; ++n) {
    if (n != 0) nodes.push_back(static_cast<double>(n));
  }
  const auto seq = NodeSequence::explicit_window(-half, nodes);
  const auto r_values = param(cfg, "r_values", std::vector<double>{10, 25, 50, 100});
  const auto dens = beurling_densities(seq, r_values);
  CsvTable d{"densities", {"r", "d_plus", "d_minus"}, {}};
  CsvTable p{"d_minus", {"x", "y"}, {}};
  for (const auto& s : dens.sweep) {
    d.rows.push_back({s.r, s.d_plus, s.d_minus});
    p.rows.push_back({s.r, s.d_minus});
    rep.checks.push_back(
        make_check("removed_point_density_r" + fmt(s.r), std::max(std::abs(s.d_plus - 1.0), std::abs(s.d_minus - 1.0)),
                   "<=", 1.0 / s.r + 1e-12));
  }
  rep.records["removed_point"] = to_json(dens);
  rep.tables.push_back(std::move(d));
  rep.plots.push_back(std::move(p));
  return rep;
}

ScenarioReport run_kernel_asymptotic(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  const double a = cfg.a;
  const double t_lo = param(cfg, "t_lo", -10.0);
  const double t_hi = param(cfg, "t_hi", 10.0);
  const double step = param(cfg, "step", 0.1);
  const double argument = param(cfg, "argument", 0.0);
  const double max_spread = param(cfg, "max_spread", 10.0);
  if (!(step > 0.0) || t_hi < t_lo) throw Error(ErrorCode::ConfigInvalid, "bad t range");
  const auto count = static_cast<std::size_t>(std::floor((t_hi - t_lo) / step + 1e-9)) + 1;

  const auto values = parallel_map<KernelNorm>(count, cfg.threads, [&](std::size_t i) {
    return kernel_norm(a, {t_lo + step * static_cast<double>(i), argument});
  });

  CsvTable t{"kernel", {"log_modulus", "argument", "ratio"}, {}};
  CsvTable p{"kernel_log_ratio", {"x", "y"}, {}};
  double lo = kInf, hi = 0.0, lo_pos = kInf, hi_pos = 0.0, worst_tail = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double tt = t_lo + step * static_cast<double>(i);
    const auto& k = values[i];
    t.rows.push_back({tt, argument, k.ratio});
    p.rows.push_back({tt, k.log_ratio});
    lo = std::min(lo, k.ratio);
    hi = std::max(hi, k.ratio);
    if (tt >= 0.0) {
      lo_pos = std::min(lo_pos, k.ratio);
      hi_pos = std::max(hi_pos, k.ratio);
    }
    worst_tail = std::max(worst_tail, k.certified_tail);
  }
  rep.records["bracket"] = {lo, hi};
  rep.records["spread"] = hi / lo;
  rep.records["bracket_nonnegative_t"] = {lo_pos, hi_pos};
  rep.records["spread_nonnegative_t"] = hi_pos / lo_pos;
  rep.records["max_certified_tail"] = worst_tail;
  rep.tables.push_back(std::move(t));
  rep.plots.push_back(std::move(p));
  rep.checks.push_back(make_check("ratio_spread", hi / lo, "<", max_spread));
  return rep;
}

ScenarioReport run_g0_estimate(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  const auto a_values = param(cfg, "a_values", std::vector<double>{cfg.a});
  const double step = param(cfg, "step", 0.1);
  const int angles = param(cfg, "angles", 8);
  const double exclusion = param(cfg, "exclusion", 0.1);
  const double lo_factor = param(cfg, "t_lo_factor", 1.0);
  const double hi_factor = param(cfg, "t_hi_factor", 21.0);
  const json brackets = cfg.params.value("brackets", json::object());

  json runs = json::array();
  for (double a : a_values) {
    const double t_lo = lo_factor * a, t_hi = hi_factor * a;
    const auto zeros = g0_zeros(a, static_cast<std::size_t>(std::ceil(t_hi / (2.0 * a))) + 2);
    const auto grid = estimate_grid(t_lo, t_hi, step, angles, zeros, exclusion);
    const auto ratios =
        parallel_map<double>(grid.size(), cfg.threads, [&](std::size_t i) { return g0_estimate_ratio(a, grid[i]); });
    CsvTable t{"g0_estimate_a" + fmt(a), {"log_modulus", "argument", "ratio"}, {}};
    double lo = kInf, hi = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      t.rows.push_back({grid[i].log_modulus, grid[i].argument, ratios[i]});
      lo = std::min(lo, ratios[i]);
      hi = std::max(hi, ratios[i]);
    }
    rep.tables.push_back(std::move(t));
    runs.push_back({{"a", a}, {"points", grid.size()}, {"min_ratio", lo}, {"max_ratio", hi}});
    if (brackets.contains(fmt(a))) {
      const auto b = brackets.at(fmt(a)).get<std::vector<double>>();
      if (b.size() != 2) throw Error(ErrorCode::ConfigInvalid, "bracket must be [lo, hi]");
      rep.checks.push_back(make_check("g0_min_ratio_a" + fmt(a), lo, ">=", b[0]));
      rep.checks.push_back(make_check("g0_max_ratio_a" + fmt(a), hi, "<=", b[1]));
    }
  }
  rep.records["g0"] = runs;

  if (cfg.params.contains("perturbed")) {
    const auto& pj = cfg.params.at("perturbed");
    const double a = pj.value("a", cfg.a);
    const double delta = pj.value("delta", 0.0);
    const GaussianParam c(a, pj.value("b", 0.0));
    const auto seq = NodeSequence::periodic(pj.at("offsets").get<std::vector<double>>());
    const double t_lo = lo_factor * a, t_hi = hi_factor * a;
    const auto product = GeneratingProduct::from_sequence(c, seq, t_hi);
    const auto grid = estimate_grid(t_lo, t_hi, step, angles, product.zeros(), exclusion);
    const auto ratios = parallel_map<double>(grid.size(), cfg.threads, [&](std::size_t i) {
      return perturbed_estimate_ratio(product, a, delta, grid[i]);
    });
    CsvTable t{"gplus_estimate", {"log_modulus", "argument", "ratio"}, {}};
    double lo = kInf, hi = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      t.rows.push_back({grid[i].log_modulus, grid[i].argument, ratios[i]});
      lo = std::min(lo, ratios[i]);
      hi = std::max(hi, ratios[i]);
    }
    rep.tables.push_back(std::move(t));
    const auto v = avdonin_verdict(seq);
    rep.records["perturbed"] = {{"a", a},          {"delta", delta},     {"zeros", product.zeros().size()},
                                {"points", grid.size()}, {"min_ratio", lo}, {"max_ratio", hi},
                                {"verdict", to_json(v)}};
    rep.checks.push_back(make_check("gplus_min_ratio_positive", lo, ">", 0.0));
  }
  return rep;
}

ScenarioReport run_fock_consistency(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  const double a = cfg.a;
  const auto b_values = param(cfg, "b_values", std::vector<double>{0.0, 2.0});
  const auto identity_seeds = param(cfg, "identity_trials", std::size_t{5});
  const auto lambdas = param(cfg, "lambdas", std::vector<double>{-5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5});
  const auto support = param(cfg, "support", std::int64_t{6});
  const auto isometry_trials = param(cfg, "isometry_trials", std::size_t{100});
  const auto quad_a = param(cfg, "quadrature_a", std::vector<double>{0.25, 0.5, 1.0});
  const auto max_degree = param(cfg, "max_degree", std::size_t{5});
  const double dro_tol = cfg.tolerance("identity", 1e-9);
  const double iso_tol = cfg.tolerance("isometry", 1e-12);
  const double quad_tol = cfg.tolerance("quadrature", 1e-6);

  // Identity: coefficients on [1, support], every (trial, b, λ).
  const std::size_t per_trial = b_values.size() * lambdas.size();
  const auto gaps = parallel_map<ConsistencyResult>(identity_seeds * per_trial, cfg.threads, [&](std::size_t i) {
    const std::size_t trial = i / per_trial, bi = (i % per_trial) / lambdas.size(), li = i % lambdas.size();
    auto rng = task_rng(cfg.seed, trial);
    const CoefficientVector coeffs{1, random_complex(rng, static_cast<std::size_t>(support), false)};
    return consistency_identity(GaussianParam(a, b_values[bi]), coeffs, lambdas[li]);
  });
  CsvTable dro{"identity", {"trial", "b", "lambda", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "relative_gap"}, {}};
  double worst_gap = 0.0;
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    const std::size_t trial = i / per_trial, bi = (i % per_trial) / lambdas.size(), li = i % lambdas.size();
    const auto& g = gaps[i];
    dro.rows.push_back({static_cast<double>(trial), b_values[bi], lambdas[li], g.lhs.real(), g.lhs.imag(),
                        g.rhs.real(), g.rhs.imag(), g.relative_gap});
    worst_gap = std::max(worst_gap, g.relative_gap);
  }
  rep.tables.push_back(std::move(dro));
  rep.checks.push_back(make_check("identity_max_gap", worst_gap, "<", dro_tol));

  // Isometry on [-support, support]; seeds offset so they never reuse identity draws.
  const double b = cfg.b;
  const auto iso = parallel_map<std::vector<double>>(isometry_trials, cfg.threads, [&](std::size_t i) {
    auto rng = task_rng(cfg.seed, 1'000'000 + i);
    const CoefficientVector coeffs{-support, random_complex(rng, static_cast<std::size_t>(2 * support + 1), false)};
    const auto parts = to_fock(GaussianParam(a, b), coeffs);
    const double norms[] = {fock_norm_log(parts.minus, a), fock_norm_log(parts.plus, a),
                            std::log(std::norm(parts.c0))};
    const double total = std::exp(log_sum_exp(norms));
    const double expected = coeffs.norm() * coeffs.norm();
    return std::vector<double>{static_cast<double>(i), expected, total, std::abs(total - expected) / expected};
  });
  CsvTable it{"isometry", {"trial", "coeff_norm_sq", "fock_norm_sq", "relative_error"}, iso};
  double worst_iso = 0.0;
  for (const auto& r : iso) worst_iso = std::max(worst_iso, r[3]);
  rep.tables.push_back(std::move(it));
  rep.checks.push_back(make_check("isometry_max_error", worst_iso, "<", iso_tol));

  // Norm formula against the area integral for monomials.
  const std::size_t degrees = max_degree + 1;
  const auto quad = parallel_map<std::vector<double>>(quad_a.size() * degrees, cfg.threads, [&](std::size_t i) {
    const double qa = quad_a[i / degrees];
    const auto f = FockSeries::monomial(i % degrees);
    const double formula = std::exp(fock_norm_log(f, qa));
    const auto q = fock_norm_quadrature(f, qa);
    return std::vector<double>{qa, static_cast<double>(i % degrees), formula, q.norm_sq,
                               std::abs(q.norm_sq - formula) / formula};
  });
  CsvTable qt{"quadrature", {"a", "degree", "formula", "quadrature", "relative_error"}, quad};
  double worst_quad = 0.0;
  for (const auto& r : quad) worst_quad = std::max(worst_quad, r[4]);
  rep.tables.push_back(std::move(qt));
  rep.checks.push_back(make_check("quadrature_max_error", worst_quad, "<", quad_tol));

  rep.records["identity_max_gap"] = worst_gap;
  rep.records["isometry_max_error"] = worst_iso;
  rep.records["quadrature_max_error"] = worst_quad;
  return rep;
}

ScenarioReport run_sign_retrieval(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  if (cfg.b != 0.0) throw Error(ErrorCode::ComplexInput, "sign retrieval needs b = 0");
  const GaussianParam c(cfg.a);
  const auto trials = param(cfg, "trials", std::size_t{50});
  const auto support = param(cfg, "support", std::vector<std::int64_t>{0, 5});
  const auto window = param(cfg, "window", std::vector<std::int64_t>{-1, 10});
  const double delta_max = param(cfg, "delta_max", 0.2);
  if (support.size() != 2 || window.size() != 2 || support[1] < support[0] || window[1] < window[0]) {
    throw Error(ErrorCode::ConfigInvalid, "support and window must be [lo, hi]");
  }
  if (!(delta_max >= 0.0 && delta_max < 0.25)) throw Error(ErrorCode::ConfigInvalid, "delta_max must be in [0, 1/4)");
  const IndexRange w{window[0], window[1]};
  const auto k = static_cast<std::size_t>(support[1] - support[0] + 1);

  const auto results = parallel_map<SignRetrievalResult>(trials, cfg.threads, [&](std::size_t i) {
    auto rng = task_rng(cfg.seed, i);
    const CoefficientVector coeffs{support[0], random_complex(rng, k, true)};
    std::uniform_real_distribution<double> jitter(-delta_max, delta_max);
    std::vector<double> nodes;
    for (std::int64_t m = w.lo; m <= w.hi; ++m) nodes.push_back(0.5 * static_cast<double>(m) + jitter(rng));
    return sign_retrieval_check(c, coeffs, NodeSequence::explicit_window(w.lo, nodes), w);
  });

  CsvTable t{"sign_retrieval",
             {"trial", "patterns", "survivors", "distinct_solutions", "min_rejected_residual", "precondition", "passes"},
             {}};
  std::size_t failures = 0;
  double weakest = kInf;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    t.rows.push_back({static_cast<double>(i), static_cast<double>(r.patterns), static_cast<double>(r.survivors),
                      static_cast<double>(r.solutions.size()), r.min_rejected_residual, r.precondition_met ? 1.0 : 0.0,
                      r.passes ? 1.0 : 0.0});
    if (!r.passes) ++failures;
    weakest = std::min(weakest, r.min_rejected_residual);
  }
  rep.tables.push_back(std::move(t));
  rep.records["trials"] = trials;
  rep.records["failures"] = failures;
  rep.records["min_rejected_residual"] = weakest;
  rep.checks.push_back(make_check("failed_trials", static_cast<double>(failures), "==", 0.0));
  return rep;
}

}  // namespace gcis::detail
