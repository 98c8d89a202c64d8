// Acceptance criteria: one PASS/FAIL line each, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gcis/experiments.hpp"
#include "gcis/fock.hpp"
#include "gcis/generating.hpp"
#include "gcis/sign_retrieval.hpp"

using namespace gcis;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

int failures = 0;

void criterion(int id, const char* name, double max_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = secs < max_seconds;
  const bool ok = o.ok && in_time;
  if (!ok) ++failures;
  std::printf("%s %2d %s: %s [%.2f s < %.0f s%s]\n", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              max_seconds, in_time ? "" : " exceeded");
  std::fflush(stdout);
}

std::vector<Complex> random_coeffs(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(n);
  for (auto& x : v) x = {g(rng), g(rng)};
  return v;
}

double sigma_min(const GaussianParam& c, const NodeSequence& seq, std::int64_t m, Orientation o) {
  const std::int64_t sizes[] = {m};
  FrameBoundOptions opt;
  opt.orientation = o;
  return frame_bounds(c, seq, sizes, opt).records.front().sigma_min;
}

}  // namespace

int main() {
  criterion(1, "fock-norm-formula", 5, [] {
    double worst = 0.0;
    for (double a : {0.25, 0.5, 1.0}) {
      for (std::size_t n = 0; n <= 5; ++n) {
        const auto f = FockSeries::monomial(n);
        worst = std::max(worst, rel(fock_norm_quadrature(f, a).norm_sq, std::exp(fock_norm_log(f, a))));
      }
    }
    return Outcome{worst < 1e-6, format("max rel gap %.3g < 1e-6", worst)};
  });

  criterion(2, "isometry", 1, [] {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
      auto rng = task_rng(2, i);
      const GaussianParam c(0.25 + 0.0125 * static_cast<double>(i), i % 2 ? 2.0 : 0.0);
      const CoefficientVector coeffs{-10, random_coeffs(rng, 21)};
      const auto f = to_fock(c, coeffs);
      const double total = std::exp(fock_norm_log(f.minus, c.a())) + std::norm(f.c0) + std::exp(fock_norm_log(f.plus, c.a()));
      worst = std::max(worst, rel(total, coeffs.norm() * coeffs.norm()));
    }
    return Outcome{worst < 1e-12, format("100 vectors, max rel gap %.3g < 1e-12", worst)};
  });

  criterion(3, "fock-identity", 5, [] {
    double worst = 0.0;
    for (double b : {0.0, 2.0}) {
      const GaussianParam c(0.5, b);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto rng = task_rng(3, seed);
        const CoefficientVector coeffs{1, random_coeffs(rng, 6)};
        for (int lambda = -5; lambda <= 5; ++lambda) {
          worst = std::max(worst, consistency_identity(c, coeffs, lambda).relative_gap);
        }
      }
    }
    return Outcome{worst < 1e-9, format("5x11 grid, b in {0, 2}, max rel gap %.3g < 1e-9", worst)};
  });

  criterion(4, "kernel-asymptotic", 5, [] {
    // Frozen from tests/oracles/kernel_ratio.py over the same grid.
    const double frozen_lo = 1.368539474135061e-44, frozen_hi = 1.7867778162077344;
    double lo = INFINITY, hi = 0.0, lo_pos = INFINITY, hi_pos = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double t = -10.0 + 0.1 * i;
      const double r = kernel_norm(0.5, {t, 0.0}).ratio;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
      if (t >= 0.0) {
        lo_pos = std::min(lo_pos, r);
        hi_pos = std::max(hi_pos, r);
      }
    }
    const bool contained = lo >= frozen_lo * (1 - 1e-9) && hi <= frozen_hi * (1 + 1e-9);
    const double spread = hi / lo;
    return Outcome{contained && spread < 10.0,
                   format("bracket [%.6g, %.6g] %s frozen, spread %.3g < 10 (t >= 0 alone: %.3g)", lo, hi,
                          contained ? "inside" : "outside", spread, hi_pos / lo_pos)};
  });

  criterion(5, "classifier", 1, [] {
    const auto integers = avdonin_verdict(NodeSequence::affine(1.0, 0.0));
    const auto half = avdonin_verdict(NodeSequence::periodic({0.5}));
    const auto pair = avdonin_verdict(NodeSequence::periodic({0.45, -0.35}));
    const auto dense = avdonin_verdict(NodeSequence::affine(0.9, 0.0));
    const auto sparse = avdonin_verdict(NodeSequence::affine(1.1, 0.0));
    const bool ok = integers.passes && !half.passes && half.best_window.delta_star == 0.5 && pair.passes &&
                    pair.best_window.n == 2 && std::abs(pair.best_window.delta_star - 0.05) < 1e-15 &&
                    !dense.enumerable && !dense.passes && !sparse.enumerable && !sparse.passes;
    return Outcome{ok, format("n: %s; n+1/2: %s (delta* %.17g); (0.45,-0.35): %s N=%d delta* %.17g; alpha 0.9/1.1 "
                              "enumerable: %d/%d",
                              integers.passes ? "pass" : "fail", half.passes ? "pass" : "fail",
                              half.best_window.delta_star, pair.passes ? "pass" : "fail", pair.best_window.n,
                              pair.best_window.delta_star, dense.enumerable, sparse.enumerable)};
  });

  criterion(6, "kadets-critical-sweep", 60, [] {
    const GaussianParam c(1.0);
    std::string detail;
    bool ok = true;
    for (double d : {0.1, 0.3, 0.45}) {
      const auto seq = NodeSequence::periodic({d});
      const double v = std::abs(sigma_min(c, seq, 64, Orientation::Riesz) / sigma_min(c, seq, 32, Orientation::Riesz) - 1);
      ok = ok && v < 0.1;
      detail += format("delta %.2g var %.3g; ", d, v);
    }
    const auto crit = NodeSequence::periodic({0.5});
    const double s16 = sigma_min(c, crit, 16, Orientation::Riesz);
    const double s32 = sigma_min(c, crit, 32, Orientation::Riesz);
    const double s64 = sigma_min(c, crit, 64, Orientation::Riesz);
    ok = ok && s32 / s16 <= 0.5 && s64 / s32 <= 0.5;
    detail += format("delta 0.5 ratios %.6g, %.6g <= 0.5 (M*sigma_min %.4g, %.4g, %.4g)", s32 / s16, s64 / s32,
                     16 * s16, 32 * s32, 64 * s64);
    return Outcome{ok, detail};
  });

  criterion(7, "beyond-kadets-period4", 60, [] {
    const auto seq = NodeSequence::periodic({0.7, -0.1, -0.7, 0.1});
    const auto v = avdonin_verdict(seq);
    const GaussianParam c(1.0);
    const double var = std::abs(sigma_min(c, seq, 64, Orientation::Riesz) / sigma_min(c, seq, 32, Orientation::Riesz) - 1);
    return Outcome{v.passes && var < 0.1, format("classifier %s (N=%d, delta* %.3g), sigma_min var %.3g < 0.1",
                                                 v.passes ? "pass" : "fail", v.best_window.n,
                                                 v.best_window.delta_star, var)};
  });

  criterion(8, "density-demos", 60, [] {
    const GaussianParam c(1.0);
    const auto dense = NodeSequence::affine(0.9, 0.0), sparse = NodeSequence::affine(1.1, 0.0);
    const double vf = std::abs(sigma_min(c, dense, 64, Orientation::Frame) / sigma_min(c, dense, 32, Orientation::Frame) - 1);
    const double vr =
        std::abs(sigma_min(c, sparse, 64, Orientation::Riesz) / sigma_min(c, sparse, 32, Orientation::Riesz) - 1);
    return Outcome{vf < 0.1 && vr < 0.1, format("alpha 0.9 frame var %.3g, alpha 1.1 riesz var %.3g, both < 0.1", vf, vr)};
  });

  criterion(9, "hilbert-schmidt-block", 1, [] {
    bool ok = true;
    double worst_tail = 0.0;
    for (int w : {6, 10, 20}) {
      const auto h = compact_block_hsnorm(GaussianParam(1.0), NodeSequence::affine(1.0, 0.0), w);
      worst_tail = std::max(worst_tail, h.tail_bound);
    }
    const auto h20 = compact_block_hsnorm(GaussianParam(1.0), NodeSequence::affine(1.0, 0.0), 20);
    const double gap = rel(h20.hs_norm * h20.hs_norm, 0.00033549308789999376);
    ok = worst_tail < 1e-12 && gap < 1e-12;
    return Outcome{ok, format("tail %.3g < 1e-12 for W >= 6, W=20 vs oracle rel %.3g", worst_tail, gap)};
  });

  criterion(10, "g0-estimate", 10, [] {
    // Frozen from tests/oracles/g0_bracket.py.
    struct Frozen {
      double a, lo, hi;
    };
    bool ok = true;
    std::string detail;
    for (const auto& f : {Frozen{0.5, 0.17074375825890585, 5.6302235000489085},
                          Frozen{1.0, 0.48973021790603662, 2.6891822128720022}}) {
      const auto grid = estimate_grid(f.a, 21.0 * f.a, 0.1, 8, g0_zeros(f.a, 14), 0.1);
      double lo = INFINITY, hi = 0.0;
      for (const auto& w : grid) {
        const double r = g0_estimate_ratio(f.a, w);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      ok = ok && lo >= f.lo * (1 - 1e-9) && hi <= f.hi * (1 + 1e-9);
      detail += format("a=%g: %zu points in [%.10g, %.10g]; ", f.a, grid.size(), lo, hi);
    }
    return Outcome{ok, detail + "frozen brackets contain all"};
  });

  criterion(11, "sign-retrieval", 120, [] {
    std::ifstream in(std::filesystem::path(GCIS_CONFIG_DIR) / "sign_retrieval.json");
    const auto cfg = ScenarioConfig::from_json(json::parse(in));
    const GaussianParam c(cfg.a);
    const std::int64_t lo = -1, hi = 10;
    std::size_t exact = 0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      auto rng = task_rng(cfg.seed, i);
      std::normal_distribution<double> g;
      std::vector<Complex> v(6);
      for (auto& x : v) x = g(rng);
      const CoefficientVector coeffs{0, v};
      std::uniform_real_distribution<double> jitter(-0.2, 0.2);
      std::vector<double> nodes;
      for (std::int64_t m = lo; m <= hi; ++m) nodes.push_back(0.5 * static_cast<double>(m) + jitter(rng));
      const auto r = sign_retrieval_check(c, coeffs, NodeSequence::explicit_window(lo, nodes), {lo, hi});
      if (r.passes && r.solutions.size() == 2) ++exact;
    }
    return Outcome{exact == 50, format("%zu/50 trials with survivor set exactly {+c, -c} (W = 12)", exact)};
  });

  criterion(12, "determinism", 120, [] {
    std::size_t configs = 0, files = 0;
    std::string mismatch;
    for (const auto& entry : std::filesystem::directory_iterator(GCIS_CONFIG_DIR)) {
      if (entry.path().extension() != ".json") continue;
      std::ifstream in(entry.path());
      const auto cfg = ScenarioConfig::from_json(json::parse(in));
      const auto first = run_scenario(cfg);
      const auto second = run_scenario(cfg);
      ++configs;
      auto compare = [&](const std::vector<CsvTable>& x, const std::vector<CsvTable>& y) {
        if (x.size() != y.size()) mismatch = entry.path().filename().string();
        for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i, ++files) {
          if (x[i].render() != y[i].render()) mismatch = entry.path().filename().string() + ":" + x[i].name;
        }
      };
      compare(first.tables, second.tables);
      compare(first.plots, second.plots);
    }
    return Outcome{mismatch.empty() && configs > 0,
                   mismatch.empty() ? format("%zu configs, %zu CSV bodies byte-identical", configs, files)
                                    : "differs: " + mismatch};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
