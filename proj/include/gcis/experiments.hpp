#pragma once

// Scenario runner: JSON config in, report.json plus CSV tables out.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gcis/json_io.hpp"

namespace gcis {

struct ScenarioConfig {
  std::string scenario;
  std::uint64_t seed = 0;
  double a = 1.0;
  double b = 0.0;
  unsigned threads = 1;
  std::map<std::string, double> tolerances;
  json params;  // the full config document, for scenario-specific keys

  /// Throws ConfigInvalid (missing seed, non-positive tolerance, bad types)
  /// and UnknownScenario. `scenario_override` wins over a "scenario" key.
  static ScenarioConfig from_json(const json& j, const std::string& scenario_override = {});

  double tolerance(const std::string& key, double fallback) const;
};

struct ThresholdCheck {
  std::string name;
  double value = 0.0;
  std::string comparison;  // "<", "<=", ">", ">=", "=="
  double threshold = 0.0;
  bool passed = false;
};

ThresholdCheck make_check(std::string name, double value, std::string comparison, double threshold);

struct CsvTable {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Header line, then one line per row with every value printed as %.17g.
  std::string render() const;
};

struct ScenarioReport {
  std::string scenario;
  json config;
  json records = json::object();
  std::vector<ThresholdCheck> checks;
  std::vector<CsvTable> tables;
  std::vector<CsvTable> plots;  // two columns x, y
  double wall_seconds = 0.0;

  bool passed() const;
  json to_json() const;
};

const std::vector<std::string>& scenario_names();

/// Throws UnknownScenario, ConfigInvalid; numerical errors propagate.
ScenarioReport run_scenario(const ScenarioConfig& config);

/// Writes report.json, <table>.csv and plotdata/<plot>.csv under `dir`.
void write_report(const ScenarioReport& report, const std::filesystem::path& dir);

/// Per-task engine derived from (seed, task), independent of scheduling.
std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t task);

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Results come
/// back in index order; the first exception (lowest index) is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
  std::vector<T> out(count);
  parallel_for(count, threads, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

namespace detail {
using ScenarioFn = ScenarioReport (*)(const ScenarioConfig&);
ScenarioReport run_classify(const ScenarioConfig&);
ScenarioReport run_framebound_sweep(const ScenarioConfig&);
ScenarioReport run_critical_half(const ScenarioConfig&);
ScenarioReport run_kadets_sweep(const ScenarioConfig&);
ScenarioReport run_density_demo(const ScenarioConfig&);
ScenarioReport run_kernel_asymptotic(const ScenarioConfig&);
ScenarioReport run_g0_estimate(const ScenarioConfig&);
ScenarioReport run_fock_consistency(const ScenarioConfig&);
ScenarioReport run_sign_retrieval(const ScenarioConfig&);
}  // namespace detail

}  // namespace gcis
