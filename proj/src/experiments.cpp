#include "gcis/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <thread>

#include "gcis/errors.hpp"

namespace gcis {

namespace {

const std::map<std::string, detail::ScenarioFn>& registry() {
  static const std::map<std::string, detail::ScenarioFn> table{
      {"classify", detail::run_classify},
      {"framebound-sweep", detail::run_framebound_sweep},
      {"critical-half", detail::run_critical_half},
      {"kadets-sweep", detail::run_kadets_sweep},
      {"density-demo", detail::run_density_demo},
      {"kernel-asymptotic", detail::run_kernel_asymptotic},
      {"g0-estimate", detail::run_g0_estimate},
      {"fock-consistency", detail::run_fock_consistency},
      {"sign-retrieval", detail::run_sign_retrieval},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

ScenarioConfig ScenarioConfig::from_json(const json& j, const std::string& scenario_override) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "config must be a JSON object");
  ScenarioConfig c;
  c.params = j;
  try {
    if (!scenario_override.empty()) {
      c.scenario = scenario_override;
      if (j.contains("scenario") && j.at("scenario").get<std::string>() != scenario_override) {
        throw Error(ErrorCode::ConfigInvalid, "config is for scenario '" + j.at("scenario").get<std::string>() + "'");
      }
    } else if (j.contains("scenario")) {
      c.scenario = j.at("scenario").get<std::string>();
    } else {
      throw Error(ErrorCode::ConfigInvalid, "no scenario given");
    }
    if (!registry().contains(c.scenario)) throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + c.scenario + "'");
    if (!j.contains("seed")) throw Error(ErrorCode::ConfigInvalid, "seed is mandatory");
    c.seed = j.at("seed").get<std::uint64_t>();
    c.a = j.value("a", 1.0);
    c.b = j.value("b", 0.0);
    if (!(c.a > 0.0)) throw Error(ErrorCode::ConfigInvalid, "a must be positive");
    c.threads = j.value("threads", 1u);
    if (c.threads == 0) throw Error(ErrorCode::ConfigInvalid, "threads must be >= 1");
    if (j.contains("tolerances")) {
      for (const auto& [k, v] : j.at("tolerances").items()) {
        const double x = v.get<double>();
        if (!(x > 0.0)) throw Error(ErrorCode::ConfigInvalid, "tolerance '" + k + "' must be positive");
        c.tolerances[k] = x;
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, e.what());
  }
  return c;
}

double ScenarioConfig::tolerance(const std::string& key, double fallback) const {
  const auto it = tolerances.find(key);
  return it == tolerances.end() ? fallback : it->second;
}

ThresholdCheck make_check(std::string name, double value, std::string comparison, double threshold) {
  bool ok = false;
  if (comparison == "<") ok = value < threshold;
  else if (comparison == "<=") ok = value <= threshold;
  else if (comparison == ">") ok = value > threshold;
  else if (comparison == ">=") ok = value >= threshold;
  else if (comparison == "==") ok = value == threshold;
  else throw Error(ErrorCode::BadParameter, "unknown comparison '" + comparison + "'");
  return {std::move(name), value, std::move(comparison), threshold, ok};
}

std::string CsvTable::render() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  char buf[40];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

bool ScenarioReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

json ScenarioReport::to_json() const {
  json checks_json = json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
                           {"comparison", c.comparison},
                           {"threshold", c.threshold},
                           {"passed", c.passed}});
  }
  json files = json::array();
  for (const auto& t : tables) files.push_back(t.name + ".csv");
  for (const auto& t : plots) files.push_back("plotdata/" + t.name + ".csv");
  return {{"scenario", scenario}, {"config", config},         {"records", records},
          {"checks", checks_json}, {"passed", passed()},       {"outputs", files},
          {"timings", {{"wall_seconds", wall_seconds}}}};
}

ScenarioReport run_scenario(const ScenarioConfig& config) {
  const auto it = registry().find(config.scenario);
  if (it == registry().end()) throw Error(ErrorCode::UnknownScenario, "unknown scenario '" + config.scenario + "'");
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport report;
  try {
    report = it->second(config);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, e.what());
  }
  report.scenario = config.scenario;
  report.config = config.params;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

void write_report(const ScenarioReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir / "plotdata");
  auto write = [](const std::filesystem::path& p, const std::string& body) {
    std::ofstream os(p, std::ios::binary);
    if (!os) throw Error(ErrorCode::ConfigInvalid, "cannot write " + p.string());
    os << body;
  };
  write(dir / "report.json", report.to_json().dump(2) + "\n");
  for (const auto& t : report.tables) write(dir / (t.name + ".csv"), t.render());
  for (const auto& t : report.plots) write(dir / "plotdata" / (t.name + ".csv"), t.render());
}

std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t task) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
  return std::mt19937_64(seq);
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1u, threads));
  std::vector<std::exception_ptr> errors(count);
  auto body = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace gcis
