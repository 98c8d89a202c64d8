// gauss-cis <scenario> --config <path.json> [--out <dir>] [--seed <u64>] [--threads <n>]
//
// Exit codes: 0 all thresholds met, 1 a threshold failed (report still
// written), 2 bad invocation or config, 3 numerical error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "gcis/errors.hpp"
#include "gcis/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Complete interpolating sequences for Gaussian shift-invariant spaces"};
  std::string scenario;
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  app.add_option("scenario", scenario, "one of: classify, framebound-sweep, critical-half, kadets-sweep, "
                                       "density-demo, kernel-asymptotic, g0-estimate, fock-consistency, sign-retrieval")
      ->required();
  app.add_option("--config", config_path, "scenario config (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "overrides the config seed");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    std::ifstream in(config_path);
    gcis::json doc;
    try {
      doc = gcis::json::parse(in);
    } catch (const gcis::json::exception& e) {
      throw gcis::Error(gcis::ErrorCode::ConfigInvalid, e.what());
    }
    if (seed) doc["seed"] = *seed;
    if (threads) doc["threads"] = *threads;
    const auto config = gcis::ScenarioConfig::from_json(doc, scenario);
    const auto report = gcis::run_scenario(config);
    gcis::write_report(report, out_dir);
    for (const auto& c : report.checks) {
      std::printf("%s %s: %.6g %s %.6g\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value, c.comparison.c_str(),
                  c.threshold);
    }
    std::printf("%s (%zu checks, %.2f s) -> %s\n", report.passed() ? "OK" : "ThresholdFailed", report.checks.size(),
                report.wall_seconds, out_dir.c_str());
    return report.passed() ? 0 : 1;
  } catch (const gcis::Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.code()) {
      case gcis::ErrorCode::UnknownScenario:
      case gcis::ErrorCode::ConfigInvalid:
        return 2;
      default:
        return 3;
    }
  }
}
