// tvgame: run, sweep and verify time-varying zero-sum game simulations.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 dimension mismatch, 4 solver fault.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tvgame/errors.h"
#include "tvgame/harness.h"
#include "tvgame/verify.h"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDimension = 3;
constexpr int kExitSolver = 4;

tvgame::RunConfig ConfigWithOverrides(const std::string& path,
                                      std::optional<long> horizon,
                                      std::optional<std::string> out_dir) {
  tvgame::RunConfig config = tvgame::LoadRunConfig(path);
  if (horizon) {
    if (*horizon < 2) throw tvgame::ConfigError("T must be >= 2");
    config.horizon = *horizon;
  }
  if (out_dir) config.out_dir = *out_dir;
  return config;
}

int Run(const tvgame::RunConfig& config) {
  const tvgame::RunResult result = tvgame::RunCommand(config);
  const tvgame::TraceRow& last = result.final_row();
  nlohmann::json line{{"csv", config.out_dir + "/" + config.name + ".csv"},
                      {"T", last.t},
                      {"reg_x", last.reg_x},
                      {"reg_y", last.reg_y},
                      {"dyn_ne_reg", last.dyn_ne_reg},
                      {"ne_reg", last.ne_reg},
                      {"dual_gap", last.dual_gap},
                      {"invariants_hold", result.invariants.holds()}};
  std::cout << line.dump() << '\n';
  return 0;
}

int Sweep(const tvgame::RunConfig& config) {
  const tvgame::SweepResult sweep = tvgame::RunSweep(config);
  std::cout << sweep.summary.at("comparison").dump(2) << '\n';
  return 0;
}

int Verify(const std::string& suite, std::uint64_t seed,
           const std::string& report_path) {
  tvgame::VerifyReport report;
  if (suite == "drvu") {
    report = tvgame::VerifyDrvu(seed);
  } else if (suite == "oracle") {
    report = tvgame::VerifyOracle(seed);
  } else {
    report = tvgame::VerifyInvariants(seed);
  }
  const std::string text = report.ToJson().dump(2);
  std::cout << text << '\n';
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw tvgame::ConfigError("cannot write report " + report_path);
    out << text << '\n';
  }
  return report.passed() ? 0 : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning in time-varying zero-sum matrix games"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<long> horizon;
  std::optional<std::string> out_dir;
  CLI::App* run = app.add_subcommand("run", "Simulate one configuration");
  run->add_option("--config", config_path, "JSON run configuration")->required();
  run->add_option("--T", horizon, "Override the horizon");
  run->add_option("--out", out_dir, "Override the output directory");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Single step sizes versus the two-layer learner");
  sweep->add_option("--config", config_path, "JSON run configuration")->required();
  sweep->add_option("--T", horizon, "Override the horizon");
  sweep->add_option("--out", out_dir, "Override the output directory");

  std::string suite;
  std::uint64_t seed = 0;
  std::string report_path;
  CLI::App* verify = app.add_subcommand("verify", "Seeded property suites");
  verify->add_option("--suite", suite, "drvu | invariants | oracle")
      ->required()
      ->check(CLI::IsMember({"drvu", "invariants", "oracle"}));
  verify->add_option("--seed", seed, "Base seed");
  verify->add_option("--report", report_path, "Also write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return Run(ConfigWithOverrides(config_path, horizon, out_dir));
    if (*sweep) return Sweep(ConfigWithOverrides(config_path, horizon, out_dir));
    return Verify(suite, seed, report_path);
  } catch (const tvgame::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const tvgame::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << '\n';
    return kExitDimension;
  } catch (const tvgame::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}
