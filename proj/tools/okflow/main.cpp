#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/config.hpp"
#include "cli/scenarios.hpp"
#include "okflow/errors.hpp"
#include "okflow/version.hpp"

int main(int argc, char** argv) {
  using namespace okflow::cli;

  CLI::App app{"Polygonal Ohta-Kawasaki energies, first variations and stationarity checks"};
  app.set_version_flag("--version", std::string("okflow ") + okflow::kVersion);
  std::string scenario, config_path, out;
  std::optional<std::uint64_t> seed;
  app.add_option("scenario", scenario, "energy | variation-check | flow | el-residual | orthogonality | "
                                       "allard-scan | fixture-dump")
      ->required();
  app.add_option("--config", config_path, "flat key = value configuration file")->required();
  app.add_option("--out", out, "output directory (default: the config's `output`, else .)");
  app.add_option("--seed", seed, "seed for random field batteries");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigFailure;
  }

  ScenarioConfig config;
  try {
    config = load_config(config_path);
  } catch (const okflow::Error& e) {
    std::cerr << "okflow: " << e.what() << '\n';
    return kConfigFailure;
  }
  config.scenario = scenario;
  if (seed) config.seed = *seed;
  if (!out.empty()) config.output = out;

  const Artifacts a = run_scenario(config);
  try {
    write_artifacts(a, config.output);
  } catch (const okflow::Error& e) {
    std::cerr << "okflow: " << e.what() << '\n';
    return kConfigFailure;
  }
  if (a.exit_code != kOk) std::cerr << "okflow: " << a.message << '\n';
  return a.exit_code;
}
