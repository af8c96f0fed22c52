#pragma once

#include <string>

#include "cli/config.hpp"

namespace okflow::cli {

enum ExitCode : int { kOk = 0, kConfigFailure = 2, kNumericalFailure = 3 };

struct Artifacts {
  int exit_code = kOk;
  std::string message;  // failure text, empty on success
  std::string report_json;
  std::string curve_csv;
  std::string curve_descriptor;
  std::string trace_csv;
  std::string plot_svg;
};

// Runs one scenario entirely in memory. Never throws for library errors:
// configuration problems map to kConfigFailure, numerical ones (and failed
// checks such as a flow that does not converge) to kNumericalFailure.
Artifacts run_scenario(const ScenarioConfig& config);

// report.json, curve.csv, curve.json, trace.csv and plot.svg in `dir`.
void write_artifacts(const Artifacts& a, const std::string& dir);

}  // namespace okflow::cli
