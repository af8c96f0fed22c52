#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "okflow/fixtures.hpp"
#include "okflow/flow.hpp"
#include "okflow/potential.hpp"

namespace okflow::cli {

struct ScenarioConfig {
  std::string scenario;
  fixtures::FixtureSpec fixture;
  std::string kernel = "log";
  double gamma = 0.0;
  std::string f = "zero";
  // Unset method: energy and el-residual use the triangulated potential,
  // the other scenarios the edge-polar one.
  QuadratureSpec quad;
  std::optional<QuadMethod> quad_method;
  FlowConfig flow;
  int variation_fields = 20;
  double variation_t = 0.02;
  double variation_scale = 1.0;
  int orthogonality_fields = 10;
  double allard_p = 2.0;
  double allard_delta = 0.1;
  double allard_rho_max = 0.25;
  int allard_levels = 12;
  std::uint64_t seed = 42;
  std::string output = ".";

  QuadratureSpec quad_for(QuadMethod fallback) const;
};

const std::vector<std::string>& scenario_names();
const std::vector<std::string>& config_keys();

// Flat `key = value` lines with `#` comments. Throws ConfigError on unknown
// or repeated keys and malformed values.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

}  // namespace okflow::cli
