#include "cli/config.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "okflow/errors.hpp"
#include "okflow/io.hpp"

namespace okflow::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(key + ": expected a number, got '" + v + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw ConfigError(key + ": expected an integer, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const long long x = to_integer(key, v);
  if (x < -1000000000LL || x > 1000000000LL) throw ConfigError(key + ": value out of range");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on") return true;
  if (v == "false" || v == "0" || v == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

Domain to_domain(const std::string& key, const std::string& v) {
  if (v == "plane") return Domain::plane();
  if (v.rfind("disk:", 0) == 0) return Domain::disk(to_double(key, v.substr(5)));
  throw ConfigError(key + ": expected 'plane' or 'disk:<R>', got '" + v + "'");
}

using Setter = std::function<void(ScenarioConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> m = {
      {"fixture", [](ScenarioConfig& c, auto&, auto& v) { c.fixture.name = v; }},
      {"fixture.R", [](ScenarioConfig& c, auto& k, auto& v) { c.fixture.R = to_double(k, v); }},
      {"fixture.N",
       [](ScenarioConfig& c, auto& k, auto& v) {
         const long long n = to_integer(k, v);
         if (n < 1) throw ConfigError(k + ": must be positive");
         c.fixture.N = static_cast<std::size_t>(n);
       }},
      {"fixture.a", [](ScenarioConfig& c, auto& k, auto& v) { c.fixture.a = to_double(k, v); }},
      {"fixture.b", [](ScenarioConfig& c, auto& k, auto& v) { c.fixture.b = to_double(k, v); }},
      {"fixture.amplitude", [](ScenarioConfig& c, auto& k, auto& v) { c.fixture.amplitude = to_double(k, v); }},
      {"fixture.mode", [](ScenarioConfig& c, auto& k, auto& v) { c.fixture.mode = to_int(k, v); }},
      {"fixture.separation", [](ScenarioConfig& c, auto& k, auto& v) { c.fixture.separation = to_double(k, v); }},
      {"fixture.angle", [](ScenarioConfig& c, auto& k, auto& v) { c.fixture.angle = to_double(k, v); }},
      {"fixture.path", [](ScenarioConfig& c, auto&, auto& v) { c.fixture.path = v; }},
      {"domain", [](ScenarioConfig& c, auto& k, auto& v) { c.fixture.domain = to_domain(k, v); }},
      {"kernel", [](ScenarioConfig& c, auto&, auto& v) { c.kernel = v; }},
      {"gamma", [](ScenarioConfig& c, auto& k, auto& v) { c.gamma = to_double(k, v); }},
      {"f", [](ScenarioConfig& c, auto&, auto& v) { c.f = v; }},
      {"quad.order", [](ScenarioConfig& c, auto& k, auto& v) { c.quad.order = to_int(k, v); }},
      {"quad.depth", [](ScenarioConfig& c, auto& k, auto& v) { c.quad.depth = to_int(k, v); }},
      {"quad.factor", [](ScenarioConfig& c, auto& k, auto& v) { c.quad.factor = to_double(k, v); }},
      {"quad.method", [](ScenarioConfig& c, auto&, auto& v) { c.quad_method = parse_quad_method(v); }},
      {"quad.arc", [](ScenarioConfig& c, auto& k, auto& v) { c.quad.arc = to_int(k, v); }},
      {"flow.dt", [](ScenarioConfig& c, auto& k, auto& v) { c.flow.dt = to_double(k, v); }},
      {"flow.cfl", [](ScenarioConfig& c, auto& k, auto& v) { c.flow.cfl = to_double(k, v); }},
      {"flow.max_steps", [](ScenarioConfig& c, auto& k, auto& v) { c.flow.max_steps = to_int(k, v); }},
      {"flow.tol", [](ScenarioConfig& c, auto& k, auto& v) { c.flow.tol = to_double(k, v); }},
      {"flow.resample", [](ScenarioConfig& c, auto& k, auto& v) { c.flow.resample = to_int(k, v); }},
      {"flow.project", [](ScenarioConfig& c, auto& k, auto& v) { c.flow.project = to_bool(k, v); }},
      {"flow.max_halvings", [](ScenarioConfig& c, auto& k, auto& v) { c.flow.max_halvings = to_int(k, v); }},
      {"variation.fields", [](ScenarioConfig& c, auto& k, auto& v) { c.variation_fields = to_int(k, v); }},
      {"variation.t", [](ScenarioConfig& c, auto& k, auto& v) { c.variation_t = to_double(k, v); }},
      {"variation.scale", [](ScenarioConfig& c, auto& k, auto& v) { c.variation_scale = to_double(k, v); }},
      {"orthogonality.fields", [](ScenarioConfig& c, auto& k, auto& v) { c.orthogonality_fields = to_int(k, v); }},
      {"allard.p", [](ScenarioConfig& c, auto& k, auto& v) { c.allard_p = to_double(k, v); }},
      {"allard.delta", [](ScenarioConfig& c, auto& k, auto& v) { c.allard_delta = to_double(k, v); }},
      {"allard.rho_max", [](ScenarioConfig& c, auto& k, auto& v) { c.allard_rho_max = to_double(k, v); }},
      {"allard.levels", [](ScenarioConfig& c, auto& k, auto& v) { c.allard_levels = to_int(k, v); }},
      {"seed",
       [](ScenarioConfig& c, auto& k, auto& v) {
         if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
           throw ConfigError(k + ": expected an unsigned integer, got '" + v + "'");
         try {
           c.seed = std::stoull(v);
         } catch (const std::logic_error&) {
           throw ConfigError(k + ": value out of range");
         }
       }},
      {"output", [](ScenarioConfig& c, auto&, auto& v) { c.output = v; }},
  };
  return m;
}

}  // namespace

QuadratureSpec ScenarioConfig::quad_for(QuadMethod fallback) const {
  QuadratureSpec s = quad;
  s.method = quad_method.value_or(fallback);
  return s;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> n = {"energy",        "variation-check", "flow",        "el-residual",
                                             "orthogonality", "allard-scan",     "fixture-dump"};
  return n;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!seen.insert(key).second)
      throw ConfigError("config line " + std::to_string(lineno) + ": repeated key '" + key + "'");
    it->second(c, key, value);
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) { return parse_config(read_text(path)); }

}  // namespace okflow::cli
