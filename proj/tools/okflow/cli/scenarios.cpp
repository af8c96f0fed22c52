#include "cli/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <optional>

#include <nlohmann/json.hpp>

#include "cli/svg.hpp"
#include "okflow/diagnostics.hpp"
#include "okflow/energy.hpp"
#include "okflow/errors.hpp"
#include "okflow/flow.hpp"
#include "okflow/io.hpp"
#include "okflow/variation.hpp"
#include "okflow/version.hpp"

namespace okflow::cli {

namespace {

using nlohmann::json;

json vec(Vec2 p) { return json::array({p.x, p.y}); }

std::string domain_string(const Domain& d) {
  return d.is_disk() ? "disk:" + format_double(d.radius()) : "plane";
}

json quad_json(const QuadratureSpec& q) {
  return {{"order", q.order}, {"depth", q.depth}, {"factor", q.factor}, {"method", to_string(q.method)}, {"arc", q.arc}};
}

json flow_config_json(const FlowConfig& f) {
  return {{"dt", f.dt},         {"cfl", f.cfl},         {"max_steps", f.max_steps},
          {"tol", f.tol},       {"resample", f.resample}, {"project", f.project},
          {"max_halvings", f.max_halvings}};
}

json config_json(const ScenarioConfig& c) {
  const auto& fx = c.fixture;
  json fixture = {{"name", fx.name},          {"R", fx.R},
                  {"N", fx.N},                {"a", fx.a},
                  {"b", fx.b},                {"amplitude", fx.amplitude},
                  {"mode", fx.mode},          {"separation", fx.separation},
                  {"angle", fx.angle},        {"path", fx.path},
                  {"domain", fx.domain ? domain_string(*fx.domain) : "default"}};
  json quad = quad_json(c.quad);
  quad["method"] = c.quad_method ? to_string(*c.quad_method) : "default";
  return {{"fixture", fixture},
          {"kernel", c.kernel},
          {"gamma", c.gamma},
          {"f", c.f},
          {"quad", quad},
          {"flow", flow_config_json(c.flow)},
          {"variation", {{"fields", c.variation_fields}, {"t", c.variation_t}, {"scale", c.variation_scale}}},
          {"orthogonality", {{"fields", c.orthogonality_fields}}},
          {"allard",
           {{"p", c.allard_p}, {"delta", c.allard_delta}, {"rho_max", c.allard_rho_max}, {"levels", c.allard_levels}}},
          {"seed", c.seed}};
}

json region_json(const Region& r) {
  json comps = json::array();
  for (const PlanarCurve& c : r.components()) comps.push_back({{"closed", c.closed}, {"vertices", c.size()}});
  return {{"domain", domain_string(r.domain())},
          {"components", comps},
          {"perimeter", perimeter(r)},
          {"area", area(r)}};
}

json variation_json(const VariationResult& v) {
  return {{"perimeter", v.perimeter}, {"nonlocal", v.nonlocal}, {"external", v.external}, {"total", v.total}};
}

json stationarity_json(const StationarityReport& s) {
  json res = json::array();
  for (const auto& r : s.residual) res.push_back(r);
  return {{"lambda_ls", s.lambda_ls},     {"lambda_Y", s.lambda_Y},
          {"lambda_difference", std::abs(s.lambda_Y - s.lambda_ls)},
          {"sup_residual", s.sup_residual}, {"l2_residual", s.l2_residual},
          {"perimeter", s.perimeter},     {"residual", res}};
}

json allard_json(const AllardReport& r) {
  return {{"center", vec(r.center)},
          {"radius", r.radius},
          {"p", r.p},
          {"delta", r.delta},
          {"density_ratio", r.density_ratio},
          {"curvature_norm", r.curvature_norm},
          {"support_pass", r.support_pass},
          {"density_pass", r.density_pass},
          {"curvature_pass", r.curvature_pass},
          {"passed", r.passed()}};
}

struct Run {
  json body = json::object();
  std::optional<Region> initial;
  std::optional<Region> final;
  std::optional<std::vector<std::vector<double>>> residual;
  std::vector<FlowStepRecord> trace;
  std::string check_failure;  // scenario-level failed check
};

struct Setup {
  Region region;
  Kernel kernel;
  ExternalPotential f;
};

Setup setup(const ScenarioConfig& c) {
  if (!(c.gamma >= 0.0)) throw ConfigError("gamma must be non-negative");
  return {fixtures::make(c.fixture), Kernel::parse(c.kernel), ExternalPotential::parse(c.f)};
}

void scenario_energy(const ScenarioConfig& c, Run& run) {
  Setup s = setup(c);
  const QuadratureSpec q = c.quad_for(QuadMethod::Triangulated);
  const EnergyBreakdown e = energy(s.region, s.kernel, c.gamma, s.f, q);
  run.body["energy"] = {{"perimeter", e.perimeter}, {"nonlocal", e.nonlocal}, {"external", e.external},
                        {"gamma", e.gamma},         {"total", e.total},       {"quadrature", quad_json(q)}};
  run.body["region"] = region_json(s.region);
  run.final = s.region;
}

void scenario_variation(const ScenarioConfig& c, Run& run) {
  Setup s = setup(c);
  if (c.variation_fields < 1) throw ConfigError("variation.fields must be positive");
  if (!(c.variation_t > 0.0)) throw ConfigError("variation.t must be positive");
  const QuadratureSpec q = c.quad_for(QuadMethod::EdgePolar);
  const auto fields =
      bump_battery(s.region, static_cast<std::size_t>(c.variation_fields), c.seed, c.variation_scale);
  json list = json::array();
  std::size_t passed = 0;
  double min_order = std::numeric_limits<double>::infinity(), max_excess = -min_order;
  for (const TestField& X : fields) {
    const ConsistencyCheck k = consistency_check(s.region, s.kernel, c.gamma, s.f, X, c.variation_t, q);
    passed += k.passed ? 1 : 0;
    if (k.order_resolved) min_order = std::min(min_order, k.study.order);
    max_excess = std::max(max_excess, k.excess);
    list.push_back({{"field", X.describe()},
                    {"analytic", variation_json(k.analytic)},
                    {"fd", json::array({k.study.fd[0], k.study.fd[1], k.study.fd[2]})},
                    {"t", k.study.t},
                    {"order", k.study.order},
                    {"order_resolved", k.order_resolved},
                    {"constant", k.study.constant},
                    {"extrapolated", k.study.extrapolated},
                    {"delta", std::abs(k.analytic.total - k.study.extrapolated)},
                    {"excess", k.excess},
                    {"passed", k.passed}});
  }
  run.body["fields"] = list;
  run.body["summary"] = {{"count", fields.size()},
                         {"passed", passed},
                         {"min_order", std::isfinite(min_order) ? json(min_order) : json(nullptr)},
                         {"max_excess", max_excess},
                         {"tolerance", 1e-4},
                         {"quadrature", quad_json(q)}};
  run.body["region"] = region_json(s.region);
  run.final = s.region;
  if (passed != fields.size())
    run.check_failure = std::to_string(fields.size() - passed) + " of " + std::to_string(fields.size()) +
                        " fields disagree with the finite-difference oracle";
}

void scenario_flow(const ScenarioConfig& c, Run& run) {
  Setup s = setup(c);
  FlowConfig fc = c.flow;
  fc.quad = c.quad_for(QuadMethod::EdgePolar);
  run.initial = s.region;
  const FlowResult r = okflow::run(s.region, s.kernel, c.gamma, s.f, fc);
  const StationarityReport& rep = r.report;
  const double P = perimeter(r.region), A = area(r.region);
  json body = stationarity_json(rep);
  body["converged"] = rep.converged;
  body["steps"] = rep.steps;
  body["halvings"] = rep.halvings;
  body["max_energy_increase"] = rep.max_energy_increase;
  body["max_area_drift"] = rep.max_area_drift;
  body["energy_initial"] = rep.energy_history.empty() ? 0.0 : rep.energy_history.front();
  body["energy_final"] = rep.energy_history.empty() ? 0.0 : rep.energy_history.back();
  body["isoperimetric_excess"] = P * P / (4.0 * std::numbers::pi * A) - 1.0;
  body["quadrature"] = quad_json(fc.quad);
  run.body["flow"] = body;
  run.body["region"] = region_json(r.region);
  run.final = r.region;
  run.residual = rep.residual;
  run.trace = rep.trace;
  if (!rep.failure.empty())
    run.check_failure = rep.failure;
  else if (!rep.converged)
    run.check_failure = "flow did not converge in " + std::to_string(rep.steps) + " steps";
}

void scenario_el_residual(const ScenarioConfig& c, Run& run) {
  Setup s = setup(c);
  const QuadratureSpec q = c.quad_for(QuadMethod::Triangulated);
  const StationarityReport rep = el_residual(s.region, s.kernel, c.gamma, s.f, q);
  json body = stationarity_json(rep);
  body["quadrature"] = quad_json(q);
  if (!rep.failure.empty()) body["lambda_Y_failure"] = rep.failure;
  run.body["el_residual"] = body;
  run.body["region"] = region_json(s.region);
  run.final = s.region;
  run.residual = rep.residual;
}

void scenario_orthogonality(const ScenarioConfig& c, Run& run) {
  Setup s = setup(c);
  if (!s.region.domain().is_disk()) throw ConfigError("orthogonality needs a disk domain");
  if (c.orthogonality_fields < 1) throw ConfigError("orthogonality.fields must be positive");
  const QuadratureSpec q = c.quad_for(QuadMethod::EdgePolar);
  const VariationContext ctx(s.region, s.kernel, c.gamma, s.f, q);
  const auto fields =
      bump_battery(s.region, static_cast<std::size_t>(c.orthogonality_fields), c.seed, c.variation_scale);
  json list = json::array();
  double worst = 0.0;
  for (const TestField& X : fields) {
    const double d = orthogonality_defect(ctx, X);
    worst = std::max(worst, d);
    list.push_back({{"field", X.describe()}, {"defect", d}});
  }
  run.body["orthogonality"] = {{"fields", list}, {"max_defect", worst}, {"lambda_ls", ctx.lambda_ls()},
                               {"quadrature", quad_json(q)}};
  run.body["region"] = region_json(s.region);
  run.final = s.region;
  run.residual = ctx.residual();
}

void scenario_allard(const ScenarioConfig& c, Run& run) {
  Setup s = setup(c);
  const QuadratureSpec q = c.quad_for(QuadMethod::EdgePolar);
  const AllardProbe probe(s.region, s.kernel, c.gamma, s.f, q);
  const AllardScan scan = allard_scan(probe, c.allard_p, c.allard_delta, c.allard_rho_max, c.allard_levels);
  json reports = json::array(), failing = json::array();
  for (const VertexScan& v : scan.vertices) {
    json r = allard_json(v.report);
    r["component"] = v.component;
    r["vertex"] = v.vertex;
    reports.push_back(r);
    if (!v.passed) failing.push_back({{"component", v.component}, {"vertex", v.vertex}, {"point", vec(v.report.center)}});
  }
  run.body["allard"] = {{"reports", reports},
                        {"failing", failing},
                        {"radii", scan.radii},
                        {"c0", probe.c0()},
                        {"lambda_ls", probe.lambda()},
                        {"safe_radius", std::isfinite(probe.safe_radius(c.allard_p, c.allard_delta))
                                            ? json(probe.safe_radius(c.allard_p, c.allard_delta))
                                            : json(nullptr)}};
  run.body["region"] = region_json(s.region);
  run.final = s.region;
}

void scenario_fixture_dump(const ScenarioConfig& c, Run& run) {
  const Region r = fixtures::make(c.fixture);
  run.body["region"] = region_json(r);
  run.final = r;
}

}  // namespace

Artifacts run_scenario(const ScenarioConfig& config) {
  Artifacts a;
  json report = {{"version", std::string("okflow ") + kVersion}, {"scenario", config.scenario},
                 {"config", config_json(config)}};
  Run run;
  try {
    if (config.scenario == "energy") scenario_energy(config, run);
    else if (config.scenario == "variation-check") scenario_variation(config, run);
    else if (config.scenario == "flow") scenario_flow(config, run);
    else if (config.scenario == "el-residual") scenario_el_residual(config, run);
    else if (config.scenario == "orthogonality") scenario_orthogonality(config, run);
    else if (config.scenario == "allard-scan") scenario_allard(config, run);
    else if (config.scenario == "fixture-dump") scenario_fixture_dump(config, run);
    else throw ConfigError("unknown scenario '" + config.scenario + "'");
    if (!run.check_failure.empty()) {
      a.exit_code = kNumericalFailure;
      a.message = run.check_failure;
      report["failure"] = {{"kind", "check"}, {"message", run.check_failure}};
    }
  } catch (const ConfigError& e) {
    a.exit_code = kConfigFailure;
    a.message = e.what();
    report["failure"] = {{"kind", "config"}, {"message", a.message}};
  } catch (const Error& e) {
    a.exit_code = kNumericalFailure;
    a.message = e.what();
    report["failure"] = {{"kind", "numerical"}, {"message", a.message}};
  }
  report["status"] = a.exit_code == kOk ? "ok" : "failed";
  for (auto& [k, v] : run.body.items()) report[k] = v;
  a.report_json = report.dump(2) + '\n';
  a.trace_csv = trace_csv(run.trace);
  if (run.final) {
    a.curve_csv = curve_csv(*run.final);
    a.curve_descriptor = curve_descriptor(*run.final);
    a.plot_svg = render_svg(run.initial ? &*run.initial : nullptr, *run.final, run.residual ? &*run.residual : nullptr);
  }
  return a;
}

void write_artifacts(const Artifacts& a, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
  const std::filesystem::path d(dir);
  write_text((d / "report.json").string(), a.report_json);
  write_text((d / "trace.csv").string(), a.trace_csv);
  if (!a.curve_csv.empty()) {
    write_text((d / "curve.csv").string(), a.curve_csv);
    write_text((d / "curve.json").string(), a.curve_descriptor);
  }
  if (!a.plot_svg.empty()) write_text((d / "plot.svg").string(), a.plot_svg);
}

}  // namespace okflow::cli
