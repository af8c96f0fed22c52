// Runs every acceptance criterion and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/scenarios.hpp"
#include "okflow/diagnostics.hpp"
#include "okflow/fixtures.hpp"
#include "okflow/flow.hpp"
#include "okflow/potential.hpp"
#include "okflow/variation.hpp"
#include "oracles.hpp"

using namespace okflow;

namespace {

// Pinned tolerances.
constexpr double kPotentialTol = 1e-5;
constexpr double kPotentialSeconds = 5.0;
constexpr double kVariationAbs = 1e-4;
constexpr double kVariationOrder = 1.9;
constexpr std::size_t kVariationTriples = 60;
constexpr double kVariationSeconds = 300.0;
constexpr double kResidualTol = 1e-3;
constexpr double kRecheckTol = 1e-6;
constexpr double kFlowSeconds = 120.0;
constexpr double kLambdaTol = 1e-2;
constexpr double kDiameterTol = 1e-6;
constexpr double kContactFraction = 0.1;
constexpr double kCrossVariationTol = 1e-8;
constexpr double kLaplacianTol = 1e-4;
constexpr double kFluxTol = 1e-3;
constexpr std::size_t kPdeSamples = 100;
constexpr double kAreaDriftTol = 1e-8;
constexpr double kDescentTol = 1e-12;
constexpr double kIsoperimetricTol = 1e-4;

const ExternalPotential kZero = ExternalPotential::zero();

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct FlowRun {
  std::string name;
  Region initial;
  FlowResult result;
  Kernel kernel;
  double gamma;
  QuadratureSpec quad;
  double seconds;
};

FlowRun run_flow(std::string name, const Region& e, const Kernel& k, double gamma, FlowConfig cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  FlowResult r = run(e, k, gamma, kZero, cfg);
  return {std::move(name), e, std::move(r), k, gamma, cfg.quad, seconds_since(t0)};
}

// 1: centre values of the unit disk at quadrature defaults.
Outcome potential_oracle() {
  const QuadratureSpec defaults{};
  const Region disk = fixtures::circle(1.0, 4096);
  Outcome o{true, ""};
  const auto check = [&](const char* label, const Kernel& k, double ref) {
    const auto t0 = std::chrono::steady_clock::now();
    const double v = phi(disk, k, {0.0, 0.0}, defaults);
    const double s = seconds_since(t0), err = std::abs(v - ref);
    o.pass = o.pass && err <= kPotentialTol && s < kPotentialSeconds;
    o.detail += fmt("%s err %.2e (%.2fs); ", label, err, s);
  };
  check("log", Kernel::log(), oracle::disk_center_log());
  for (double beta : {0.25, 0.5, 0.75})
    check(fmt("riesz:%g", beta).c_str(), Kernel::riesz(beta), oracle::disk_center_riesz(beta));
  return o;
}

// 2: analytic first variation against central differences.
Outcome variation_consistency() {
  struct Case {
    std::string name;
    Region region;
    Kernel kernel;
    double gamma;
    ExternalPotential f;
  };
  const Domain unit = Domain::disk(1.0);
  const std::vector<Case> cases = {
      {"perturbed_circle/log", fixtures::perturbed_circle(0.1, 3, 128), Kernel::log(), 0.5, kZero},
      {"perturbed_circle/riesz", fixtures::perturbed_circle(0.1, 3, 128), Kernel::riesz(0.5), 0.5, kZero},
      {"ellipse/log", fixtures::ellipse(1.3, 0.6, 128), Kernel::log(), 1.0, ExternalPotential::linear({0.3, -0.2})},
      {"ellipse/riesz", fixtures::ellipse(1.3, 0.6, 128), Kernel::riesz(0.25), 0.3,
       ExternalPotential::radial(0.5, 2.0)},
      {"two_disks/log", fixtures::two_disks(1.5, 0.5, 128), Kernel::log(), 2.0, kZero},
      {"two_disks/riesz", fixtures::two_disks(1.5, 0.5, 128), Kernel::riesz(0.75), 1.0, kZero},
      {"chord/neumann", fixtures::chord(0.3, 128), Kernel::neumann_disk(1.0), 0.5, kZero},
      {"ellipse-in-disk/neumann", fixtures::ellipse(0.6, 0.4, 128, unit), Kernel::neumann_disk(1.0), 1.0,
       ExternalPotential::linear({0.5, 0.0})},
  };
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t triples = 0, failed = 0;
  double worst_excess = -1e300, worst_order = 1e300;
  std::uint64_t seed = 42;
  for (const Case& c : cases) {
    for (const TestField& X : bump_battery(c.region, 8, seed++)) {
      const ConsistencyCheck k = consistency_check(c.region, c.kernel, c.gamma, c.f, X, 0.02,
                                                   QuadratureSpec::edge_polar(), kVariationAbs, kVariationOrder);
      ++triples;
      if (!k.passed) {
        ++failed;
        std::printf("    %s %s: excess %.3e order %.3f\n", c.name.c_str(), X.describe().c_str(), k.excess,
                    k.study.order);
      }
      worst_excess = std::max(worst_excess, k.excess);
      if (k.order_resolved) worst_order = std::min(worst_order, k.study.order);
    }
  }
  const double s = seconds_since(t0);
  return {failed == 0 && triples >= kVariationTriples && s < kVariationSeconds,
          fmt("%zu triples, %zu failed, worst excess %.2e, min order %.3f (%.1fs)", triples, failed, worst_excess,
              worst_order, s)};
}

// 3: flow to a stationary shape, rechecked with the other potential quadrature.
Outcome euler_lagrange(const FlowRun& r) {
  const StationarityReport& rep = r.result.report;
  QuadratureSpec other = r.quad;
  other.method = r.quad.method == QuadMethod::EdgePolar ? QuadMethod::Triangulated : QuadMethod::EdgePolar;
  const StationarityReport again = el_residual(r.result.region, r.kernel, r.gamma, kZero, other);
  const double diff = std::abs(again.sup_residual - rep.sup_residual);
  return {rep.converged && rep.sup_residual < kResidualTol && diff <= kRecheckTol && r.seconds < kFlowSeconds,
          fmt("%d steps, sup residual %.3e, %s recheck diff %.2e (%.1fs)", rep.steps, rep.sup_residual,
              to_string(other.method).c_str(), diff,
              r.seconds)};
}

// 4: the two multipliers agree at every converged shape.
Outcome lambda_consistency(const std::vector<const FlowRun*>& runs) {
  Outcome o{true, ""};
  for (const FlowRun* r : runs) {
    const StationarityReport& rep = r->result.report;
    const double d = std::abs(rep.lambda_Y - rep.lambda_ls);
    o.pass = o.pass && rep.converged && d < kLambdaTol;
    o.detail += fmt("%s |dlambda| %.2e; ", r->name.c_str(), d);
  }
  return o;
}

// 5: right-angle contact is stationary, a 60 degree contact is not.
Outcome weak_orthogonality() {
  const Kernel n = Kernel::neumann_disk(1.0);
  const Region diameter = fixtures::chord(0.0, 128);
  const VariationContext ctx(diameter, n, 0.0, kZero);
  double worst = 0.0;
  std::size_t count = 0;
  for (const TestField& X : bump_battery(diameter, 10, 5)) {
    check_tangential(X, diameter.domain());
    worst = std::max(worst, orthogonality_defect(ctx, X));
    ++count;
  }
  const Region tilted = fixtures::chord(oracle::kPi / 3.0, 128);
  const Vec2 end = tilted.component(0).vertices.back();
  const TestField Y = TestField::tangential_bump(end, 0.3, rot_left(end), 1.0);
  check_tangential(Y, tilted.domain());
  double magnitude = 0.0;
  for (int i = 0; i <= 200; ++i)
    for (int j = 0; j <= 200; ++j) {
      const Vec2 p = end + Vec2{-0.3 + 0.003 * i, -0.3 + 0.003 * j};
      if (norm(p) <= 1.0) magnitude = std::max(magnitude, norm(Y(p)));
    }
  const double defect = orthogonality_defect(VariationContext(tilted, n, 0.0, kZero), Y);
  return {count == 10 && worst < kDiameterTol && defect > kContactFraction * magnitude,
          fmt("diameter max defect %.2e over %zu fields; 60 deg defect %.4f vs field magnitude %.4f", worst, count,
              defect, magnitude)};
}

// 6: the double sector is stationary for length but violates the density bound at the origin.
Outcome cross_fixture() {
  const Kernel n = Kernel::neumann_disk(1.0);
  const Region x = fixtures::cross(512);
  const VariationContext ctx(x, n, 0.0, kZero);
  std::vector<TestField> fields;
  for (int k = 0; k < 5; ++k) {
    const double a = 2.0 * oracle::kPi * k / 5.0 + 0.1;
    fields.push_back(TestField::bump({0.0, 0.0}, 0.3 + 0.1 * k, {std::cos(a), std::sin(a)}));
  }
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (fields.size() < 20) {
    const double r = 0.05 + 0.3 * u(rng);
    const double c = (1.0 - r) * 0.98 * std::sqrt(u(rng)), t = 2.0 * oracle::kPi * u(rng), d = 2.0 * oracle::kPi * u(rng);
    fields.push_back(TestField::bump({c * std::cos(t), c * std::sin(t)}, r, {std::cos(d), std::sin(d)}));
  }
  double worst = 0.0;
  for (const TestField& X : fields) worst = std::max(worst, std::abs(ctx(X).perimeter));
  const double ratio = density_ratio(x, {0.0, 0.0}, 0.5);

  const Region coarse = fixtures::cross(64);
  const AllardProbe probe(coarse, n, 0.0, kZero);
  bool exact_set = true;
  for (double delta : {0.1, 0.5, 0.9}) {
    const AllardScan s = allard_scan(probe, 2.0, delta, 0.25, 12);
    for (const VertexScan& v : s.vertices) {
      const bool origin = norm(coarse.component(v.component).vertices[v.vertex]) == 0.0;
      exact_set = exact_set && v.passed != origin;
    }
    exact_set = exact_set && s.failures() == 2;
  }
  return {worst < kCrossVariationTol && ratio == 2.0 && exact_set,
          fmt("max |dP| %.2e over %zu fields; density at origin %.17g; allard fails only at the origin: %s", worst,
              fields.size(), ratio, exact_set ? "yes" : "no")};
}

// 7: the corrector solves its Neumann problem.
Outcome neumann_corrector() {
  const double R = 1.0;
  const Kernel n = Kernel::neumann_disk(R);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto in_disk = [&](double rmax) {
    const double r = rmax * std::sqrt(u(rng)), t = 2.0 * oracle::kPi * u(rng);
    return Vec2{r * std::cos(t), r * std::sin(t)};
  };
  double lap = 0.0, flux = 0.0;
  for (std::size_t i = 0; i < kPdeSamples; ++i) {
    const Vec2 y = in_disk(0.9 * R), x = in_disk(0.9 * R);
    const auto Rx = [&](Vec2 p) { return n.corrector(p, y); };
    lap = std::max(lap, std::abs(oracle::fd_laplacian(Rx, x, 1e-3) - 1.0 / (oracle::kPi * R * R)));
    const double t = 2.0 * oracle::kPi * u(rng);
    const Vec2 nu{std::cos(t), std::sin(t)};
    const auto G = [&](Vec2 p) { return n.eval(p, y); };
    flux = std::max(flux, std::abs(oracle::fd_inward_derivative(G, nu * R, nu, 1e-4)));
  }
  return {lap <= kLaplacianTol && flux <= kFluxTol,
          fmt("max |lap R - 1/(pi R^2)| %.2e, max |dG/dnu| %.2e over %zu points each", lap, flux, kPdeSamples)};
}

// 8: area and energy bookkeeping of every flow run.
Outcome conservation(const std::vector<const FlowRun*>& runs) {
  Outcome o{true, ""};
  for (const FlowRun* r : runs) {
    const StationarityReport& rep = r->result.report;
    o.pass = o.pass && rep.max_area_drift <= kAreaDriftTol && rep.max_energy_increase <= kDescentTol &&
             rep.failure.empty();
    o.detail += fmt("%s drift %.1e, rel increase %.1e; ", r->name.c_str(), rep.max_area_drift,
                    rep.max_energy_increase);
  }
  return o;
}

// 9: length-only flow of an ellipse ends at a circle.
Outcome isoperimetric(const FlowRun& r) {
  const double P = perimeter(r.result.region), A = area(r.result.region);
  const double q = P * P / (4.0 * oracle::kPi * A) - 1.0;
  return {r.result.report.converged && q < kIsoperimetricTol, fmt("P^2/(4 pi A) - 1 = %.3e after %d steps", q,
                                                                  r.result.report.steps)};
}

// 10: identical seeds give identical reports.
Outcome determinism() {
  using namespace okflow::cli;
  Outcome o{true, ""};
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"variation-check", "fixture = perturbed_circle\nfixture.N = 128\ngamma = 0.5\nvariation.fields = 8\n"},
      {"allard-scan", "fixture = cross\nfixture.N = 64\nkernel = neumann-disk:1\n"},
  };
  for (const auto& [scenario, text] : runs) {
    ScenarioConfig c = parse_config(text);
    c.scenario = scenario;
    c.seed = 42;
    const Artifacts a = run_scenario(c), b = run_scenario(c);
    const bool same = a.report_json == b.report_json && a.curve_csv == b.curve_csv;
    o.pass = o.pass && same && !a.report_json.empty();
    o.detail += fmt("%s: %s (%zu bytes, exit %d); ", scenario.c_str(), same ? "identical" : "DIFFERENT",
                    a.report_json.size(), a.exit_code);
  }
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;

  FlowConfig el;
  const FlowRun perturbed = run_flow("perturbed_circle", fixtures::perturbed_circle(0.1, 3, 256), Kernel::log(),
                                     0.2, el);
  FlowConfig iso;
  iso.tol = 1e-4;
  const FlowRun ellipse =
      run_flow("ellipse", fixtures::ellipse(std::sqrt(2.0), 1.0 / std::sqrt(2.0), 256), Kernel::log(), 0.0, iso);
  const std::vector<const FlowRun*> runs = {&perturbed, &ellipse};

  criteria.emplace_back("potential oracle", potential_oracle);
  criteria.emplace_back("first-variation consistency", variation_consistency);
  criteria.emplace_back("Euler-Lagrange self-consistency", [&] { return euler_lagrange(perturbed); });
  criteria.emplace_back("multiplier consistency", [&] { return lambda_consistency(runs); });
  criteria.emplace_back("weak orthogonality", weak_orthogonality);
  criteria.emplace_back("cross singular fixture", cross_fixture);
  criteria.emplace_back("Neumann corrector", neumann_corrector);
  criteria.emplace_back("conservation and descent", [&] { return conservation(runs); });
  criteria.emplace_back("isoperimetric sanity", [&] { return isoperimetric(ellipse); });
  criteria.emplace_back("determinism", determinism);

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures;
}
