#include <doctest.h>

#include <cmath>

#include "okflow/errors.hpp"
#include "okflow/fixtures.hpp"
#include "okflow/flow.hpp"
#include "oracles.hpp"

using namespace okflow;

namespace {
const ExternalPotential kZero = ExternalPotential::zero();
}

TEST_CASE("a circle is a fixed point of one step") {
  const Region e = fixtures::circle(1.0, 64);
  FlowConfig cfg;
  const StepResult s = step(e, Kernel::log(), 1.0, kZero, cfg, 1e-3);
  CHECK(s.max_displacement < 1e-10);
  CHECK(s.halvings == 0);
}

TEST_CASE("area restoration is exact") {
  const Region e = fixtures::perturbed_circle(0.2, 4, 128);
  for (double target : {0.9 * area(e), area(e), 1.2 * area(e)})
    CHECK(area(restore_area(e, target)) == doctest::Approx(target).epsilon(1e-13));
  CHECK_THROWS_AS(restore_area(fixtures::chord(0.0, 32), 1.0), ConfigError);
}

TEST_CASE("oversized steps are halved") {
  const Region e = fixtures::perturbed_circle(0.3, 5, 64);
  FlowConfig cfg;
  const StepResult s = step(e, Kernel::log(), 0.0, kZero, cfg, 1.0);
  CHECK(s.halvings > 0);
  CHECK(s.dt == doctest::Approx(std::ldexp(1.0, -s.halvings)));
  cfg.max_halvings = 0;
  CHECK_THROWS_AS(step(e, Kernel::log(), 0.0, kZero, cfg, 1.0), StepTooLarge);
}

TEST_CASE("flow keeps a threefold symmetry") {
  const std::size_t n = 96;
  const Region e = fixtures::perturbed_circle(0.1, 3, n);
  FlowConfig cfg;
  cfg.max_steps = 200;
  cfg.resample = 0;
  cfg.tol = 1e-12;
  const FlowResult r = run(e, Kernel::riesz(0.5), 0.3, kZero, cfg);
  const auto& v = r.region.component(0).vertices;
  const double c = std::cos(2 * oracle::kPi / 3), s = std::sin(2 * oracle::kPi / 3);
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 p = v[i], q = v[(i + n / 3) % n];
    err = std::max(err, norm(Vec2{c * p.x - s * p.y, s * p.x + c * p.y} - q));
  }
  CHECK(err < 1e-9);
}

TEST_CASE("flow decreases the energy and keeps the area") {
  const Region e = fixtures::perturbed_circle(0.05, 2, 64);
  FlowConfig cfg;
  cfg.max_steps = 5000;
  const FlowResult r = run(e, Kernel::log(), 0.0, kZero, cfg);
  CHECK(r.report.converged);
  CHECK(r.report.sup_residual < cfg.tol);
  CHECK(r.report.max_energy_increase <= 1e-12);
  CHECK(r.report.max_area_drift < 1e-12);
  CHECK(r.report.energy_history.size() == r.report.trace.size());
  CHECK(std::abs(area(r.region) - area(e)) < 1e-12);
  for (std::size_t i = 1; i < r.report.energy_history.size(); ++i)
    CHECK(r.report.energy_history[i] <= r.report.energy_history[i - 1] * (1 + 1e-12));
  CHECK(r.report.lambda_Y == doctest::Approx(r.report.lambda_ls).epsilon(1e-2));
}

TEST_CASE("stationarity residual") {
  const StationarityReport c = el_residual(fixtures::circle(1.0, 256), Kernel::log(), 1.0, kZero);
  CHECK(c.sup_residual < 1e-3);
  CHECK(c.lambda_ls == doctest::Approx(1.0 + 2.0 * 0.0).epsilon(1e-3));
  const StationarityReport el = el_residual(fixtures::ellipse(1.4142135623730951, 0.7071067811865476, 256),
                                            Kernel::log(), 0.0, kZero);
  CHECK(el.sup_residual > 0.5);
  CHECK(el.l2_residual <= el.sup_residual * std::sqrt(el.perimeter) * (1 + 1e-12));
}

TEST_CASE("flow configuration errors") {
  const Region e = fixtures::circle(1.0, 32);
  FlowConfig cfg;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = {};
  cfg.resample = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  CHECK_THROWS_AS(run(e, Kernel::log(), -0.1, kZero, FlowConfig{}), ConfigError);
  CHECK_THROWS_AS(run(fixtures::chord(0.0, 32), Kernel::neumann_disk(1.0), 0.0, kZero, FlowConfig{}),
                  ConfigError);
  CHECK_THROWS_AS(step(e, Kernel::log(), 0.0, kZero, FlowConfig{}, 0.0), ConfigError);
}
