#include <doctest.h>

#include <cmath>

#include "okflow/diagnostics.hpp"
#include "okflow/errors.hpp"
#include "okflow/fixtures.hpp"
#include "oracles.hpp"

using namespace okflow;

namespace {
const ExternalPotential kZero = ExternalPotential::zero();

// Arc of the unit circle inside a ball of radius rho centred on it.
double circle_density(double rho) { return 4.0 * std::asin(0.5 * rho) / (kAlpha1 * rho); }
}  // namespace

TEST_CASE("density ratios of the basic fixtures") {
  CHECK(density_ratio(fixtures::chord(0.0, 64), {0.0, 0.0}, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(density_ratio(fixtures::cross(64), {0.0, 0.0}, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(density_ratio(fixtures::cross(64), {0.0, 0.0}, 1e-3) == doctest::Approx(2.0).epsilon(1e-14));
  const Region c = fixtures::circle(1.0, 8192);
  const Vec2 x = c.component(0).vertices[0];
  double prev = 0.0;
  for (double rho : {0.05, 0.1, 0.2, 0.4, 0.8}) {
    const double d = density_ratio(c, x, rho);
    CHECK(d == doctest::Approx(circle_density(rho)).epsilon(1e-6));
    CHECK(d > prev);
    prev = d;
  }
}

TEST_CASE("ball length is invariant under rigid motions") {
  const Region e = fixtures::perturbed_circle(0.2, 3, 200);
  const double ang = 0.7;
  const Vec2 shift{1.5, -2.0};
  auto move = [&](Vec2 p) {
    return Vec2{std::cos(ang) * p.x - std::sin(ang) * p.y, std::sin(ang) * p.x + std::cos(ang) * p.y} + shift;
  };
  std::vector<Vec2> moved;
  for (Vec2 p : e.component(0).vertices) moved.push_back(move(p));
  const Region f = e.with_vertices({moved});
  for (Vec2 x : {Vec2{1.0, 0.1}, Vec2{0.0, 0.0}, Vec2{-0.9, 0.5}})
    for (double rho : {0.1, 0.5, 3.0})
      CHECK(boundary_length_in_ball(f, move(x), rho) ==
            doctest::Approx(boundary_length_in_ball(e, x, rho)).epsilon(1e-12));
  CHECK(boundary_length_in_ball(e, {0.0, 0.0}, 10.0) == doctest::Approx(perimeter(e)).epsilon(1e-14));
}

TEST_CASE("density ratio errors") {
  const Region h = fixtures::chord(0.0, 64);
  CHECK_THROWS_AS(density_ratio(h, {0.8, 0.0}, 0.5), DomainError);
  CHECK_THROWS_AS(density_ratio(h, {0.0, 0.0}, 0.0), ConfigError);
  CHECK_NOTHROW(density_ratio(fixtures::circle(1.0, 64), {50.0, 0.0}, 5.0));
}

TEST_CASE("Allard check on a circle and on the cross") {
  const Region c = fixtures::circle(1.0, 512);
  const AllardProbe probe(c, Kernel::log(), 0.0, kZero);
  CHECK(probe.c0() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(probe.safe_radius(2.0, 0.1) == doctest::Approx(0.05).epsilon(1e-3));
  // |H| = 1 on the unit circle, so the curvature line needs rho below the safe radius.
  CHECK_FALSE(probe.check(c.component(0).vertices[3], 0.1, 2.0, 0.1).curvature_pass);
  const AllardReport r = probe.check(c.component(0).vertices[3], 0.04, 2.0, 0.1);
  CHECK(r.support_pass);
  CHECK(r.density_pass);
  CHECK(r.curvature_pass);
  CHECK(r.passed());
  CHECK_FALSE(probe.check({0.5, 0.0}, 0.1, 2.0, 0.1).support_pass);
  CHECK_THROWS_AS(probe.check({1.0, 0.0}, 0.1, 1.0, 0.1), ConfigError);
  CHECK_THROWS_AS(probe.check({1.0, 0.0}, 0.1, 2.0, 0.0), ConfigError);

  const Region x = fixtures::cross(64);
  const AllardReport o = allard_check(x, Kernel::neumann_disk(1.0), 0.0, kZero, {0.0, 0.0}, 0.1, 2.0, 0.1);
  CHECK(o.support_pass);
  CHECK_FALSE(o.density_pass);
  CHECK(o.density_ratio == doctest::Approx(2.0));
}

TEST_CASE("safe radius guarantees the curvature line") {
  const Region e = fixtures::perturbed_circle(0.1, 3, 256);
  const AllardProbe probe(e, Kernel::log(), 0.5, kZero);
  for (double p : {1.5, 2.0, 4.0}) {
    const double rho = probe.safe_radius(p, 0.2);
    CHECK(rho > 0.0);
    for (std::size_t i = 0; i < 256; i += 17)
      CHECK(probe.check(e.component(0).vertices[i], 0.999 * rho, p, 0.2).curvature_pass);
  }
}

TEST_CASE("cross scan fails exactly at the junction") {
  const Region x = fixtures::cross(64);
  const AllardProbe probe(x, Kernel::neumann_disk(1.0), 0.0, kZero);
  CHECK(probe.c0() < 1e-9);
  const AllardScan s = allard_scan(probe, 2.0, 0.1, 0.25, 12);
  CHECK(s.radii.size() == 12);
  CHECK(s.failures() == 2);
  for (const VertexScan& v : s.vertices) {
    const Vec2 p = x.component(v.component).vertices[v.vertex];
    CHECK(v.passed == (norm(p) > 0.0));
  }
  const AllardScan h = allard_scan(AllardProbe(fixtures::chord(0.0, 64), Kernel::neumann_disk(1.0), 0.0, kZero),
                                   2.0, 0.1, 0.25, 8);
  CHECK(h.failures() == 0);
  CHECK(h.vertices.size() == 63);
}
