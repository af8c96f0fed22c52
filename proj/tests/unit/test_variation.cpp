#include <doctest.h>

#include <cmath>

#include "okflow/errors.hpp"
#include "okflow/fixtures.hpp"
#include "okflow/energy.hpp"
#include "okflow/variation.hpp"
#include "oracles.hpp"

using namespace okflow;

namespace {
const ExternalPotential kZero = ExternalPotential::zero();

// Derivative of the discrete length in the direction X, by central differences
// with an exact polygon length, so only the motion rule is shared.
double fd_length(const PlanarCurve& c, const TestField& X, double h) {
  std::vector<Vec2> p, m;
  for (Vec2 v : c.vertices) {
    p.push_back(v + X(v) * h);
    m.push_back(v - X(v) * h);
  }
  return (oracle::closed_length(p) - oracle::closed_length(m)) / (2.0 * h);
}
}  // namespace

TEST_CASE("rigid motions and dilation") {
  const Region e = fixtures::perturbed_circle(0.15, 3, 128);
  const VariationContext ctx(e, Kernel::riesz(0.5), 0.5, kZero);
  CHECK(std::abs(ctx(TestField::translation({1.0, -0.5})).perimeter) < 1e-12);
  CHECK(std::abs(ctx(TestField::rotation({0.2, 0.1})).perimeter) < 1e-12);
  CHECK(ctx(TestField::dilation()).perimeter == doctest::Approx(perimeter(e)).epsilon(1e-12));
  // Flux of the dilation field x is 2 |E|.
  CHECK(ctx.flux(TestField::dilation()) == doctest::Approx(2.0 * area(e)).epsilon(1e-12));
  CHECK(std::abs(ctx.flux(TestField::translation({1.0, 2.0}))) < 1e-12);
  // Translation leaves the nonlocal energy unchanged.
  CHECK(std::abs(ctx(TestField::translation({1.0, -0.5})).nonlocal) < 1e-6);
}

TEST_CASE("length variation matches a finite-difference oracle") {
  const Region e = fixtures::ellipse(1.3, 0.6, 96);
  const VariationContext ctx(e, Kernel::log(), 0.0, kZero);
  for (const TestField& X : bump_battery(e, 6, 7)) {
    const double fd = fd_length(e.component(0), X, 1e-5);
    CHECK(ctx(X).perimeter == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("bump battery is deterministic and compactly supported") {
  const Region e = fixtures::circle(1.0, 64);
  const auto a = bump_battery(e, 5, 11), b = bump_battery(e, 5, 11), c = bump_battery(e, 5, 12);
  REQUIRE(a.size() == 5);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec2 p{0.9, 0.3};
    CHECK(a[i](p) == b[i](p));
    differs |= !(a[i].support()->first == c[i].support()->first);
    REQUIRE(a[i].support().has_value());
    const auto [ctr, r] = *a[i].support();
    CHECK(r >= 0.2);
    CHECK(r <= 0.5);
    CHECK(a[i](ctr + Vec2{r * 1.001, 0.0}) == Vec2{});
  }
  CHECK(differs);
  const Region h = fixtures::chord(0.3, 64);
  for (const TestField& X : bump_battery(h, 8, 3)) CHECK_NOTHROW(check_tangential(X, h.domain()));
  CHECK_THROWS_AS(bump_battery(e, 3, 1, 0.0), ConfigError);
}

TEST_CASE("bump Jacobian matches finite differences") {
  const TestField X = TestField::bump({0.2, 0.1}, 0.6, normalized(Vec2{1.0, 2.0}));
  const TestField T = TestField::tangential_bump({0.7, 0.3}, 0.4, {0.0, 1.0}, 1.0);
  for (const TestField* F : {&X, &T}) {
    for (Vec2 x : {Vec2{0.3, 0.2}, Vec2{0.5, -0.1}, Vec2{0.8, 0.35}}) {
      const double h = 1e-6;
      const Mat2 J = F->jacobian(x);
      const Vec2 dx = ((*F)(x + Vec2{h, 0}) - (*F)(x - Vec2{h, 0})) / (2 * h);
      const Vec2 dy = ((*F)(x + Vec2{0, h}) - (*F)(x - Vec2{0, h})) / (2 * h);
      CHECK(J.a == doctest::Approx(dx.x).epsilon(1e-6));
      CHECK(J.c == doctest::Approx(dx.y).epsilon(1e-6));
      CHECK(J.b == doctest::Approx(dy.x).epsilon(1e-6));
      CHECK(J.d == doctest::Approx(dy.y).epsilon(1e-6));
    }
  }
  CHECK_NOTHROW(check_tangential(T, Domain::disk(1.0)));
  CHECK_THROWS_AS(check_tangential(TestField::translation({1.0, 0.0}), Domain::disk(1.0)), ConstraintError);
  CHECK_THROWS_AS(TestField::custom([](Vec2 x) { return x; }).jacobian({}), ConfigError);
}

TEST_CASE("analytic variation agrees with the energy difference quotient") {
  const Region e = fixtures::perturbed_circle(0.1, 3, 128);
  for (const Kernel& k : {Kernel::log(), Kernel::riesz(0.5)}) {
    for (const TestField& X : bump_battery(e, 3, 5)) {
      const ConsistencyCheck c = consistency_check(e, k, 0.7, ExternalPotential::linear({0.2, 0.0}), X, 0.02);
      CHECK(c.passed);
      CHECK(c.excess <= 1e-4);
    }
  }
}

TEST_CASE("multiplier of a circle") {
  const Region e = fixtures::circle(1.0, 256);
  const LagrangeMultiplier L = lagrange_multiplier(e, Kernel::log(), 0.0, kZero);
  // The flux of the unit-flux field is one, so lambda is the curvature of the circle.
  CHECK(L.volume.field.support().has_value());
  CHECK(L.lambda_ls == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(L.lambda_Y == doctest::Approx(1.0).epsilon(1e-3));
  const VariationContext ctx(e, Kernel::log(), 0.0, kZero);
  CHECK(ctx.flux(L.volume.field) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(normalize_volume_field(e, TestField::translation({1.0, 0.0})), NumericalError);
}

TEST_CASE("orthogonality on chords meeting the boundary at right angles") {
  const Region h = fixtures::chord(0.0, 128);
  const VariationContext ctx(h, Kernel::neumann_disk(1.0), 0.0, kZero);
  for (const TestField& X : bump_battery(h, 6, 9)) CHECK(orthogonality_defect(ctx, X) < 1e-6);
  // A 60 degree contact angle is not stationary: an endpoint bump sees it.
  const Region s = fixtures::chord(oracle::kPi / 3.0, 128);
  const VariationContext cs(s, Kernel::neumann_disk(1.0), 0.0, kZero);
  const TestField Y = TestField::tangential_bump(s.component(0).vertices.back(), 0.3, {0.0, 1.0}, 1.0);
  CHECK(orthogonality_defect(cs, Y) > 1e-3);
  CHECK_THROWS_AS(orthogonality_defect(fixtures::circle(0.5, 64), Kernel::log(), 0.0, kZero,
                                       TestField::dilation()),
                  ConfigError);
}

TEST_CASE("flow_region and input validation") {
  const Region e = fixtures::circle(1.0, 64);
  const Region moved = flow_region(e, TestField::translation({0.5, 0.0}), 2.0);
  CHECK(moved.component(0).vertices[0].x == doctest::Approx(e.component(0).vertices[0].x + 1.0));
  CHECK(area(flow_region(e, TestField::dilation(), 0.1)) == doctest::Approx(area(e) * std::exp(0.2)).epsilon(1e-6));
  CHECK_THROWS_AS(fd_variation(e, Kernel::log(), 1.0, kZero, TestField::dilation(), 0.0), ConfigError);
  CHECK_THROWS_AS(VariationContext(e, Kernel::log(), -1.0, kZero), ConfigError);
}
