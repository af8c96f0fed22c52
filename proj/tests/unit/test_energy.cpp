#include <doctest.h>

#include <cmath>

#include "okflow/energy.hpp"
#include "okflow/errors.hpp"
#include "okflow/fixtures.hpp"
#include "oracles.hpp"

using namespace okflow;

namespace {
const QuadratureSpec kPolar = QuadratureSpec::edge_polar();
const ExternalPotential kZero = ExternalPotential::zero();

Region scaled(const Region& r, double s) {
  std::vector<std::vector<Vec2>> v;
  for (const PlanarCurve& c : r.components()) {
    v.emplace_back();
    for (Vec2 p : c.vertices) v.back().push_back(p * s);
  }
  return r.with_vertices(v);
}
}  // namespace

TEST_CASE("log self-energy of the unit disk is pi / 8") {
  const Region disk = fixtures::circle(1.0, 1024);
  const double ref = oracle::kPi / 8.0;
  CHECK(energy(disk, Kernel::log(), 1.0, kZero, kPolar).nonlocal == doctest::Approx(ref).epsilon(1e-9));
  CHECK(energy(disk, Kernel::log(), 1.0, kZero).nonlocal == doctest::Approx(ref).epsilon(1e-7));
}

TEST_CASE("Riesz self-energy of the unit disk against the polar oracle") {
  const double ref = oracle::disk_self_energy([](double r) { return oracle::riesz_moment(r, 0.5); });
  const double e = energy(fixtures::circle(1.0, 1024), Kernel::riesz(0.5), 1.0, kZero, kPolar).nonlocal;
  CHECK(e == doctest::Approx(ref).epsilon(2e-5));
}

TEST_CASE("scaling laws of the nonlocal term hold exactly for polygons") {
  const Region e = fixtures::perturbed_circle(0.2, 3, 96);
  const double s = 1.7, A = area(e);
  const double r0 = energy(e, Kernel::riesz(0.4), 1.0, kZero, kPolar).nonlocal;
  const double r1 = energy(scaled(e, s), Kernel::riesz(0.4), 1.0, kZero, kPolar).nonlocal;
  CHECK(r1 == doctest::Approx(std::pow(s, 3.6) * r0).epsilon(1e-10));
  const double l0 = energy(e, Kernel::log(), 1.0, kZero, kPolar).nonlocal;
  const double l1 = energy(scaled(e, s), Kernel::log(), 1.0, kZero, kPolar).nonlocal;
  CHECK(l1 == doctest::Approx(std::pow(s, 4) * (l0 - std::log(s) * A * A / (2 * oracle::kPi))).epsilon(1e-10));
}

TEST_CASE("external energies") {
  const Region disk = fixtures::circle(1.0, 1024);
  CHECK(std::abs(energy(disk, Kernel::log(), 0.0, ExternalPotential::linear({1.0, -2.0})).external) < 1e-12);
  const double e = energy(disk, Kernel::log(), 0.0, ExternalPotential::radial(3.0, 2.0)).external;
  CHECK(e == doctest::Approx(2 * oracle::kPi * 3.0 / 4.0).epsilon(5e-5));
  CHECK(energy(disk, Kernel::log(), 0.0, ExternalPotential::constant(2.0)).external ==
        doctest::Approx(2.0 * area(disk)).epsilon(1e-12));
}

TEST_CASE("breakdown and layout reuse") {
  const Region e = fixtures::ellipse(1.2, 0.8, 128);
  const auto f = ExternalPotential::linear({0.3, 0.1});
  const EnergyBreakdown a = energy(e, Kernel::riesz(0.5), 0.7, f, kPolar);
  CHECK(a.total == doctest::Approx(a.perimeter + 0.7 * a.nonlocal + a.external).epsilon(1e-15));
  CHECK(a.perimeter == doctest::Approx(perimeter(e)));
  const Triangulation layout = triangulate(e);
  const EnergyBreakdown b = energy(e, Kernel::riesz(0.5), 0.7, f, kPolar, &layout);
  CHECK(b.total == doctest::Approx(a.total).epsilon(1e-14));
  CHECK_THROWS_AS(energy(e, Kernel::log(), -1.0, kZero), ConfigError);
}

TEST_CASE("Neumann energy on a disk domain") {
  const Region e = fixtures::circle(0.5, 256, Domain::disk(1.0));
  const double a = energy(e, Kernel::neumann_disk(1.0), 1.0, kZero, kPolar).nonlocal;
  const double b = energy(e, Kernel::neumann_disk(1.0), 1.0, kZero).nonlocal;
  CHECK(a == doctest::Approx(b).epsilon(1e-6));
  CHECK_THROWS_AS(energy(fixtures::circle(0.5, 64), Kernel::neumann_disk(1.0), 1.0, kZero), ConfigError);
}
