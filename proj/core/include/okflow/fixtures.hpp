#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "okflow/geometry.hpp"

namespace okflow::fixtures {

// Double sector {x1 x2 > 0} in the unit disk: two chords bent at the origin,
// each with `per_arm` edges on each of its two arms.
Region cross(std::size_t per_arm = 512);
// Horizontal chord of the unit disk from (-cos a, sin a) to (cos a, sin a);
// the set is the part of the disk above it. It meets the radius at angle `a`.
Region chord(double angle, std::size_t n = 128);
Region circle(double radius, std::size_t n, const Domain& domain = Domain::plane(), Vec2 center = {});
// r(theta) = radius (1 + amplitude cos(mode theta)) sampled uniformly in theta.
Region perturbed_circle(double amplitude, int mode, std::size_t n, double radius = 1.0,
                        const Domain& domain = Domain::plane());
// Vertices equally spaced in arclength.
Region ellipse(double a, double b, std::size_t n, const Domain& domain = Domain::plane());
// Two circles of the given radius whose centres are `separation` apart on the x axis.
Region two_disks(double separation, double radius = 0.5, std::size_t n = 128,
                 const Domain& domain = Domain::plane());

struct FixtureSpec {
  std::string name = "circle";
  double R = 1.0;  // circle radius, or base radius of the perturbed circle and two_disks
  std::size_t N = 256;
  double a = 1.4142135623730951;
  double b = 0.7071067811865476;
  double amplitude = 0.1;
  int mode = 3;
  double separation = 1.5;
  double angle = 0.0;
  std::string path;  // curve CSV for the "file" fixture
  // Unset: unit disk for chord and cross, the plane otherwise.
  std::optional<Domain> domain;
};

const std::vector<std::string>& names();
// Throws ConfigError for unknown names or invalid parameters.
Region make(const FixtureSpec& spec);

}  // namespace okflow::fixtures
