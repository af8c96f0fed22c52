#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "okflow/geometry.hpp"
#include "okflow/vec2.hpp"

namespace okflow {

// Triangulation of the polygonal loops bounding E. Disk-boundary arcs are
// sampled with a fixed number of segments per arc. Each loop is triangulated
// on its own; triangles of clockwise loops (holes) carry orientation -1, so a
// signed sum over triangles integrates over E.
struct Triangulation {
  std::vector<Vec2> points;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  std::vector<double> orientation;
  // Boundary loops as point-index cycles with E on the left.
  std::vector<std::vector<std::uint32_t>> loops;

  double signed_area() const;
  Vec2 vertex(std::size_t t, int k) const { return points[triangles[t][k]]; }

  // Same connectivity and arc sampling, points moved to match `region`, which
  // must have the topology of the region this was built from.
  Triangulation with_points(const Region& region) const;

  struct Source {
    std::int32_t comp;  // >= 0: component vertex
    std::int32_t vert;
    std::int32_t link;  // arc sample: index into links
    std::int32_t k;
  };
  struct ArcLayout {
    std::uint32_t loop;
    std::uint32_t chord;
    std::int32_t segments;
  };
  std::vector<Source> sources;
  std::vector<ArcLayout> links;
  double radius = 0.0;
};

// `arc_segments` is the sample count of a full circle; each arc gets at
// least one segment.
Triangulation triangulate(const Region& region, int arc_segments = 1024);

// Ear clipping of a simple counterclockwise polygon, preferring short
// diagonals. Returns index triples into `poly`.
std::vector<std::array<std::uint32_t, 3>> ear_clip(const std::vector<Vec2>& poly);

}  // namespace okflow
