#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "okflow/vec2.hpp"

namespace okflow {

class Domain {
 public:
  enum class Kind { FullPlane, Disk };

  static Domain plane() { return Domain(Kind::FullPlane, 0.0); }
  static Domain disk(double radius);

  Kind kind() const { return kind_; }
  bool is_disk() const { return kind_ == Kind::Disk; }
  double radius() const { return radius_; }

  // |Omega|; infinite for the plane.
  double measure() const;
  // Closed-domain membership with relative slack on the disk radius.
  bool contains(Vec2 p, double rel_tol = 1e-9) const;
  // Outward unit normal p / |p| (disk only).
  Vec2 normal(Vec2 p) const;
  Vec2 project_to_boundary(Vec2 p) const;

  bool operator==(const Domain&) const = default;

 private:
  Domain(Kind k, double r) : kind_(k), radius_(r) {}
  Kind kind_;
  double radius_;
};

// Which side of an open chord, relative to its stored vertex order, the set lies on.
enum class ChordSide { Left, Right };

struct PlanarCurve {
  std::vector<Vec2> vertices;
  bool closed = true;

  std::size_t size() const { return vertices.size(); }
  std::size_t edge_count() const { return closed ? vertices.size() : vertices.size() - 1; }
  Vec2 edge_start(std::size_t e) const { return vertices[e]; }
  Vec2 edge_end(std::size_t e) const { return vertices[(e + 1) % vertices.size()]; }
};

double length(const PlanarCurve& c);
// Shoelace area; open curves are closed by the straight segment between their endpoints.
double signed_area(const PlanarCurve& c);
double bbox_diameter(const PlanarCurve& c);
PlanarCurve reversed(const PlanarCurve& c);
// Throws ValidationError when the curve has too few vertices, coincident
// consecutive vertices, a cusp, or a self-intersection.
void validate_curve(const PlanarCurve& c);
bool is_simple(const PlanarCurve& c);

struct VertexGeometry {
  std::vector<Vec2> normal;
  std::vector<double> curvature;
  std::vector<double> weight;
};

// Bisector normals, H_i = 2 sin(theta_i / 2) / w_i, dual arclength weights.
VertexGeometry vertex_geometry(const PlanarCurve& c);

// Equal chord lengths along the input polyline; vertex 0 (and the last
// vertex of an open curve) stay fixed.
PlanarCurve resample(const PlanarCurve& c, std::size_t n);

// One piece of a region boundary loop: a chord followed by the arc of the
// disk boundary that runs counterclockwise from its end to the next chord.
struct ChordLink {
  std::size_t component;
  double arc_from;  // polar angle of the chord end
  double arc_span;  // counterclockwise span in (0, 2 pi]
};

struct BoundaryLoop {
  // Either a single closed component, or a cycle of chords joined by arcs.
  bool closed_component = true;
  std::size_t component = 0;
  std::vector<ChordLink> chords;
};

class Region {
 public:
  // Validates. Right-side chords are reversed so that the set always lies to
  // the left of every stored component.
  Region(const Domain& domain, std::vector<PlanarCurve> components,
         std::vector<ChordSide> sides = {});

  const Domain& domain() const { return domain_; }
  const std::vector<PlanarCurve>& components() const { return components_; }
  const PlanarCurve& component(std::size_t i) const { return components_[i]; }
  std::size_t size() const { return components_.size(); }
  const std::vector<BoundaryLoop>& loops() const { return loops_; }
  bool has_open_components() const;
  std::size_t vertex_count() const;

  // Same topology, new vertex positions (validated again).
  Region with_vertices(const std::vector<std::vector<Vec2>>& verts) const;

 private:
  Domain domain_;
  std::vector<PlanarCurve> components_;
  std::vector<BoundaryLoop> loops_;

  void build_loops();
};

// vertex_geometry per component, except at junctions where several
// components share a vertex: there H is the net curvature vector of all
// incident edges, projected on each component's normal and averaged over
// the junction weight.
std::vector<VertexGeometry> region_vertex_geometry(const Region& r);

double perimeter(const Region& r);
double area(const Region& r);
// Global simplicity across components: distinct components may only share vertices.
bool is_simple(const Region& r);
void validate_region_curves(const std::vector<PlanarCurve>& comps);

}  // namespace okflow
