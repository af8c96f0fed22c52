#include "okflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "okflow/errors.hpp"

namespace okflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

int orient(Vec2 a, Vec2 b, Vec2 c) { return sign_of(cross(b - a, c - a)); }

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

enum class Contact { None, SharedVertex, Bad };

// Contact between closed segments pq and rs.
Contact segment_contact(Vec2 p, Vec2 q, Vec2 r, Vec2 s) {
  int shared = 0;
  Vec2 common, other_a, other_b;
  if (p == r) { ++shared; common = p; other_a = q; other_b = s; }
  if (p == s) { ++shared; common = p; other_a = q; other_b = r; }
  if (q == r) { ++shared; common = q; other_a = p; other_b = s; }
  if (q == s) { ++shared; common = q; other_a = p; other_b = r; }
  if (shared > 1) return Contact::Bad;  // duplicate edge
  if (shared == 1) {
    // Collinear overlap along the same ray is degenerate; anything else is a touch.
    if (orient(common, other_a, other_b) == 0 && dot(other_a - common, other_b - common) > 0.0)
      return Contact::Bad;
    return Contact::SharedVertex;
  }
  const int o1 = orient(p, q, r), o2 = orient(p, q, s);
  const int o3 = orient(r, s, p), o4 = orient(r, s, q);
  if (o1 * o2 < 0 && o3 * o4 < 0) return Contact::Bad;
  if (o1 == 0 && on_segment(p, q, r)) return Contact::Bad;
  if (o2 == 0 && on_segment(p, q, s)) return Contact::Bad;
  if (o3 == 0 && on_segment(r, s, p)) return Contact::Bad;
  if (o4 == 0 && on_segment(r, s, q)) return Contact::Bad;
  return Contact::None;
}

struct EdgeRef {
  std::size_t comp;
  std::size_t idx;
  Vec2 a, b;
  double xmin, xmax, ymin, ymax;
};

bool adjacent(const PlanarCurve& c, std::size_t i, std::size_t j) {
  const std::size_t m = c.edge_count();
  if (i > j) std::swap(i, j);
  if (j == i + 1) return true;
  return c.closed && i == 0 && j == m - 1;
}

// Returns false on the first illegal contact.
bool edges_simple(const std::vector<PlanarCurve>& comps) {
  std::vector<EdgeRef> edges;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t e = 0; e < comps[c].edge_count(); ++e) {
      Vec2 a = comps[c].edge_start(e), b = comps[c].edge_end(e);
      edges.push_back({c, e, a, b, std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y),
                       std::max(a.y, b.y)});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const EdgeRef& l, const EdgeRef& r) { return l.xmin < r.xmin; });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const EdgeRef& ei = edges[i];
    for (std::size_t j = i + 1; j < edges.size() && edges[j].xmin <= ei.xmax; ++j) {
      const EdgeRef& ej = edges[j];
      if (ej.ymin > ei.ymax || ej.ymax < ei.ymin) continue;
      Contact k = segment_contact(ei.a, ei.b, ej.a, ej.b);
      if (k == Contact::None) continue;
      if (k == Contact::Bad) return false;
      if (ei.comp == ej.comp) {
        const PlanarCurve& c = comps[ei.comp];
        if (!adjacent(c, ei.idx, ej.idx)) return false;
        // A two-edge closed curve is rejected earlier; a closed triangle's
        // edges are all mutually adjacent.
      }
    }
  }
  return true;
}

void check_vertices(const PlanarCurve& c) {
  const std::size_t n = c.size();
  if (c.closed && n < 3) throw ValidationError("closed curve needs at least 3 vertices");
  if (!c.closed && n < 2) throw ValidationError("open curve needs at least 2 vertices");
  for (Vec2 v : c.vertices)
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw ValidationError("non-finite vertex");
  const double tol = 1e-12 * bbox_diameter(c);
  for (std::size_t e = 0; e < c.edge_count(); ++e)
    if (norm(c.edge_end(e) - c.edge_start(e)) <= tol)
      throw ValidationError("coincident consecutive vertices at index " + std::to_string(e));
}

double polar_angle(Vec2 p) {
  double a = std::atan2(p.y, p.x);
  return a < 0.0 ? a + kTwoPi : a;
}

double ccw_span(double from, double to) {
  double s = std::fmod(to - from, kTwoPi);
  if (s < 0.0) s += kTwoPi;
  return s;
}

}  // namespace

Domain Domain::disk(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ValidationError("disk radius must be positive");
  return Domain(Kind::Disk, radius);
}

double Domain::measure() const {
  return is_disk() ? std::numbers::pi * radius_ * radius_ : std::numeric_limits<double>::infinity();
}

bool Domain::contains(Vec2 p, double rel_tol) const {
  if (!is_disk()) return true;
  return norm(p) <= radius_ * (1.0 + rel_tol);
}

Vec2 Domain::normal(Vec2 p) const { return normalized(p); }

Vec2 Domain::project_to_boundary(Vec2 p) const { return normalized(p) * radius_; }

double length(const PlanarCurve& c) {
  double L = 0.0;
  for (std::size_t e = 0; e < c.edge_count(); ++e) L += norm(c.edge_end(e) - c.edge_start(e));
  return L;
}

double signed_area(const PlanarCurve& c) {
  double s = 0.0;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) s += cross(c.vertices[i], c.vertices[(i + 1) % n]);
  return 0.5 * s;
}

double bbox_diameter(const PlanarCurve& c) {
  if (c.vertices.empty()) return 0.0;
  Vec2 lo = c.vertices[0], hi = c.vertices[0];
  for (Vec2 v : c.vertices) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y)};
  }
  return norm(hi - lo);
}

PlanarCurve reversed(const PlanarCurve& c) {
  PlanarCurve r = c;
  std::reverse(r.vertices.begin(), r.vertices.end());
  return r;
}

bool is_simple(const PlanarCurve& c) { return edges_simple({c}); }

void validate_curve(const PlanarCurve& c) {
  check_vertices(c);
  if (!is_simple(c)) throw ValidationError("curve is not simple");
}

VertexGeometry vertex_geometry(const PlanarCurve& c) {
  check_vertices(c);
  const std::size_t n = c.size();
  VertexGeometry g;
  g.normal.resize(n);
  g.curvature.assign(n, 0.0);
  g.weight.resize(n);

  const std::size_t m = c.edge_count();
  std::vector<Vec2> t(m);
  std::vector<double> l(m);
  for (std::size_t e = 0; e < m; ++e) {
    Vec2 d = c.edge_end(e) - c.edge_start(e);
    l[e] = norm(d);
    t[e] = d / l[e];
  }
  auto interior = [&](std::size_t i, std::size_t ep, std::size_t en) {
    Vec2 bis = t[ep] + t[en];
    double bn = norm(bis);
    if (bn < 1e-14) throw ValidationError("cusp at vertex " + std::to_string(i));
    double theta = std::atan2(cross(t[ep], t[en]), dot(t[ep], t[en]));
    g.weight[i] = 0.5 * (l[ep] + l[en]);
    g.curvature[i] = 2.0 * std::sin(0.5 * theta) / g.weight[i];
    g.normal[i] = rot_right(bis / bn);
  };
  if (c.closed) {
    for (std::size_t i = 0; i < n; ++i) interior(i, (i + n - 1) % n, i);
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) interior(i, i - 1, i);
    g.weight[0] = 0.5 * l[0];
    g.weight[n - 1] = 0.5 * l[m - 1];
    g.normal[0] = rot_right(t[0]);
    g.normal[n - 1] = rot_right(t[m - 1]);
    if (n >= 3) {
      g.curvature[0] = g.curvature[1];
      g.curvature[n - 1] = g.curvature[n - 2];
    }
  }
  return g;
}

PlanarCurve resample(const PlanarCurve& c, std::size_t n) {
  if (c.closed && n < 3) throw ValidationError("resample: closed curve needs n >= 3");
  if (!c.closed && n < 2) throw ValidationError("resample: open curve needs n >= 2");
  check_vertices(c);

  const std::size_t m = c.edge_count();
  std::vector<double> cum(m + 1, 0.0);
  for (std::size_t e = 0; e < m; ++e) cum[e + 1] = cum[e] + norm(c.edge_end(e) - c.edge_start(e));
  const double L = cum[m];

  auto point_at = [&](double s) -> Vec2 {
    if (s <= 0.0) return c.vertices[0];
    if (s >= L) return c.closed ? c.vertices[0] : c.vertices.back();
    std::size_t e = std::upper_bound(cum.begin(), cum.end(), s) - cum.begin() - 1;
    e = std::min(e, m - 1);
    double u = (s - cum[e]) / (cum[e + 1] - cum[e]);
    if (u == 0.0) return c.edge_start(e);
    return c.edge_start(e) + (c.edge_end(e) - c.edge_start(e)) * u;
  };

  const std::size_t gaps = c.closed ? n : n - 1;
  std::vector<double> gap(gaps, L / static_cast<double>(gaps));
  std::vector<Vec2> pts(n);
  std::vector<double> chord(gaps);

  auto place = [&] {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      pts[k] = point_at(s);
      if (k < gaps) s += gap[k];
    }
    if (!c.closed) pts[n - 1] = c.vertices.back();
    for (std::size_t k = 0; k < gaps; ++k) chord[k] = norm(pts[(k + 1) % n] - pts[k]);
  };

  place();
  for (int iter = 0; iter < 500; ++iter) {
    auto [lo, hi] = std::minmax_element(chord.begin(), chord.end());
    if (*hi <= *lo * (1.0 + 1e-13)) break;
    double mean = 0.0;
    for (double v : chord) mean += v;
    mean /= static_cast<double>(gaps);
    double total = 0.0;
    for (std::size_t k = 0; k < gaps; ++k) {
      gap[k] *= mean / chord[k];
      total += gap[k];
    }
    for (double& v : gap) v *= L / total;
    place();
  }
  return PlanarCurve{std::move(pts), c.closed};
}

void validate_region_curves(const std::vector<PlanarCurve>& comps) {
  for (const PlanarCurve& c : comps) check_vertices(c);
  if (!edges_simple(comps)) throw ValidationError("region boundary is not simple");
}

bool is_simple(const Region& r) { return edges_simple(r.components()); }

Region::Region(const Domain& domain, std::vector<PlanarCurve> components,
               std::vector<ChordSide> sides)
    : domain_(domain), components_(std::move(components)) {
  if (components_.empty()) throw ValidationError("region has no components");
  if (sides.empty()) sides.assign(components_.size(), ChordSide::Left);
  if (sides.size() != components_.size())
    throw ValidationError("side flags must match the component count");

  for (std::size_t i = 0; i < components_.size(); ++i) {
    PlanarCurve& c = components_[i];
    if (c.closed) continue;
    if (!domain_.is_disk()) throw ValidationError("open chords require a disk domain");
    if (sides[i] == ChordSide::Right) c = reversed(c);
  }
  validate_region_curves(components_);

  const double R = domain_.radius();
  for (const PlanarCurve& c : components_) {
    for (Vec2 v : c.vertices)
      if (!domain_.contains(v)) throw ValidationError("vertex outside the domain");
    if (!c.closed) {
      for (Vec2 v : {c.vertices.front(), c.vertices.back()})
        if (std::abs(norm(v) - R) > 1e-9 * R)
          throw ValidationError("chord endpoint is not on the domain boundary");
    }
  }
  build_loops();
  const double A = area(*this);
  if (!(A > 0.0)) throw ValidationError("region has non-positive area; check orientation");
  if (domain_.is_disk() && !(A < domain_.measure()))
    throw ValidationError("region fills the whole domain");
}

void Region::build_loops() {
  loops_.clear();
  std::vector<std::size_t> chords;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].closed) {
      loops_.push_back({true, i, {}});
    } else {
      chords.push_back(i);
    }
  }
  if (chords.empty()) return;

  const std::size_t k = chords.size();
  std::vector<double> a_start(k), a_end(k);
  for (std::size_t j = 0; j < k; ++j) {
    a_start[j] = polar_angle(components_[chords[j]].vertices.front());
    a_end[j] = polar_angle(components_[chords[j]].vertices.back());
  }
  std::vector<std::size_t> next(k);
  std::vector<double> span(k);
  for (std::size_t j = 0; j < k; ++j) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t q = 0; q < k; ++q) {
      double s = ccw_span(a_end[j], a_start[q]);
      if (q == j && s == 0.0) s = kTwoPi;
      if (s < best) { best = s; arg = q; }
    }
    for (std::size_t q = 0; q < k; ++q) {
      if (q == j) continue;
      double s = ccw_span(a_end[j], a_end[q]);
      if (s > 0.0 && s < best)
        throw ValidationError("inconsistent chord side flags: chord ends interleave");
    }
    next[j] = arg;
    span[j] = best;
  }
  std::vector<bool> seen(k, false);
  for (std::size_t j0 = 0; j0 < k; ++j0) {
    if (seen[j0]) continue;
    BoundaryLoop loop;
    loop.closed_component = false;
    loop.component = chords[j0];
    std::size_t j = j0;
    while (!seen[j]) {
      seen[j] = true;
      loop.chords.push_back({chords[j], a_end[j], span[j]});
      j = next[j];
    }
    if (j != j0) throw ValidationError("inconsistent chord side flags: chords do not form loops");
    loops_.push_back(std::move(loop));
  }
}

bool Region::has_open_components() const {
  return std::any_of(components_.begin(), components_.end(),
                     [](const PlanarCurve& c) { return !c.closed; });
}

std::size_t Region::vertex_count() const {
  std::size_t n = 0;
  for (const PlanarCurve& c : components_) n += c.size();
  return n;
}

Region Region::with_vertices(const std::vector<std::vector<Vec2>>& verts) const {
  if (verts.size() != components_.size()) throw ValidationError("component count mismatch");
  std::vector<PlanarCurve> comps(components_.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (verts[i].size() != components_[i].size())
      throw ValidationError("vertex count mismatch in component " + std::to_string(i));
    comps[i] = PlanarCurve{verts[i], components_[i].closed};
  }
  return Region(domain_, std::move(comps));
}

double perimeter(const Region& r) {
  double P = 0.0;
  for (const PlanarCurve& c : r.components()) P += length(c);
  return P;
}

double area(const Region& r) {
  const double R = r.domain().radius();
  double A = 0.0;
  for (const BoundaryLoop& loop : r.loops()) {
    if (loop.closed_component) {
      A += signed_area(r.component(loop.component));
      continue;
    }
    for (const ChordLink& link : loop.chords) {
      const PlanarCurve& c = r.component(link.component);
      double s = 0.0;
      for (std::size_t i = 0; i + 1 < c.size(); ++i) s += cross(c.vertices[i], c.vertices[i + 1]);
      A += 0.5 * s + 0.5 * R * R * link.arc_span;
    }
  }
  return A;
}

std::vector<VertexGeometry> region_vertex_geometry(const Region& r) {
  std::vector<VertexGeometry> g;
  g.reserve(r.size());
  for (const PlanarCurve& c : r.components()) g.push_back(vertex_geometry(c));
  if (r.size() < 2) return g;

  auto less = [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); };
  std::map<Vec2, std::vector<std::pair<std::size_t, std::size_t>>, decltype(less)> at(less);
  for (std::size_t ci = 0; ci < r.size(); ++ci) {
    const PlanarCurve& c = r.component(ci);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c.closed && (i == 0 || i + 1 == c.size())) continue;
      at[c.vertices[i]].emplace_back(ci, i);
    }
  }
  for (const auto& [p, list] : at) {
    bool shared = false;
    for (const auto& e : list) shared |= e.first != list.front().first;
    if (!shared) continue;
    Vec2 net{};
    double w = 0.0;
    for (const auto& [ci, i] : list) {
      net = net + g[ci].normal[i] * (g[ci].weight[i] * g[ci].curvature[i]);
      w += g[ci].weight[i];
    }
    for (const auto& [ci, i] : list) g[ci].curvature[i] = dot(net, g[ci].normal[i]) / w;
  }
  return g;
}

}  // namespace okflow
