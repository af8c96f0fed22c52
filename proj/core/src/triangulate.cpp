#include "okflow/triangulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "okflow/errors.hpp"

namespace okflow {

namespace {

bool in_triangle(Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
  return cross(b - a, p - a) >= 0.0 && cross(c - b, p - b) >= 0.0 && cross(a - c, p - c) >= 0.0;
}

}  // namespace

std::vector<std::array<std::uint32_t, 3>> ear_clip(const std::vector<Vec2>& p) {
  const std::uint32_t n = static_cast<std::uint32_t>(p.size());
  if (n < 3) throw ValidationError("ear_clip: polygon needs at least 3 vertices");
  std::vector<std::array<std::uint32_t, 3>> out;
  out.reserve(n - 2);

  std::vector<std::uint32_t> prev(n), next(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    prev[i] = (i + n - 1) % n;
    next[i] = (i + 1) % n;
  }
  std::vector<bool> alive(n, true), reflex(n, false);
  std::vector<std::uint32_t> version(n, 0);
  std::vector<std::uint32_t> reflex_list;

  auto turn = [&](std::uint32_t i) { return cross(p[i] - p[prev[i]], p[next[i]] - p[i]); };
  auto is_ear = [&](std::uint32_t i) {
    if (reflex[i]) return false;
    const std::uint32_t a = prev[i], c = next[i];
    for (std::uint32_t j : reflex_list) {
      if (!alive[j] || !reflex[j] || j == a || j == i || j == c) continue;
      if (p[j] == p[a] || p[j] == p[i] || p[j] == p[c]) continue;
      if (in_triangle(p[j], p[a], p[i], p[c])) return false;
    }
    return true;
  };

  using Entry = std::pair<double, std::pair<std::uint32_t, std::uint32_t>>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> ears;
  auto consider = [&](std::uint32_t i) {
    ++version[i];
    if (is_ear(i)) ears.push({norm2(p[next[i]] - p[prev[i]]), {i, version[i]}});
  };

  for (std::uint32_t i = 0; i < n; ++i) {
    reflex[i] = turn(i) <= 0.0;
    if (reflex[i]) reflex_list.push_back(i);
  }
  for (std::uint32_t i = 0; i < n; ++i) consider(i);

  std::uint32_t remaining = n;
  std::uint32_t start = 0;
  while (remaining > 3) {
    std::uint32_t tip = n;
    while (!ears.empty()) {
      auto [d, iv] = ears.top();
      ears.pop();
      if (alive[iv.first] && version[iv.first] == iv.second) {
        tip = iv.first;
        break;
      }
    }
    if (tip == n) {
      // No cached ear: rescan everything, then fall back to the least bad convex vertex.
      for (std::uint32_t i = start, k = 0; k < remaining; i = next[i], ++k) consider(i);
      if (ears.empty()) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::uint32_t i = start, k = 0; k < remaining; i = next[i], ++k)
          if (turn(i) > best) { best = turn(i); tip = i; }
      } else {
        continue;
      }
    }
    const std::uint32_t a = prev[tip], c = next[tip];
    out.push_back({a, tip, c});
    alive[tip] = false;
    next[a] = c;
    prev[c] = a;
    start = a;
    --remaining;
    for (std::uint32_t v : {a, c}) {
      bool r = turn(v) <= 0.0;
      if (r && !reflex[v]) reflex_list.push_back(v);
      reflex[v] = r;
    }
    if (reflex_list.size() > 64 && reflex_list.size() > 2 * remaining) {
      std::erase_if(reflex_list, [&](std::uint32_t j) { return !alive[j] || !reflex[j]; });
    }
    consider(a);
    consider(c);
  }
  out.push_back({prev[start], start, next[start]});
  return out;
}

double Triangulation::signed_area() const {
  double s = 0.0;
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    Vec2 a = vertex(t, 0), b = vertex(t, 1), c = vertex(t, 2);
    s += orientation[t] * 0.5 * cross(b - a, c - a);
  }
  return s;
}

Triangulation triangulate(const Region& region, int arc_segments) {
  if (arc_segments < 1) throw ConfigError("arc sample count must be positive");
  Triangulation T;
  T.radius = region.domain().radius();
  const double R = T.radius;

  const auto& loops = region.loops();
  for (std::uint32_t li = 0; li < loops.size(); ++li) {
    const BoundaryLoop& loop = loops[li];
    std::vector<std::uint32_t> idx;
    auto push = [&](Vec2 v, Triangulation::Source s) {
      idx.push_back(static_cast<std::uint32_t>(T.points.size()));
      T.points.push_back(v);
      T.sources.push_back(s);
    };
    if (loop.closed_component) {
      const PlanarCurve& c = region.component(loop.component);
      for (std::size_t v = 0; v < c.size(); ++v)
        push(c.vertices[v], {static_cast<std::int32_t>(loop.component), static_cast<std::int32_t>(v), -1, -1});
    } else {
      for (std::uint32_t ci = 0; ci < loop.chords.size(); ++ci) {
        const ChordLink& link = loop.chords[ci];
        const PlanarCurve& c = region.component(link.component);
        for (std::size_t v = 0; v < c.size(); ++v)
          push(c.vertices[v], {static_cast<std::int32_t>(link.component), static_cast<std::int32_t>(v), -1, -1});
        const double frac = link.arc_span / (2.0 * std::numbers::pi);
        const int m = std::max(1, static_cast<int>(std::ceil(arc_segments * frac - 1e-9)));
        const auto lid = static_cast<std::int32_t>(T.links.size());
        T.links.push_back({li, ci, m});
        for (int k = 1; k < m; ++k) {
          double ang = link.arc_from + link.arc_span * k / m;
          push({R * std::cos(ang), R * std::sin(ang)}, {-1, -1, lid, k});
        }
      }
    }

    std::vector<Vec2> poly(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) poly[i] = T.points[idx[i]];
    double a2 = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) a2 += cross(poly[i], poly[(i + 1) % poly.size()]);

    const bool ccw = a2 > 0.0;
    if (!ccw) std::reverse(poly.begin(), poly.end());
    auto tris = ear_clip(poly);
    const std::size_t m = idx.size();
    for (auto& t : tris) {
      std::array<std::uint32_t, 3> g;
      for (int k = 0; k < 3; ++k) g[k] = idx[ccw ? t[k] : m - 1 - t[k]];
      T.triangles.push_back(g);
      T.orientation.push_back(ccw ? 1.0 : -1.0);
    }
    T.loops.push_back(std::move(idx));
  }
  return T;
}

Triangulation Triangulation::with_points(const Region& region) const {
  Triangulation T = *this;
  const auto& loops = region.loops();
  const double R = region.domain().radius();
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const Source& s = sources[i];
    if (s.comp >= 0) {
      const auto& verts = region.component(static_cast<std::size_t>(s.comp)).vertices;
      if (static_cast<std::size_t>(s.vert) >= verts.size())
        throw ValidationError("triangulation layout does not match region");
      T.points[i] = verts[static_cast<std::size_t>(s.vert)];
    } else {
      const ArcLayout& L = links[static_cast<std::size_t>(s.link)];
      if (L.loop >= loops.size() || L.chord >= loops[L.loop].chords.size())
        throw ValidationError("triangulation layout does not match region");
      const ChordLink& link = loops[L.loop].chords[L.chord];
      double ang = link.arc_from + link.arc_span * s.k / L.segments;
      T.points[i] = {R * std::cos(ang), R * std::sin(ang)};
    }
  }
  return T;
}

}  // namespace okflow
