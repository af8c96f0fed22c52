#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace okflow::cli {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string colour(double s) {
  s = std::clamp(s, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255.0 * s));
  const int b = static_cast<int>(std::lround(255.0 * (1.0 - s)));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x30%02x", r, b);
  return buf;
}

struct Frame {
  double x0, y0, scale;
  double px(Vec2 p) const { return (p.x - x0) * scale; }
  double py(Vec2 p) const { return (y0 - p.y) * scale; }
};

std::string polyline(const PlanarCurve& c, const Frame& fr, const std::string& stroke, double width) {
  std::string s = c.closed ? "<polygon" : "<polyline";
  s += " fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\" points=\"";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ' ';
    s += num(fr.px(c.vertices[i])) + ',' + num(fr.py(c.vertices[i]));
  }
  return s + "\"/>\n";
}

}  // namespace

std::string render_svg(const Region* initial, const Region& final,
                       const std::vector<std::vector<double>>* residual) {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
  auto grow = [&](const Region& r) {
    for (const PlanarCurve& c : r.components())
      for (Vec2 p : c.vertices) {
        lo_x = std::min(lo_x, p.x), hi_x = std::max(hi_x, p.x);
        lo_y = std::min(lo_y, p.y), hi_y = std::max(hi_y, p.y);
      }
  };
  grow(final);
  if (initial) grow(*initial);
  if (final.domain().is_disk()) {
    const double R = final.domain().radius();
    lo_x = std::min(lo_x, -R), hi_x = std::max(hi_x, R);
    lo_y = std::min(lo_y, -R), hi_y = std::max(hi_y, R);
  }
  const double size = 600.0, margin = 20.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double scale = (size - 2.0 * margin) / span;
  const Frame fr{lo_x - margin / scale, hi_y + margin / scale, scale};

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(size) + "\" height=\"" + num(size) +
                  "\" viewBox=\"0 0 " + num(size) + ' ' + num(size) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (final.domain().is_disk()) {
    const Vec2 o{0.0, 0.0};
    s += "<circle cx=\"" + num(fr.px(o)) + "\" cy=\"" + num(fr.py(o)) + "\" r=\"" +
         num(final.domain().radius() * scale) + "\" fill=\"none\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
  }
  if (initial)
    for (const PlanarCurve& c : initial->components()) s += polyline(c, fr, "#b0b0b0", 1.0);

  if (!residual) {
    for (const PlanarCurve& c : final.components()) s += polyline(c, fr, "#202020", 1.5);
    return s + "</svg>\n";
  }
  double top = 0.0;
  for (const auto& r : *residual)
    for (double v : r) top = std::max(top, std::abs(v));
  for (std::size_t ci = 0; ci < final.size(); ++ci) {
    const PlanarCurve& c = final.component(ci);
    const auto& r = (*residual)[ci];
    for (std::size_t e = 0; e < c.edge_count(); ++e) {
      const std::size_t j = (e + 1) % c.size();
      const Vec2 a = c.vertices[e], b = c.vertices[j];
      const double v = 0.5 * (std::abs(r[e]) + std::abs(r[j]));
      s += "<line x1=\"" + num(fr.px(a)) + "\" y1=\"" + num(fr.py(a)) + "\" x2=\"" + num(fr.px(b)) + "\" y2=\"" +
           num(fr.py(b)) + "\" stroke=\"" + colour(top > 0.0 ? v / top : 0.0) + "\" stroke-width=\"2\"/>\n";
    }
  }
  s += "<text x=\"" + num(margin) + "\" y=\"" + num(size - 6.0) +
       "\" font-family=\"monospace\" font-size=\"11\">max |r| = " + num(top) + "</text>\n";
  return s + "</svg>\n";
}

}  // namespace okflow::cli
