#include "okflow/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "okflow/errors.hpp"
#include "okflow/io.hpp"
#include "okflow/quadrature.hpp"

namespace okflow::fixtures {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("fixture: " + what);
}

PlanarCurve ring(double radius, std::size_t n, Vec2 center) {
  PlanarCurve c;
  c.vertices.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    c.vertices[k] = center + Vec2{radius * std::cos(t), radius * std::sin(t)};
  }
  return c;
}

// Arclength of the ellipse from 0 to theta, Gauss-Legendre on 64 panels.
class EllipseArc {
 public:
  EllipseArc(double a, double b) : a_(a), b_(b) {
    cum_.assign(kPanels + 1, 0.0);
    for (int p = 0; p < kPanels; ++p) cum_[p + 1] = cum_[p] + panel(p, 1.0);
  }
  double total() const { return cum_.back(); }
  double speed(double t) const { return std::hypot(a_ * std::sin(t), b_ * std::cos(t)); }
  double operator()(double t) const {
    const double h = 2.0 * kPi / kPanels;
    int p = std::clamp(static_cast<int>(std::floor(t / h)), 0, kPanels - 1);
    const double frac = (t - p * h) / h;
    return cum_[p] + panel(p, frac);
  }

 private:
  static constexpr int kPanels = 64;
  double a_, b_;
  std::vector<double> cum_;

  double panel(int p, double frac) const {
    const double h = 2.0 * kPi / kPanels;
    const double lo = p * h, len = frac * h;
    double s = 0.0;
    for (const GaussNode& g : gauss_legendre(16)) s += g.w * speed(lo + 0.5 * len * (g.x + 1.0));
    return 0.5 * len * s;
  }
};

}  // namespace

Region cross(std::size_t per_arm) {
  require(per_arm >= 1, "cross needs at least one edge per arm");
  const double n = static_cast<double>(per_arm);
  PlanarCurve a{{}, false}, b{{}, false};
  for (std::size_t k = 0; k <= per_arm; ++k) {
    const double s = 1.0 - static_cast<double>(k) / n;
    a.vertices.push_back({0.0, s});
    b.vertices.push_back({0.0, 0.0 - s});
  }
  for (std::size_t k = 1; k <= per_arm; ++k) {
    const double s = static_cast<double>(k) / n;
    a.vertices.push_back({s, 0.0});
    b.vertices.push_back({-s, 0.0});
  }
  return Region(Domain::disk(1.0), {a, b}, {ChordSide::Left, ChordSide::Left});
}

Region chord(double angle, std::size_t n) {
  require(std::isfinite(angle) && std::abs(angle) < 0.5 * kPi, "chord angle must lie in (-pi/2, pi/2)");
  require(n >= 1, "chord needs at least one edge");
  const double x = std::cos(angle), y = std::sin(angle);
  PlanarCurve c{{}, false};
  for (std::size_t k = 0; k <= n; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(n);
    c.vertices.push_back({k == n ? x : -x + 2.0 * x * s, y});
  }
  return Region(Domain::disk(1.0), {c}, {ChordSide::Left});
}

Region circle(double radius, std::size_t n, const Domain& domain, Vec2 center) {
  require(radius > 0.0, "circle radius must be positive");
  require(n >= 3, "circle needs at least 3 vertices");
  return Region(domain, {ring(radius, n, center)});
}

Region perturbed_circle(double amplitude, int mode, std::size_t n, double radius, const Domain& domain) {
  require(std::abs(amplitude) < 1.0, "perturbation amplitude must satisfy |amplitude| < 1");
  require(mode >= 0, "perturbation mode must be non-negative");
  require(radius > 0.0 && n >= 3, "perturbed circle needs radius > 0 and at least 3 vertices");
  PlanarCurve c;
  c.vertices.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    const double r = radius * (1.0 + amplitude * std::cos(mode * t));
    c.vertices[k] = {r * std::cos(t), r * std::sin(t)};
  }
  return Region(domain, {c});
}

Region ellipse(double a, double b, std::size_t n, const Domain& domain) {
  require(a > 0.0 && b > 0.0, "ellipse semi-axes must be positive");
  require(n >= 3, "ellipse needs at least 3 vertices");
  const EllipseArc arc(a, b);
  const double L = arc.total();
  PlanarCurve c;
  c.vertices.resize(n);
  double t = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = L * static_cast<double>(k) / static_cast<double>(n);
    for (int it = 0; it < 50; ++it) {
      const double dt = (arc(t) - target) / arc.speed(t);
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    c.vertices[k] = {a * std::cos(t), b * std::sin(t)};
  }
  return Region(domain, {c});
}

Region two_disks(double separation, double radius, std::size_t n, const Domain& domain) {
  require(radius > 0.0 && n >= 3, "two_disks needs radius > 0 and at least 3 vertices");
  require(separation > 2.0 * radius, "two_disks separation must exceed twice the radius");
  const double h = 0.5 * separation;
  return Region(domain, {ring(radius, n, {-h, 0.0}), ring(radius, n, {h, 0.0})});
}

const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"cross", "chord", "circle", "perturbed_circle",
                                             "ellipse", "two_disks", "file"};
  return n;
}

Region make(const FixtureSpec& s) {
  const Domain plane = s.domain.value_or(Domain::plane());
  if (s.name == "cross") {
    require(!s.domain || *s.domain == Domain::disk(1.0), "cross lives in the unit disk");
    return cross(s.N);
  }
  if (s.name == "chord") {
    require(!s.domain || *s.domain == Domain::disk(1.0), "chord lives in the unit disk");
    return chord(s.angle, s.N);
  }
  if (s.name == "circle") return circle(s.R, s.N, plane);
  if (s.name == "perturbed_circle") return perturbed_circle(s.amplitude, s.mode, s.N, s.R, plane);
  if (s.name == "ellipse") return ellipse(s.a, s.b, s.N, plane);
  if (s.name == "two_disks") return two_disks(s.separation, s.R, s.N, plane);
  if (s.name == "file") {
    require(!s.path.empty(), "file fixture needs fixture.path");
    return read_region(s.path);
  }
  throw ConfigError("unknown fixture '" + s.name + "'");
}

}  // namespace okflow::fixtures
