#include "okflow/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "okflow/errors.hpp"
#include "okflow/quadrature.hpp"

namespace okflow {

namespace {

template <class F>
double integrate(const Triangulation& tri, int order, F&& g) {
  const auto rule = triangle_rule(order);
  double sum = 0.0;
  for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
    const Vec2 a = tri.vertex(t, 0), b = tri.vertex(t, 1), c = tri.vertex(t, 2);
    const double area2 = cross(b - a, c - a);
    if (area2 == 0.0) continue;
    double s = 0.0;
    for (const TriangleNode& q : rule) s += q.w * g(a * q.l0 + b * q.l1 + c * q.l2);
    sum += tri.orientation[t] * 0.5 * area2 * s;
  }
  return sum;
}

// Radial H with Laplacian equal to the singular kernel profile g: H'(r) = F(r) / r
// with F the radial moment of g. Additive constants drop out of the double
// boundary integral of closed loops.
double laplace_primitive(const Kernel& k, double r) {
  if (r == 0.0) return 0.0;
  if (k.kind() == Kernel::Kind::Riesz) {
    const double e = 2.0 - k.beta();
    return std::pow(r, e) / (e * e);
  }
  return -r * r * (std::log(r) - 1.0) / (8.0 * std::numbers::pi);
}

// int_0^1 int_0^1 H(l |s - t|) ds dt.
double self_term(const Kernel& k, double l) {
  if (k.kind() == Kernel::Kind::Riesz) {
    const double b = k.beta(), e = 2.0 - b;
    return std::pow(l, e) * 2.0 / ((3.0 - b) * (4.0 - b)) / (e * e);
  }
  // int int u^2 = 1/6, int int u^2 ln u = -7/72.
  return -l * l * ((std::log(l) - 1.0) / 6.0 - 7.0 / 72.0) / (8.0 * std::numbers::pi);
}

double segment_distance(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto point = [](Vec2 p, Vec2 u, Vec2 v) {
    const Vec2 w = v - u;
    const double t = std::clamp(dot(p - u, w) / dot(w, w), 0.0, 1.0);
    return norm(u + w * t - p);
  };
  const double o1 = cross(b - a, c - a), o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c), o4 = cross(d - c, b - c);
  if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return 0.0;
  return std::min({point(a, c, d), point(b, c, d), point(c, a, b), point(d, a, b)});
}

int pair_order(double gap, double len) {
  if (gap <= 0.0) return 16;
  const double q = gap / len;
  if (q > 8.0) return 3;
  if (q > 4.0) return 4;
  if (q > 2.0) return 6;
  if (q > 1.0) return 8;
  return 12;
}

// int_E int_E g(|x - y|) = -sum_{e,f} (d_e . d_f) int_0^1 int_0^1 H(|x_e(s) - x_f(t)|) ds dt
// over all loop edges, from the divergence theorem applied twice with Delta H = g.
double singular_double_integral(const Triangulation& tri, const Kernel& kernel) {
  struct Edge {
    Vec2 a, d;
    double l;
  };
  std::vector<Edge> edges;
  for (const auto& loop : tri.loops) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = tri.points[loop[i]], b = tri.points[loop[(i + 1) % n]];
      if (a == b) continue;
      edges.push_back({a, b - a, norm(b - a)});
    }
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    sum -= e.l * e.l * self_term(kernel, e.l);
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      const Edge& f = edges[j];
      const double dd = dot(e.d, f.d);
      if (dd == 0.0) continue;
      const double gap = segment_distance(e.a, e.a + e.d, f.a, f.a + f.d);
      const auto rule = gauss_legendre(pair_order(gap, std::max(e.l, f.l)));
      double s = 0.0;
      for (const GaussNode& p : rule) {
        const Vec2 x = e.a + e.d * (0.5 * (p.x + 1.0));
        double inner = 0.0;
        for (const GaussNode& q : rule) inner += q.w * laplace_primitive(kernel, norm(x - f.a - f.d * (0.5 * (q.x + 1.0))));
        s += p.w * inner;
      }
      sum -= 2.0 * dd * 0.25 * s;
    }
  }
  return sum;
}

}  // namespace

double nonlocal_energy(const PotentialEvaluator& phi, int order) {
  if (phi.spec().method == QuadMethod::Triangulated)
    return integrate(phi.triangulation(), order, [&](Vec2 y) { return phi(y); });
  double e = singular_double_integral(phi.triangulation(), phi.kernel());
  if (phi.kernel().kind() == Kernel::Kind::NeumannDisk)
    e += integrate(phi.triangulation(), order, [&](Vec2 y) { return phi.corrector_part(y); });
  return e;
}

double external_energy(const Triangulation& tri, const ExternalPotential& f, int order) {
  if (f.kind() == ExternalPotential::Kind::Zero) return 0.0;
  return integrate(tri, order, [&](Vec2 y) { return f(y); });
}

EnergyBreakdown energy(const Region& region, const Kernel& kernel, double gamma,
                       const ExternalPotential& f, const QuadratureSpec& spec,
                       const Triangulation* layout) {
  if (!(gamma >= 0.0)) throw ConfigError("gamma must be non-negative");
  kernel.check_domain(region.domain());
  spec.validate();
  const Triangulation tri = layout ? layout->with_points(region) : triangulate(region, spec.arc);
  EnergyBreakdown e;
  e.gamma = gamma;
  e.perimeter = perimeter(region);
  PotentialEvaluator phi(tri, kernel, spec);
  e.nonlocal = nonlocal_energy(phi, spec.order);
  e.external = external_energy(tri, f, spec.order);
  e.total = e.perimeter + gamma * e.nonlocal + e.external;
  return e;
}

}  // namespace okflow
