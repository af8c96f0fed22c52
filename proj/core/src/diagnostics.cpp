#include "okflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "okflow/errors.hpp"

namespace okflow {

namespace {

// Parameter interval of a + t (b - a), t in [0, 1], inside B_rho(x); empty when lo >= hi.
std::pair<double, double> clip(Vec2 a, Vec2 b, Vec2 x, double rho) {
  const Vec2 d = b - a, e = a - x;
  const double A = dot(d, d), B = 2.0 * dot(e, d), C = dot(e, e) - rho * rho;
  const double disc = B * B - 4.0 * A * C;
  if (!(disc > 0.0)) return {0.0, 0.0};
  const double q = -0.5 * (B + std::copysign(std::sqrt(disc), B));
  double t0 = q / A, t1 = C / q;
  if (t0 > t1) std::swap(t0, t1);
  return {std::max(t0, 0.0), std::min(t1, 1.0)};
}

void check_ball(const Domain& domain, Vec2 x, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw ConfigError("ball radius must be positive");
  if (domain.is_disk() && norm(x) + rho > domain.radius() * (1.0 + 1e-12))
    throw DomainError("ball B_rho(x) is not contained in the domain");
}

// int_{s0}^{s1} |u|^p ds for u linear from u(s0) = u0 to u(s1) = u1.
double linear_power(double u0, double u1, double len, double p) {
  if (len <= 0.0) return 0.0;
  if (u0 * u1 < 0.0) {
    const double z = len * u0 / (u0 - u1);
    return linear_power(u0, 0.0, z, p) + linear_power(0.0, u1, len - z, p);
  }
  const double a = std::abs(u0), b = std::abs(u1);
  if (std::abs(b - a) <= 1e-14 * std::max(a, b)) return len * std::pow(0.5 * (a + b), p);
  return len * (std::pow(b, p + 1.0) - std::pow(a, p + 1.0)) / ((p + 1.0) * (b - a));
}

double point_segment_distance(Vec2 x, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double t = std::clamp(dot(x - a, d) / dot(d, d), 0.0, 1.0);
  return norm(a + d * t - x);
}

}  // namespace

double boundary_length_in_ball(const Region& region, Vec2 x, double rho) {
  double sum = 0.0;
  for (const PlanarCurve& c : region.components()) {
    for (std::size_t e = 0; e < c.edge_count(); ++e) {
      const Vec2 a = c.edge_start(e), b = c.edge_end(e);
      const auto [lo, hi] = clip(a, b, x, rho);
      if (hi > lo) sum += (hi - lo) * norm(b - a);
    }
  }
  return sum;
}

double density_ratio(const Region& region, Vec2 x, double rho) {
  check_ball(region.domain(), x, rho);
  return boundary_length_in_ball(region, x, rho) / (kAlpha1 * rho);
}

AllardProbe::AllardProbe(const Region& region, const Kernel& kernel, double gamma,
                         const ExternalPotential& f, const QuadratureSpec& spec)
    : region_(region) {
  const VariationContext ctx(region, kernel, gamma, f, spec);
  lambda_ = ctx.lambda_ls();
  double sup_phi = 0.0, sup_f = 0.0;
  h_vertex_.resize(region.size());
  h_mid_.resize(region.size());
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    const PlanarCurve& c = region.component(ci);
    const auto& pv = ctx.phi_vertices()[ci];
    const auto& pm = ctx.phi_midpoints()[ci];
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double fv = f(c.vertices[i]);
      h_vertex_[ci].push_back(2.0 * gamma * pv[i] + fv - lambda_);
      sup_phi = std::max(sup_phi, std::abs(pv[i]));
      sup_f = std::max(sup_f, std::abs(fv));
    }
    for (std::size_t e = 0; e < c.edge_count(); ++e) {
      const double fm = f((c.edge_start(e) + c.edge_end(e)) * 0.5);
      h_mid_[ci].push_back(2.0 * gamma * pm[e] + fm - lambda_);
      sup_phi = std::max(sup_phi, std::abs(pm[e]));
      sup_f = std::max(sup_f, std::abs(fm));
    }
  }
  c0_ = std::abs(lambda_) + 2.0 * gamma * sup_phi + sup_f;
}

double AllardProbe::safe_radius(double p, double delta) const {
  if (c0_ == 0.0) return std::numeric_limits<double>::infinity();
  return delta / c0_ * std::pow(2.0, -1.0 / p) * std::pow(kAlpha1, -1.0 / p);
}

AllardReport AllardProbe::check(Vec2 x, double rho, double p, double delta) const {
  if (!(p > 1.0)) throw ConfigError("allard check requires p > 1");
  if (!(delta > 0.0)) throw ConfigError("allard check requires delta > 0");
  AllardReport r;
  r.center = x;
  r.radius = rho;
  r.p = p;
  r.delta = delta;
  r.density_ratio = density_ratio(region_, x, rho);

  double dist = std::numeric_limits<double>::infinity();
  double hp = 0.0;
  for (std::size_t ci = 0; ci < region_.size(); ++ci) {
    const PlanarCurve& c = region_.component(ci);
    for (std::size_t e = 0; e < c.edge_count(); ++e) {
      const Vec2 a = c.edge_start(e), b = c.edge_end(e);
      dist = std::min(dist, point_segment_distance(x, a, b));
      const auto [lo, hi] = clip(a, b, x, rho);
      if (!(hi > lo)) continue;
      const double len = norm(b - a);
      const double ga = h_vertex_[ci][e], gm = h_mid_[ci][e];
      const double gb = h_vertex_[ci][(e + 1) % c.size()];
      // Two linear halves: [0, 1/2] from ga to gm, [1/2, 1] from gm to gb.
      auto value = [&](double t) { return t <= 0.5 ? ga + (gm - ga) * 2.0 * t : gm + (gb - gm) * (2.0 * t - 1.0); };
      const double s0 = std::min(lo, 0.5), s1 = std::min(hi, 0.5);
      if (s1 > s0) hp += linear_power(value(s0), value(s1), (s1 - s0) * len, p);
      const double u0 = std::max(lo, 0.5), u1 = std::max(hi, 0.5);
      if (u1 > u0) hp += linear_power(value(u0), value(u1), (u1 - u0) * len, p);
    }
  }
  r.curvature_norm = std::pow(hp, 1.0 / p) * std::pow(rho, 1.0 - 1.0 / p);
  r.support_pass = dist <= 1e-9 * rho;
  r.density_pass = r.density_ratio <= 1.0 + delta;
  r.curvature_pass = r.curvature_norm <= delta;
  return r;
}

AllardReport allard_check(const Region& region, const Kernel& kernel, double gamma,
                          const ExternalPotential& f, Vec2 x, double rho, double p, double delta,
                          const QuadratureSpec& spec) {
  check_ball(region.domain(), x, rho);
  return AllardProbe(region, kernel, gamma, f, spec).check(x, rho, p, delta);
}

std::size_t AllardScan::failures() const {
  return static_cast<std::size_t>(
      std::count_if(vertices.begin(), vertices.end(), [](const VertexScan& v) { return !v.passed; }));
}

AllardScan allard_scan(const AllardProbe& probe, double p, double delta, double rho_max, int levels) {
  if (!(rho_max > 0.0)) throw ConfigError("allard.rho_max must be positive");
  if (levels < 1) throw ConfigError("allard.levels must be at least 1");
  AllardScan scan;
  scan.p = p;
  scan.delta = delta;
  for (int k = 0; k < levels; ++k) scan.radii.push_back(std::ldexp(rho_max, -k));

  const Region& region = probe.region();
  const Domain& dom = region.domain();
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    const PlanarCurve& c = region.component(ci);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c.closed && (i == 0 || i + 1 == c.size())) continue;
      const Vec2 x = c.vertices[i];
      VertexScan v;
      v.component = ci;
      v.vertex = i;
      v.report.center = x;
      for (double rho : scan.radii) {
        if (dom.is_disk() && norm(x) + rho > dom.radius()) continue;
        const AllardReport r = probe.check(x, rho, p, delta);
        if (r.passed()) {
          v.passed = true;
          v.radius = rho;
          v.report = r;
          break;
        }
        v.radius = rho;
        v.report = r;
      }
      scan.vertices.push_back(v);
    }
  }
  return scan;
}

}  // namespace okflow
