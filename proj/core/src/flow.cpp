#include "okflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "okflow/energy.hpp"
#include "okflow/errors.hpp"
#include "okflow/triangulate.hpp"
#include "okflow/variation.hpp"

namespace okflow {

namespace {

struct Residual {
  std::vector<VertexGeometry> geom;
  std::vector<std::vector<double>> r;
  double lambda = 0.0;
  double sup = 0.0;
  double l2 = 0.0;
  double min_weight = 0.0;
};

Residual compute_residual(const Region& region, const PotentialEvaluator* phi, double gamma,
                          const ExternalPotential& f) {
  Residual out;
  double num = 0.0, den = 0.0;
  out.min_weight = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> g(region.size());
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    const PlanarCurve& c = region.component(ci);
    out.geom.push_back(vertex_geometry(c));
    const VertexGeometry& vg = out.geom.back();
    g[ci].resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      double v = vg.curvature[i] + f(c.vertices[i]);
      if (phi) v += 2.0 * gamma * (*phi)(c.vertices[i]);
      g[ci][i] = v;
      num += vg.weight[i] * v;
      den += vg.weight[i];
      out.min_weight = std::min(out.min_weight, vg.weight[i]);
    }
  }
  out.lambda = num / den;
  double s2 = 0.0;
  out.r = std::move(g);
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    for (std::size_t i = 0; i < out.r[ci].size(); ++i) {
      double& v = out.r[ci][i];
      v -= out.lambda;
      out.sup = std::max(out.sup, std::abs(v));
      s2 += out.geom[ci].weight[i] * v * v;
    }
  }
  out.l2 = std::sqrt(s2);
  return out;
}

bool needs_potential(double gamma) { return gamma > 0.0; }

bool needs_triangulation(double gamma, const ExternalPotential& f) {
  return needs_potential(gamma) || !f.is_zero();
}

Region apply_velocity(const Region& region, const Residual& res, double dt, double* max_disp) {
  std::vector<std::vector<Vec2>> verts(region.size());
  double md = 0.0;
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    const auto& v = region.component(ci).vertices;
    verts[ci].resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec2 d = res.geom[ci].normal[i] * (-dt * res.r[ci][i]);
      verts[ci][i] = v[i] + d;
      md = std::max(md, norm(d));
    }
  }
  if (max_disp) *max_disp = md;
  return region.with_vertices(verts);
}

StepResult step_with(const Region& region, const Residual& res, const FlowConfig& config, double dt,
                     double target_area) {
  int halvings = 0;
  for (;;) {
    try {
      double md = 0.0;
      Region next = apply_velocity(region, res, dt, &md);
      if (config.project) next = restore_area(next, target_area);
      return {std::move(next), dt, halvings, md};
    } catch (const Error& e) {
      if (!dynamic_cast<const ValidationError*>(&e) && !dynamic_cast<const NumericalError*>(&e)) throw;
      if (halvings >= config.max_halvings)
        throw StepTooLarge("step rejected after " + std::to_string(halvings) + " halvings");
      dt *= 0.5;
      ++halvings;
    }
  }
}

// Triangulation-based energy with fixed connectivity.
struct EnergyModel {
  const Kernel& kernel;
  double gamma;
  const ExternalPotential& f;
  QuadratureSpec spec;
  std::optional<Triangulation> layout;

  struct State {
    std::optional<PotentialEvaluator> phi;
    double energy = 0.0;
  };

  State evaluate(const Region& r) const {
    State s;
    s.energy = perimeter(r);
    if (!layout) return s;
    const Triangulation tri = layout->with_points(r);
    if (needs_potential(gamma)) {
      s.phi.emplace(tri, kernel, spec);
      s.energy += gamma * nonlocal_energy(*s.phi, spec.order);
    }
    s.energy += external_energy(tri, f, spec.order);
    return s;
  }

  // True when some triangle of the moved layout flipped orientation.
  bool degraded(const Region& r) const {
    if (!layout) return false;
    const Triangulation tri = layout->with_points(r);
    for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
      const Vec2 a = tri.vertex(t, 0), b = tri.vertex(t, 1), c = tri.vertex(t, 2);
      if (cross(b - a, c - a) <= 0.0) return true;
    }
    return false;
  }
};

}  // namespace

void FlowConfig::validate() const {
  if (!(dt >= 0.0)) throw ConfigError("flow.dt must be non-negative");
  if (dt == 0.0 && !(cfl > 0.0)) throw ConfigError("flow.cfl must be positive");
  if (max_steps < 0) throw ConfigError("flow.max_steps must be non-negative");
  if (!(tol > 0.0)) throw ConfigError("flow.tol must be positive");
  if (resample < 0) throw ConfigError("flow.resample must be non-negative");
  if (max_halvings < 0) throw ConfigError("flow.max_halvings must be non-negative");
  quad.validate();
}

Region restore_area(const Region& region, double target) {
  std::vector<VertexGeometry> geom;
  double a0 = 0.0, a1 = 0.0, a2 = 0.0;
  for (const PlanarCurve& c : region.components()) {
    if (!c.closed) throw ConfigError("area restoration supports closed components only");
    geom.push_back(vertex_geometry(c));
    const auto& v = c.vertices;
    const auto& n = geom.back().normal;
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = (i + 1) % m;
      a0 += 0.5 * cross(v[i], v[j]);
      a1 += 0.5 * (cross(v[i], n[j]) + cross(n[i], v[j]));
      a2 += 0.5 * cross(n[i], n[j]);
    }
  }
  // a2 delta^2 + a1 delta + (a0 - target) = 0, root nearest zero.
  const double c0 = a0 - target;
  double delta;
  if (std::abs(a2 * c0) < 1e-14 * a1 * a1) {
    delta = -c0 / a1;
  } else {
    const double disc = a1 * a1 - 4.0 * a2 * c0;
    if (disc < 0.0) throw NumericalError("area restoration has no real solution");
    const double q = -0.5 * (a1 + std::copysign(std::sqrt(disc), a1));
    delta = c0 / q;
  }
  std::vector<std::vector<Vec2>> verts(region.size());
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    const auto& v = region.component(ci).vertices;
    verts[ci].resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) verts[ci][i] = v[i] + geom[ci].normal[i] * delta;
  }
  return region.with_vertices(verts);
}

StepResult step(const Region& region, const Kernel& kernel, double gamma, const ExternalPotential& f,
                const FlowConfig& config, double dt, double target_area) {
  config.validate();
  kernel.check_domain(region.domain());
  if (region.has_open_components()) throw ConfigError("flow supports closed components only");
  if (!(dt > 0.0)) throw ConfigError("step size must be positive");
  std::optional<PotentialEvaluator> phi;
  if (needs_potential(gamma)) phi.emplace(triangulate(region, config.quad.arc), kernel, config.quad);
  const Residual res = compute_residual(region, phi ? &*phi : nullptr, gamma, f);
  if (!(target_area > 0.0)) target_area = area(region);
  return step_with(region, res, config, dt, target_area);
}

FlowResult run(const Region& initial, const Kernel& kernel, double gamma, const ExternalPotential& f,
               const FlowConfig& config) {
  config.validate();
  if (!(gamma >= 0.0)) throw ConfigError("gamma must be non-negative");
  kernel.check_domain(initial.domain());
  if (initial.has_open_components()) throw ConfigError("flow supports closed components only");

  EnergyModel model{kernel, gamma, f, config.quad, std::nullopt};
  if (needs_triangulation(gamma, f)) model.layout = triangulate(initial, config.quad.arc);

  StationarityReport rep;
  Region region = initial;
  const double A0 = area(initial);
  double area_prev = A0;
  EnergyModel::State state = model.evaluate(region);
  double dt_scale = 1.0;

  for (int k = 0;; ++k) {
    const Residual res = compute_residual(region, state.phi ? &*state.phi : nullptr, gamma, f);
    FlowStepRecord rec;
    rec.step = k;
    rec.energy = state.energy;
    rec.area = area_prev;
    rec.sup_residual = res.sup;
    rep.energy_history.push_back(state.energy);
    if (res.sup < config.tol) {
      rep.converged = true;
      rep.trace.push_back(rec);
      break;
    }
    if (k >= config.max_steps) {
      rep.trace.push_back(rec);
      break;
    }
    const double dt0 = (config.dt > 0.0 ? config.dt : config.cfl * res.min_weight * res.min_weight) * dt_scale;
    std::optional<StepResult> attempt;
    try {
      attempt.emplace(step_with(region, res, config, dt0, A0));
    } catch (const Error& e) {
      rep.failure = e.what();
      rep.trace.push_back(rec);
      break;
    }
    StepResult& sr = *attempt;
    if (sr.halvings > 0) {
      dt_scale *= std::ldexp(1.0, -sr.halvings);
      rep.halvings += sr.halvings;
    }
    EnergyModel::State next = model.evaluate(sr.region);
    const double area_next = area(sr.region);
    rec.dt = sr.dt;
    rec.halvings = sr.halvings;
    rec.energy_change = next.energy - state.energy;
    rec.area_drift = std::abs(area_next - area_prev) / A0;
    rec.max_displacement = sr.max_displacement;
    rep.trace.push_back(rec);
    rep.area_drift_history.push_back(rec.area_drift);
    rep.max_area_drift = std::max(rep.max_area_drift, rec.area_drift);
    rep.max_energy_increase =
        std::max(rep.max_energy_increase, rec.energy_change / std::abs(state.energy));
    ++rep.steps;

    region = std::move(sr.region);
    area_prev = area_next;
    state = std::move(next);

    const bool remesh = config.resample > 0 && rep.steps % config.resample == 0;
    if (remesh) {
      std::vector<std::vector<Vec2>> verts;
      for (const PlanarCurve& c : region.components()) verts.push_back(resample(c, c.size()).vertices);
      region = region.with_vertices(verts);
      if (config.project) region = restore_area(region, A0);
      area_prev = area(region);
    }
    const bool rebuild = model.layout && (remesh || model.degraded(region));
    if (rebuild) model.layout = triangulate(region, config.quad.arc);
    if (remesh || rebuild) state = model.evaluate(region);
  }

  const Residual fin = compute_residual(region, state.phi ? &*state.phi : nullptr, gamma, f);
  rep.residual = fin.r;
  rep.sup_residual = fin.sup;
  rep.l2_residual = fin.l2;
  rep.lambda_ls = fin.lambda;
  rep.perimeter = perimeter(region);
  try {
    rep.lambda_Y = lagrange_multiplier(region, kernel, gamma, f, config.quad).lambda_Y;
  } catch (const NumericalError& e) {
    if (rep.failure.empty()) rep.failure = e.what();
  }
  return {std::move(region), std::move(rep)};
}

StationarityReport el_residual(const Region& region, const Kernel& kernel, double gamma,
                               const ExternalPotential& f, const QuadratureSpec& spec) {
  const VariationContext ctx(region, kernel, gamma, f, spec);
  StationarityReport rep;
  rep.residual = ctx.residual();
  rep.lambda_ls = ctx.lambda_ls();
  double s2 = 0.0;
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    for (std::size_t i = 0; i < rep.residual[ci].size(); ++i) {
      const double r = rep.residual[ci][i];
      rep.sup_residual = std::max(rep.sup_residual, std::abs(r));
      s2 += ctx.geometry()[ci].weight[i] * r * r;
    }
  }
  rep.l2_residual = std::sqrt(s2);
  rep.perimeter = perimeter(region);
  rep.converged = true;
  try {
    rep.lambda_Y = lagrange_multiplier(ctx).lambda_Y;
  } catch (const NumericalError& e) {
    rep.failure = e.what();
  }
  return rep;
}

}  // namespace okflow
