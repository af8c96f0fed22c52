#include "okflow/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "okflow/energy.hpp"
#include "okflow/errors.hpp"

namespace okflow {

namespace {

std::string fmt_vec(Vec2 v) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << v.x << "," << v.y << ")";
  return os.str();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b, Vec2* closest) {
  const Vec2 e = b - a;
  const double l2 = norm2(e);
  double u = l2 > 0.0 ? dot(p - a, e) / l2 : 0.0;
  u = std::clamp(u, 0.0, 1.0);
  const Vec2 q = a + e * u;
  if (closest) *closest = q;
  return norm(p - q);
}

double winding(const Triangulation& tri, Vec2 p) {
  double w = 0.0;
  for (const auto& loop : tri.loops) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      Vec2 a = tri.points[loop[i]] - p, b = tri.points[loop[(i + 1) % n]] - p;
      w += std::atan2(cross(a, b), dot(a, b));
    }
  }
  return w / (2.0 * std::numbers::pi);
}

double raw_flux(const Region& region, const TestField& X) {
  double F = 0.0;
  for (const PlanarCurve& c : region.components()) {
    for (std::size_t e = 0; e < c.edge_count(); ++e) {
      Vec2 a = c.edge_start(e), b = c.edge_end(e);
      F += 0.5 * dot(X(a) + X(b), rot_right(b - a));
    }
  }
  return F;
}

}  // namespace

TestField TestField::bump(Vec2 c, double r, Vec2 d) {
  if (!(r > 0.0)) throw ConfigError("bump radius must be positive");
  TestField f;
  const double r2 = r * r;
  f.value_ = [=](Vec2 x) {
    const double q = norm2(x - c) / r2;
    if (q >= 1.0) return Vec2{};
    const double s = 1.0 - q;
    return d * (s * s);
  };
  f.jacobian_ = [=](Vec2 x) {
    const double q = norm2(x - c) / r2;
    if (q >= 1.0) return Mat2{};
    const Vec2 grad = (x - c) * (-4.0 * (1.0 - q) / r2);
    return Mat2::outer(d, grad);
  };
  f.name_ = "bump(c=" + fmt_vec(c) + ",r=" + fmt(r) + ",d=" + fmt_vec(d) + ")";
  f.support_ = std::make_pair(c, r);
  return f;
}

TestField TestField::tangential_bump(Vec2 c, double r, Vec2 d, double R, double eps) {
  if (!(eps > 0.0 && eps < R)) throw ConfigError("tangential bump cutoff width must be in (0, R)");
  TestField base = bump(c, r, d);
  TestField f;
  auto chi = [eps](double s) {
    if (s <= 0.0) return 0.0;
    if (s >= eps) return 1.0;
    const double u = s / eps;
    return u * u * (3.0 - 2.0 * u);
  };
  auto dchi = [eps](double s) {
    if (s <= 0.0 || s >= eps) return 0.0;
    const double u = s / eps;
    return 6.0 * u * (1.0 - u) / eps;
  };
  auto bv = base.value_;
  auto bj = base.jacobian_;
  f.value_ = [=](Vec2 x) {
    const Vec2 X = bv(x);
    const double rho = norm(x);
    if (R - rho >= eps) return X;
    const Vec2 n = x / rho;
    return X + n * ((chi(R - rho) - 1.0) * dot(X, n));
  };
  f.jacobian_ = [=](Vec2 x) {
    const Mat2 DX = bj(x);
    const double rho = norm(x);
    if (R - rho >= eps) return DX;
    const Vec2 X = bv(x);
    const Vec2 n = x / rho;
    const double s = R - rho;
    const double cc = chi(s) - 1.0;
    const double g = dot(X, n);
    const Mat2 Dn = (Mat2::identity() - Mat2::outer(n, n)) * (1.0 / rho);
    const Vec2 grad_c = n * (-dchi(s));
    const Vec2 DXt_n{DX.a * n.x + DX.c * n.y, DX.b * n.x + DX.d * n.y};
    const Vec2 grad_g = DXt_n + Dn * X;
    const Vec2 grad_cg = grad_c * g + grad_g * cc;
    return DX + Mat2::outer(n, grad_cg) + Dn * (cc * g);
  };
  f.name_ = "tangential_" + base.name_ + "[R=" + fmt(R) + ",eps=" + fmt(eps) + "]";
  f.support_ = base.support_;
  return f;
}

TestField TestField::custom(ValueFn value, JacobianFn jacobian, std::string name) {
  TestField f;
  f.value_ = std::move(value);
  f.jacobian_ = std::move(jacobian);
  f.name_ = std::move(name);
  return f;
}

TestField TestField::zero() {
  TestField f = custom([](Vec2) { return Vec2{}; }, [](Vec2) { return Mat2{}; }, "zero");
  f.support_ = std::make_pair(Vec2{}, 0.0);
  return f;
}

TestField TestField::translation(Vec2 v) {
  return custom([v](Vec2) { return v; }, [](Vec2) { return Mat2{}; }, "translation" + fmt_vec(v));
}

TestField TestField::dilation(Vec2 c) {
  return custom([c](Vec2 x) { return x - c; }, [](Vec2) { return Mat2::identity(); },
                "dilation" + fmt_vec(c));
}

TestField TestField::rotation(Vec2 c) {
  return custom([c](Vec2 x) { return rot_left(x - c); }, [](Vec2) { return Mat2{0.0, -1.0, 1.0, 0.0}; },
                "rotation" + fmt_vec(c));
}

Mat2 TestField::jacobian(Vec2 x) const {
  if (!jacobian_) throw ConfigError("field '" + name_ + "' has no derivative");
  return jacobian_(x);
}

TestField TestField::operator+(const TestField& o) const {
  TestField f;
  auto a = value_, b = o.value_;
  f.value_ = [a, b](Vec2 x) { return a(x) + b(x); };
  if (jacobian_ && o.jacobian_) {
    auto ja = jacobian_, jb = o.jacobian_;
    f.jacobian_ = [ja, jb](Vec2 x) { return ja(x) + jb(x); };
  }
  f.name_ = name_ + "+" + o.name_;
  if (support_ && o.support_) {
    auto [c1, r1] = *support_;
    auto [c2, r2] = *o.support_;
    const double d = norm(c2 - c1);
    if (d + r2 <= r1) {
      f.support_ = support_;
    } else if (d + r1 <= r2) {
      f.support_ = o.support_;
    } else {
      const double r = 0.5 * (d + r1 + r2);
      const Vec2 c = d > 0.0 ? c1 + (c2 - c1) * ((r - r1) / d) : c1;
      f.support_ = std::make_pair(c, r);
    }
  }
  return f;
}

TestField TestField::scaled(double s) const {
  TestField f;
  auto a = value_;
  f.value_ = [a, s](Vec2 x) { return a(x) * s; };
  if (jacobian_) {
    auto j = jacobian_;
    f.jacobian_ = [j, s](Vec2 x) { return j(x) * s; };
  }
  f.name_ = fmt(s) + "*" + name_;
  f.support_ = support_;
  return f;
}

std::vector<TestField> bump_battery(const Region& region, std::size_t count, std::uint64_t seed,
                                    double scale) {
  if (!(scale > 0.0)) throw ConfigError("bump battery scale must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec2> anchors;
  for (const PlanarCurve& c : region.components())
    anchors.insert(anchors.end(), c.vertices.begin(), c.vertices.end());
  const Domain& dom = region.domain();
  std::vector<TestField> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t pick = std::min(anchors.size() - 1, static_cast<std::size_t>(u(rng) * anchors.size()));
    const double oa = 2.0 * std::numbers::pi * u(rng), orad = 0.1 * scale * std::sqrt(u(rng));
    Vec2 c = anchors[pick] + Vec2{std::cos(oa), std::sin(oa)} * orad;
    const double radius = scale * (0.2 + 0.3 * u(rng));
    const double da = 2.0 * std::numbers::pi * u(rng);
    const Vec2 d{std::cos(da), std::sin(da)};
    if (dom.is_disk()) {
      const double R = dom.radius();
      if (norm(c) > 0.95 * R) c = c * (0.95 * R / norm(c));
      out.push_back(TestField::tangential_bump(c, radius, d, R, 0.25 * R));
    } else {
      out.push_back(TestField::bump(c, radius, d));
    }
  }
  return out;
}

void check_tangential(const TestField& X, const Domain& domain, int samples) {
  if (!domain.is_disk()) return;
  const double R = domain.radius();
  for (int k = 0; k < samples; ++k) {
    const double a = 2.0 * std::numbers::pi * k / samples;
    const Vec2 n{std::cos(a), std::sin(a)};
    const double v = dot(X(n * R), n);
    if (!(std::abs(v) < 1e-12))
      throw ConstraintError("field '" + X.describe() + "' is not tangential to the disk boundary (X.nu = " +
                            fmt(v) + ")");
  }
}

std::vector<double> tangential_divergence(const PlanarCurve& curve, const TestField& X,
                                          const VertexGeometry& g) {
  std::vector<double> out(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const Mat2 J = X.jacobian(curve.vertices[i]);
    const Vec2 n = g.normal[i];
    out[i] = J.trace() - dot(n, J * n);
  }
  return out;
}

VariationContext::VariationContext(const Region& region, const Kernel& kernel, double gamma,
                                   const ExternalPotential& f, const QuadratureSpec& spec)
    : region_(region), gamma_(gamma), f_(f) {
  if (!(gamma >= 0.0)) throw ConfigError("gamma must be non-negative");
  kernel.check_domain(region.domain());
  spec.validate();
  geom_ = region_vertex_geometry(region);

  phi_v_.resize(region.size());
  phi_m_.resize(region.size());
  std::optional<PotentialEvaluator> ev;
  if (gamma > 0.0) ev.emplace(triangulate(region, spec.arc), kernel, spec);
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    const PlanarCurve& c = region.component(ci);
    phi_v_[ci].assign(c.size(), 0.0);
    phi_m_[ci].assign(c.edge_count(), 0.0);
    if (!ev) continue;
    for (std::size_t i = 0; i < c.size(); ++i) phi_v_[ci][i] = (*ev)(c.vertices[i]);
    for (std::size_t e = 0; e < c.edge_count(); ++e)
      phi_m_[ci][e] = (*ev)((c.edge_start(e) + c.edge_end(e)) * 0.5);
  }

  double num = 0.0, den = 0.0;
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    const PlanarCurve& c = region.component(ci);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double w = geom_[ci].weight[i];
      num += w * (geom_[ci].curvature[i] + 2.0 * gamma_ * phi_v_[ci][i] + f_(c.vertices[i]));
      den += w;
    }
  }
  lambda_ls_ = num / den;
}

double VariationContext::edge_integral(const TestField& X, bool with_phi, bool with_f,
                                       double lambda) const {
  double sum = 0.0;
  for (std::size_t ci = 0; ci < region_.size(); ++ci) {
    const PlanarCurve& c = region_.component(ci);
    const std::size_t n = c.size();
    std::vector<Vec2> Xv(n);
    std::vector<double> gv(n);
    for (std::size_t i = 0; i < n; ++i) {
      Xv[i] = X(c.vertices[i]);
      gv[i] = (with_phi ? 2.0 * gamma_ * phi_v_[ci][i] : 0.0) + (with_f ? f_(c.vertices[i]) : 0.0) - lambda;
    }
    for (std::size_t e = 0; e < c.edge_count(); ++e) {
      const std::size_t j = (e + 1) % n;
      const Vec2 a = c.vertices[e], b = c.vertices[j];
      const Vec2 ln = rot_right(b - a);
      const double gm = (with_phi ? 2.0 * gamma_ * phi_m_[ci][e] : 0.0) + (with_f ? f_((a + b) * 0.5) : 0.0) - lambda;
      const double xa = dot(Xv[e], ln), xb = dot(Xv[j], ln);
      sum += (gv[e] * xa + 2.0 * gm * (xa + xb) + gv[j] * xb) / 6.0;
    }
  }
  return sum;
}

VariationResult VariationContext::operator()(const TestField& X) const {
  check_tangential(X, region_.domain());
  VariationResult r;
  for (const PlanarCurve& c : region_.components()) {
    for (std::size_t e = 0; e < c.edge_count(); ++e) {
      const Vec2 a = c.edge_start(e), b = c.edge_end(e);
      const Vec2 t = normalized(b - a);
      r.perimeter += dot(t, X(b) - X(a));
    }
  }
  if (gamma_ > 0.0) r.nonlocal = edge_integral(X, true, false, 0.0);
  if (!f_.is_zero()) r.external = edge_integral(X, false, true, 0.0);
  r.total = r.perimeter + r.nonlocal + r.external;
  return r;
}

double VariationContext::flux(const TestField& X) const { return raw_flux(region_, X); }

double VariationContext::forcing(const TestField& X, double lambda) const {
  return edge_integral(X, gamma_ > 0.0, !f_.is_zero(), lambda);
}

std::vector<std::vector<double>> VariationContext::residual() const {
  std::vector<std::vector<double>> r(region_.size());
  for (std::size_t ci = 0; ci < region_.size(); ++ci) {
    const PlanarCurve& c = region_.component(ci);
    r[ci].resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      r[ci][i] = geom_[ci].curvature[i] + 2.0 * gamma_ * phi_v_[ci][i] + f_(c.vertices[i]) - lambda_ls_;
  }
  return r;
}

VariationResult first_variation(const Region& region, const Kernel& kernel, double gamma,
                                const ExternalPotential& f, const TestField& X,
                                const QuadratureSpec& spec) {
  return VariationContext(region, kernel, gamma, f, spec)(X);
}

Region flow_region(const Region& region, const TestField& X, double t) {
  std::vector<std::vector<Vec2>> verts(region.size());
  const Domain& dom = region.domain();
  for (std::size_t ci = 0; ci < region.size(); ++ci) {
    const PlanarCurve& c = region.component(ci);
    verts[ci].resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Vec2 x = c.vertices[i];
      const Vec2 k1 = X(x);
      const Vec2 k2 = X(x + k1 * (0.5 * t));
      const Vec2 k3 = X(x + k2 * (0.5 * t));
      const Vec2 k4 = X(x + k3 * t);
      Vec2 y = x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (t / 6.0);
      if (!c.closed && dom.is_disk() && (i == 0 || i + 1 == c.size())) y = dom.project_to_boundary(y);
      verts[ci][i] = y;
    }
  }
  try {
    return region.with_vertices(verts);
  } catch (const ValidationError& e) {
    throw StepTooLarge(std::string("flowed boundary is invalid: ") + e.what());
  }
}

double fd_variation(const Region& region, const Kernel& kernel, double gamma,
                    const ExternalPotential& f, const TestField& X, double t,
                    const QuadratureSpec& spec, const Triangulation* layout) {
  if (!(t > 0.0)) throw ConfigError("finite-difference step must be positive");
  std::optional<Triangulation> own;
  if (!layout) {
    own.emplace(triangulate(region, spec.arc));
    layout = &*own;
  }
  const Region plus = flow_region(region, X, t);
  const Region minus = flow_region(region, X, -t);
  const double ep = energy(plus, kernel, gamma, f, spec, layout).total;
  const double em = energy(minus, kernel, gamma, f, spec, layout).total;
  return (ep - em) / (2.0 * t);
}

RichardsonStudy richardson_study(const Region& region, const Kernel& kernel, double gamma,
                                 const ExternalPotential& f, const TestField& X, double t,
                                 const QuadratureSpec& spec) {
  const Triangulation layout = triangulate(region, spec.arc);
  RichardsonStudy s;
  s.t = t;
  for (int k = 0; k < 3; ++k)
    s.fd[k] = fd_variation(region, kernel, gamma, f, X, t / (1 << k), spec, &layout);
  const double d01 = s.fd[0] - s.fd[1], d12 = s.fd[1] - s.fd[2];
  s.order = std::log2(std::abs(d01) / std::abs(d12));
  s.constant = d01 / (0.75 * t * t);
  s.extrapolated = (4.0 * s.fd[2] - s.fd[1]) / 3.0;
  return s;
}

ConsistencyCheck consistency_check(const Region& region, const Kernel& kernel, double gamma,
                                   const ExternalPotential& f, const TestField& X, double t,
                                   const QuadratureSpec& spec, double abs_tol, double min_order) {
  ConsistencyCheck c;
  c.analytic = first_variation(region, kernel, gamma, f, X, spec);
  c.study = richardson_study(region, kernel, gamma, f, X, t, spec);
  const double d01 = c.study.fd[0] - c.study.fd[1];
  const double noise = 1e-11 * (1.0 + std::abs(c.study.fd[0]));
  c.order_resolved = std::abs(d01) > noise;
  const double C = c.order_resolved ? std::abs(c.study.constant) : 0.0;
  c.excess = -std::numeric_limits<double>::infinity();
  double s = t;
  for (double fd : c.study.fd) {
    c.excess = std::max(c.excess, std::abs(c.analytic.total - fd) - C * s * s);
    s *= 0.5;
  }
  c.passed = c.excess <= abs_tol && (!c.order_resolved || c.study.order >= min_order);
  return c;
}

VolumeField normalize_volume_field(const Region& region, const TestField& X, Vec2 center,
                                   double radius) {
  const double F = raw_flux(region, X);
  if (!(std::abs(F) >= 1e-10))
    throw NumericalError("vanishing flux (" + fmt(F) + "): the field must straddle the boundary of E");
  VolumeField v{X.scaled(1.0 / F), F, center, radius};
  return v;
}

VolumeField volume_field(const Region& region, int arc_segments) {
  const Triangulation tri = triangulate(region, arc_segments);
  const Domain& dom = region.domain();
  double best = 0.0;
  Vec2 best_c, best_q;
  for (std::size_t t = 0; t < tri.triangles.size(); ++t) {
    const Vec2 a = tri.vertex(t, 0), b = tri.vertex(t, 1), c = tri.vertex(t, 2);
    if (cross(b - a, c - a) <= 0.0) continue;
    const Vec2 g = (a + b + c) / 3.0;
    if (winding(tri, g) < 0.5) continue;
    double dE = std::numeric_limits<double>::infinity();
    Vec2 q;
    for (const PlanarCurve& curve : region.components()) {
      for (std::size_t e = 0; e < curve.edge_count(); ++e) {
        Vec2 qq;
        double d = segment_distance(g, curve.edge_start(e), curve.edge_end(e), &qq);
        if (d < dE) { dE = d; q = qq; }
      }
    }
    double depth = dE;
    if (dom.is_disk()) depth = std::min(depth, dom.radius() - norm(g));
    if (depth > best) { best = depth; best_c = g; best_q = q; }
  }
  if (!(best > 0.0)) throw NumericalError("no interior point found for the volume field");
  const double dE = norm(best_q - best_c);
  double m = dE;
  if (dom.is_disk()) m = std::min(m, 0.999 * (dom.radius() - norm(best_q)) / 1.5);
  if (!(m > 1e-9 * dE)) throw NumericalError("no interior point found for the volume field");
  const Vec2 dir = (best_q - best_c) / dE;
  const Vec2 center = best_q - dir * (0.5 * m);
  // Unit normal direction of the displacement: the bump pushes across the nearest boundary.
  return normalize_volume_field(region, TestField::bump(center, m, dir), center, m);
}

LagrangeMultiplier lagrange_multiplier(const VariationContext& ctx) {
  LagrangeMultiplier L{0.0, 0.0, 0.0, 0.0, volume_field(ctx.region())};
  const VariationResult v = ctx(L.volume.field);
  L.lambda_Y = v.total;
  L.divergence_part = v.perimeter;
  L.lambda_ls = ctx.lambda_ls();
  L.difference = L.lambda_Y - L.lambda_ls;
  return L;
}

LagrangeMultiplier lagrange_multiplier(const Region& region, const Kernel& kernel, double gamma,
                                       const ExternalPotential& f, const QuadratureSpec& spec) {
  return lagrange_multiplier(VariationContext(region, kernel, gamma, f, spec));
}

double orthogonality_defect(const VariationContext& ctx, const TestField& X) {
  if (!ctx.region().domain().is_disk()) throw ConfigError("orthogonality defect needs a disk domain");
  const VariationResult v = ctx(X);
  return std::abs(v.perimeter + ctx.forcing(X, ctx.lambda_ls()));
}

double orthogonality_defect(const Region& region, const Kernel& kernel, double gamma,
                            const ExternalPotential& f, const TestField& X,
                            const QuadratureSpec& spec) {
  return orthogonality_defect(VariationContext(region, kernel, gamma, f, spec), X);
}

}  // namespace okflow
