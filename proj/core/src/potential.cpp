#include "okflow/potential.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "okflow/errors.hpp"
#include "okflow/quadrature.hpp"

namespace okflow {

namespace {

constexpr double kPi = std::numbers::pi;

double parse_num(const std::string& s, const std::string& ctx) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw ConfigError("invalid number '" + s + "' in " + ctx);
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Signed polar integral of -(1/2pi) ln r over the triangle (x, a, b), given
// the squared distances and their logs.
inline double log_segment(Vec2 x, Vec2 a, Vec2 b, double la, double lb) {
  const Vec2 pa = a - x, pb = b - x;
  const Vec2 e = b - a;
  const double l = norm(e);
  const Vec2 t = e / l;
  const double ua = dot(pa, t), ub = dot(pb, t);
  const double h = cross(pa, t);
  const double theta = std::atan2(std::abs(cross(pa, pb)), dot(pa, pb));
  const double ta = ua == 0.0 ? 0.0 : ua * la;
  const double tb = ub == 0.0 ? 0.0 : ub * lb;
  return -(h / (8.0 * kPi)) * (tb - ta - 3.0 * l + 2.0 * std::abs(h) * theta);
}

inline double safe_log2(Vec2 p) {
  const double r2 = norm2(p);
  return r2 > 0.0 ? std::log(r2) : 0.0;
}

// Signed polar integral of r^-beta over the triangle (x, a, b). With s the
// coordinate along the edge and d the distance to its line, the radial
// integral leaves int d (d^2 + s^2)^(-beta/2) / (2 - beta) ds; s = d sinh(tau)
// makes the integrand cosh(tau)^(1 - beta), analytic in a strip of width pi.
double riesz_segment(double beta, Vec2 x, Vec2 a, Vec2 b) {
  const Vec2 pa = a - x;
  const Vec2 e = b - a;
  const double l = norm(e);
  const Vec2 t = e / l;
  const double ua = dot(pa, t), ub = ua + l;
  const double h = cross(pa, t);
  const double d = std::abs(h);
  const double scale = std::max({l, std::abs(ua), std::abs(ub)});
  if (d <= 1e-14 * scale) return 0.0;
  const double ta = std::asinh(ua / d), tb = std::asinh(ub / d);
  const double span = tb - ta;
  const int pieces = std::max(1, static_cast<int>(std::ceil(span)));
  const double len = span / pieces;
  const int n = len <= 0.05 ? 4 : len <= 0.2 ? 6 : len <= 0.5 ? 8 : 10;
  const auto gl = gauss_legendre(n);
  const double ex = 1.0 - beta;
  double I = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double mid = ta + (p + 0.5) * len;
    double s = 0.0;
    for (const GaussNode& g : gl) s += g.w * std::pow(std::cosh(mid + 0.5 * len * g.x), ex);
    I += 0.5 * len * s;
  }
  return h * std::pow(d, ex) / (2.0 - beta) * I;
}

}  // namespace

std::string to_string(QuadMethod m) {
  return m == QuadMethod::Triangulated ? "triangulated" : "edge-polar";
}

QuadMethod parse_quad_method(const std::string& s) {
  if (s == "triangulated") return QuadMethod::Triangulated;
  if (s == "edge-polar") return QuadMethod::EdgePolar;
  throw ConfigError("unknown quadrature method '" + s + "' (expected triangulated or edge-polar)");
}

void QuadratureSpec::validate() const {
  if (!triangle_rule_exists(order))
    throw ConfigError("quad.order must be one of 1, 3, 6, 7, 12; got " + std::to_string(order));
  if (depth < 0 || depth > 12) throw ConfigError("quad.depth must be in [0, 12]");
  if (!(factor > 0.0)) throw ConfigError("quad.factor must be positive");
  if (arc < 4) throw ConfigError("quad.arc must be at least 4");
}

ExternalPotential ExternalPotential::radial(double c, double p) {
  if (!(p >= 2.0)) throw ConfigError("radial external potential needs p >= 2 to be C^2");
  return ExternalPotential(Kind::Radial, c, {}, p);
}

ExternalPotential ExternalPotential::parse(const std::string& spec) {
  if (spec == "zero") return zero();
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("unknown external potential '" + spec + "'");
  std::string head = spec.substr(0, colon), arg = spec.substr(colon + 1);
  auto comma = arg.find(',');
  if (head == "const") return constant(parse_num(arg, "f = " + spec));
  if (head == "linear" || head == "radial") {
    if (comma == std::string::npos) throw ConfigError("f = " + spec + " needs two comma-separated values");
    double u = parse_num(arg.substr(0, comma), "f = " + spec);
    double v = parse_num(arg.substr(comma + 1), "f = " + spec);
    return head == "linear" ? linear({u, v}) : radial(u, v);
  }
  throw ConfigError("unknown external potential '" + spec + "' (expected zero, const:c, linear:a1,a2, radial:c,p)");
}

double ExternalPotential::operator()(Vec2 x) const {
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Constant: return c_;
    case Kind::Linear: return dot(a_, x);
    case Kind::Radial: return c_ * std::pow(norm2(x), 0.5 * p_);
  }
  return 0.0;
}

std::string ExternalPotential::describe() const {
  switch (kind_) {
    case Kind::Zero: return "zero";
    case Kind::Constant: return "const:" + fmt(c_);
    case Kind::Linear: return "linear:" + fmt(a_.x) + "," + fmt(a_.y);
    case Kind::Radial: return "radial:" + fmt(c_) + "," + fmt(p_);
  }
  return "";
}

double edge_polar_segment(const Kernel& kernel, Vec2 x, Vec2 a, Vec2 b) {
  if (kernel.kind() == Kernel::Kind::Riesz) return riesz_segment(kernel.beta(), x, a, b);
  return log_segment(x, a, b, safe_log2(a - x), safe_log2(b - x));
}

PotentialEvaluator::PotentialEvaluator(const Triangulation& tri, const Kernel& kernel,
                                       const QuadratureSpec& spec)
    : tri_(tri), kernel_(kernel), spec_(spec) {
  spec_.validate();
  for (const auto& loop : tri_.loops) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      Vec2 a = tri_.points[loop[i]], b = tri_.points[loop[(i + 1) % n]];
      double c = cross(a, b);
      area_ += 0.5 * c;
      m2_ += c * (norm2(a) + dot(a, b) + norm2(b)) / 12.0;
    }
  }
}

double PotentialEvaluator::edge_polar(Vec2 x) const {
  double sum = 0.0;
  const bool riesz = kernel_.kind() == Kernel::Kind::Riesz;
  for (const auto& loop : tri_.loops) {
    const std::size_t n = loop.size();
    if (riesz) {
      for (std::size_t i = 0; i < n; ++i)
        sum += riesz_segment(kernel_.beta(), x, tri_.points[loop[i]], tri_.points[loop[(i + 1) % n]]);
      continue;
    }
    Vec2 a = tri_.points[loop[0]];
    const double l0 = safe_log2(a - x);
    double la = l0;
    for (std::size_t i = 0; i < n; ++i) {
      Vec2 b = tri_.points[loop[(i + 1) % n]];
      const double lb = i + 1 == n ? l0 : safe_log2(b - x);
      sum += log_segment(x, a, b, la, lb);
      a = b;
      la = lb;
    }
  }
  return sum;
}

double PotentialEvaluator::cell(Vec2 a, Vec2 b, Vec2 c, Vec2 x, int level) const {
  const double area2 = cross(b - a, c - a);
  if (area2 == 0.0) return 0.0;
  const Vec2 g = (a + b + c) / 3.0;
  const double diam = std::max({norm(b - a), norm(c - b), norm(a - c)});
  if (norm(x - g) > spec_.factor * diam) {
    double s = 0.0;
    for (const TriangleNode& q : triangle_rule(spec_.order)) {
      Vec2 y = a * q.l0 + b * q.l1 + c * q.l2;
      s += q.w * kernel_.radial(norm(y - x));
    }
    return 0.5 * area2 * s;
  }
  if (level < spec_.depth) {
    const Vec2 ab = (a + b) * 0.5, bc = (b + c) * 0.5, ca = (c + a) * 0.5;
    return cell(a, ab, ca, x, level + 1) + cell(ab, b, bc, x, level + 1) +
           cell(ca, bc, c, x, level + 1) + cell(ab, bc, ca, x, level + 1);
  }
  return edge_polar_segment(kernel_, x, a, b) + edge_polar_segment(kernel_, x, b, c) +
         edge_polar_segment(kernel_, x, c, a);
}

double PotentialEvaluator::triangulated(Vec2 x) const {
  double sum = 0.0;
  for (std::size_t t = 0; t < tri_.triangles.size(); ++t)
    sum += tri_.orientation[t] * cell(tri_.vertex(t, 0), tri_.vertex(t, 1), tri_.vertex(t, 2), x, 0);
  return sum;
}

double PotentialEvaluator::singular_part(Vec2 x) const {
  return spec_.method == QuadMethod::EdgePolar ? edge_polar(x) : triangulated(x);
}

double PotentialEvaluator::corrector_part(Vec2 x) const {
  if (kernel_.kind() != Kernel::Kind::NeumannDisk) return 0.0;
  const double R = kernel_.radius(), R2 = R * R;
  const double rx = norm(x);
  if (rx > R * (1.0 + 1e-12)) throw DomainError("neumann-disk potential evaluated outside the disk");
  const double tail = (rx * rx * area_ + m2_) / (4.0 * kPi * R2) + kernel_.normalization() * area_;
  if (rx >= 0.25 * R) {
    // int_E R(x, y) dy through the image point x* = x R^2 / |x|^2.
    const Vec2 xs = x * (R2 / (rx * rx));
    return edge_polar(xs) - area_ / (2.0 * kPi) * std::log(rx / R) + tail;
  }
  // Near the centre the image point runs off; integrate Re Log(1 - conj(x) y / R^2)
  // over E as (1/2i) times the contour integral of Log(1 - c z) conj(z) dz.
  using C = std::complex<double>;
  const C c(x.x / R2, -x.y / R2);
  const auto gl = gauss_legendre(16);
  C I(0.0, 0.0);
  for (const auto& loop : tri_.loops) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i) {
      Vec2 a = tri_.points[loop[i]], b = tri_.points[loop[(i + 1) % n]];
      const C za(a.x, a.y), dz(b.x - a.x, b.y - a.y);
      C s(0.0, 0.0);
      for (const GaussNode& g : gl) {
        C z = za + dz * (0.5 * (g.x + 1.0));
        s += g.w * std::log(1.0 - c * z) * std::conj(z);
      }
      I += 0.5 * s * dz;
    }
  }
  const double smooth = (I / C(0.0, 2.0)).real();
  return -area_ / (2.0 * kPi) * std::log(R) - smooth / (2.0 * kPi) + tail;
}

double PotentialEvaluator::operator()(Vec2 x) const { return singular_part(x) + corrector_part(x); }

double phi(const Region& region, const Kernel& kernel, Vec2 x, const QuadratureSpec& spec) {
  kernel.check_domain(region.domain());
  PotentialEvaluator ev(triangulate(region, spec.arc), kernel, spec);
  return ev(x);
}

std::vector<std::vector<double>> phi_on_boundary(const Region& region, const Kernel& kernel,
                                                 const QuadratureSpec& spec) {
  kernel.check_domain(region.domain());
  PotentialEvaluator ev(triangulate(region, spec.arc), kernel, spec);
  std::vector<std::vector<double>> out(region.size());
  for (std::size_t c = 0; c < region.size(); ++c) {
    const auto& v = region.component(c).vertices;
    out[c].resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[c][i] = ev(v[i]);
  }
  return out;
}

}  // namespace okflow
