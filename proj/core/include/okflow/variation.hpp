#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "okflow/geometry.hpp"
#include "okflow/kernels.hpp"
#include "okflow/potential.hpp"
#include "okflow/triangulate.hpp"
#include "okflow/vec2.hpp"

namespace okflow {

// A C^1 vector field with its Jacobian, m(i, j) = d X_i / d x_j.
class TestField {
 public:
  using ValueFn = std::function<Vec2(Vec2)>;
  using JacobianFn = std::function<Mat2(Vec2)>;

  // X(x) = d (1 - |x - c|^2 / r^2)_+^2.
  static TestField bump(Vec2 center, double radius, Vec2 direction);
  // Bump whose normal component w.r.t. the disk |x| = R is multiplied by a C^1
  // cutoff of the distance to the boundary (zero on it, one beyond `width`).
  static TestField tangential_bump(Vec2 center, double radius, Vec2 direction,
                                   double domain_radius, double width = 0.25);
  static TestField custom(ValueFn value, JacobianFn jacobian = {}, std::string name = "custom");
  static TestField zero();
  static TestField translation(Vec2 v);
  static TestField dilation(Vec2 center = {});
  static TestField rotation(Vec2 center = {});

  Vec2 operator()(Vec2 x) const { return value_(x); }
  // Throws ConfigError when no Jacobian was supplied.
  Mat2 jacobian(Vec2 x) const;
  bool has_jacobian() const { return static_cast<bool>(jacobian_); }
  const std::string& describe() const { return name_; }
  // Ball containing the support, when known.
  const std::optional<std::pair<Vec2, double>>& support() const { return support_; }

  TestField operator+(const TestField& o) const;
  TestField scaled(double s) const;

 private:
  ValueFn value_;
  JacobianFn jacobian_;
  std::string name_;
  std::optional<std::pair<Vec2, double>> support_;
};

// `count` random bumps centred near boundary vertices, radius in
// [0.2, 0.5] * scale, unit direction; tangential bumps on a disk domain.
// Deterministic for a given seed.
std::vector<TestField> bump_battery(const Region& region, std::size_t count, std::uint64_t seed,
                                    double scale = 1.0);

// Throws ConstraintError unless |X . nu_Omega| < 1e-12 on sampled disk boundary points.
void check_tangential(const TestField& X, const Domain& domain, int samples = 720);

struct VariationResult {
  double perimeter = 0.0;  // first variation of length
  double nonlocal = 0.0;   // 2 gamma int phi X . nu
  double external = 0.0;   // int f X . nu
  double total = 0.0;
};

// div X - nu . DX nu at every vertex, from the field's exact Jacobian.
std::vector<double> tangential_divergence(const PlanarCurve& curve, const TestField& X,
                                          const VertexGeometry& g);

// Boundary data shared by every variation of one region: phi at vertices and
// edge midpoints, vertex geometry, and the least-squares multiplier.
class VariationContext {
 public:
  VariationContext(const Region& region, const Kernel& kernel, double gamma,
                   const ExternalPotential& f, const QuadratureSpec& spec = QuadratureSpec::edge_polar());

  // Exact first variation of the polygonal energy when each vertex moves with
  // X: sum t_e . (X(b) - X(a)) for length, Simpson's rule along each edge for
  // the boundary integrals against the linearly interpolated field.
  VariationResult operator()(const TestField& X) const;
  // int_{dE} X . nu, the first variation of the enclosed area.
  double flux(const TestField& X) const;
  // Boundary integral of (2 gamma phi + f - lambda) X . nu.
  double forcing(const TestField& X, double lambda) const;

  // (int H + 2 gamma phi + f) / P.
  double lambda_ls() const { return lambda_ls_; }
  // H + 2 gamma phi + f - lambda_ls per component and vertex.
  std::vector<std::vector<double>> residual() const;

  const Region& region() const { return region_; }
  const std::vector<VertexGeometry>& geometry() const { return geom_; }
  const std::vector<std::vector<double>>& phi_vertices() const { return phi_v_; }
  const std::vector<std::vector<double>>& phi_midpoints() const { return phi_m_; }
  double gamma() const { return gamma_; }

 private:
  Region region_;
  double gamma_;
  ExternalPotential f_;
  std::vector<VertexGeometry> geom_;
  std::vector<std::vector<double>> phi_v_, phi_m_;
  double lambda_ls_ = 0.0;

  double edge_integral(const TestField& X, bool with_phi, bool with_f, double lambda) const;
};

VariationResult first_variation(const Region& region, const Kernel& kernel, double gamma,
                                const ExternalPotential& f, const TestField& X,
                                const QuadratureSpec& spec = QuadratureSpec::edge_polar());

// One classical RK4 step of x' = X(x) applied to every vertex; on a disk,
// chord endpoints are projected back onto the boundary. Throws StepTooLarge
// if the moved boundary is no longer simple.
Region flow_region(const Region& region, const TestField& X, double t);

// (E(phi_t(E)) - E(phi_-t(E))) / 2t with the triangulation of `region` reused
// for both shapes (built here when `layout` is null).
double fd_variation(const Region& region, const Kernel& kernel, double gamma,
                    const ExternalPotential& f, const TestField& X, double t,
                    const QuadratureSpec& spec = QuadratureSpec::edge_polar(),
                    const Triangulation* layout = nullptr);

struct RichardsonStudy {
  double t = 0.0;
  double fd[3] = {0.0, 0.0, 0.0};  // at t, t/2, t/4
  double order = 0.0;              // log2 of successive difference ratio
  double constant = 0.0;           // C in fd(s) ~ fd(0) + C s^2
  double extrapolated = 0.0;
};

RichardsonStudy richardson_study(const Region& region, const Kernel& kernel, double gamma,
                                 const ExternalPotential& f, const TestField& X, double t,
                                 const QuadratureSpec& spec = QuadratureSpec::edge_polar());

struct ConsistencyCheck {
  VariationResult analytic;
  RichardsonStudy study;
  // max over s in {t, t/2, t/4} of |analytic - fd(s)| - |C| s^2
  double excess = 0.0;
  // False when successive differences sit at round-off, so no order is measurable.
  bool order_resolved = true;
  bool passed = false;  // excess <= abs_tol, and order >= min_order when resolved
};

ConsistencyCheck consistency_check(const Region& region, const Kernel& kernel, double gamma,
                                   const ExternalPotential& f, const TestField& X, double t,
                                   const QuadratureSpec& spec = QuadratureSpec::edge_polar(),
                                   double abs_tol = 1e-4, double min_order = 1.9);

struct VolumeField {
  TestField field;      // rescaled to unit flux
  double raw_flux = 0.0;
  Vec2 center;
  double radius = 0.0;
};

// Rescales X to unit flux; throws NumericalError when |flux| < 1e-10.
VolumeField normalize_volume_field(const Region& region, const TestField& X, Vec2 center = {},
                                   double radius = 0.0);
// Bump straddling the boundary next to the deepest interior triangle centroid.
VolumeField volume_field(const Region& region, int arc_segments = 1024);

struct LagrangeMultiplier {
  double lambda_Y = 0.0;   // first variation of the energy along the unit-flux field
  double lambda_ls = 0.0;  // mean of H + 2 gamma phi + f
  double difference = 0.0;
  double divergence_part = 0.0;  // int div_E Y alone
  VolumeField volume;
};

LagrangeMultiplier lagrange_multiplier(const Region& region, const Kernel& kernel, double gamma,
                                       const ExternalPotential& f,
                                       const QuadratureSpec& spec = QuadratureSpec::edge_polar());
LagrangeMultiplier lagrange_multiplier(const VariationContext& ctx);

// |int div_E X + int (2 gamma phi + f - lambda_ls) X . nu| for a field tangential to the disk.
double orthogonality_defect(const Region& region, const Kernel& kernel, double gamma,
                            const ExternalPotential& f, const TestField& X,
                            const QuadratureSpec& spec = QuadratureSpec::edge_polar());
double orthogonality_defect(const VariationContext& ctx, const TestField& X);

}  // namespace okflow
