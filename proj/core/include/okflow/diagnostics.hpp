#pragma once

#include <cstddef>
#include <vector>

#include "okflow/geometry.hpp"
#include "okflow/kernels.hpp"
#include "okflow/potential.hpp"
#include "okflow/variation.hpp"

namespace okflow {

// k = 1 and alpha_1 = 2: the measure of the unit 1-disk.
inline constexpr double kAlpha1 = 2.0;

// Length of the boundary inside the open ball B_rho(x), by exact
// segment-circle clipping of every edge.
double boundary_length_in_ball(const Region& region, Vec2 x, double rho);

// boundary_length_in_ball / (alpha_1 rho). Throws DomainError unless B_rho(x) lies in the domain.
double density_ratio(const Region& region, Vec2 x, double rho);

struct AllardReport {
  Vec2 center;
  double radius = 0.0;
  double p = 2.0;
  double delta = 0.0;
  double density_ratio = 0.0;
  // (int_{B_rho} |H|^p)^(1/p) rho^(1 - 1/p) with |H| = |2 gamma phi + f - lambda_ls|.
  double curvature_norm = 0.0;
  bool support_pass = false;  // x on the boundary; multiplicity is one by construction
  bool density_pass = false;  // density ratio <= 1 + delta
  bool curvature_pass = false;
  bool passed() const { return support_pass && density_pass && curvature_pass; }
};

// Curvature data of one region shared by many (x, rho) probes.
class AllardProbe {
 public:
  AllardProbe(const Region& region, const Kernel& kernel, double gamma, const ExternalPotential& f,
              const QuadratureSpec& spec = QuadratureSpec::edge_polar());

  // Throws ConfigError unless p > 1 and delta > 0, DomainError as density_ratio.
  AllardReport check(Vec2 x, double rho, double p, double delta) const;

  // |lambda_ls| + 2 gamma sup|phi| + sup|f| over the boundary samples.
  double c0() const { return c0_; }
  // delta c0^-1 2^(-1/p) alpha_1^(-1/p): below this radius the curvature line
  // holds whenever the density line does.
  double safe_radius(double p, double delta) const;
  double lambda() const { return lambda_; }
  const Region& region() const { return region_; }

 private:
  Region region_;
  // |H| at vertices and edge midpoints, interpolated linearly on each half edge.
  std::vector<std::vector<double>> h_vertex_, h_mid_;
  double lambda_ = 0.0;
  double c0_ = 0.0;
};

AllardReport allard_check(const Region& region, const Kernel& kernel, double gamma,
                          const ExternalPotential& f, Vec2 x, double rho, double p, double delta,
                          const QuadratureSpec& spec = QuadratureSpec::edge_polar());

struct VertexScan {
  std::size_t component = 0;
  std::size_t vertex = 0;
  bool passed = false;
  double radius = 0.0;  // largest passing radius, or the smallest probed one on failure
  AllardReport report;  // report at `radius`
};

struct AllardScan {
  double p = 2.0;
  double delta = 0.0;
  std::vector<double> radii;
  std::vector<VertexScan> vertices;
  std::size_t failures() const;
};

// Probes every vertex not lying on the domain boundary with
// rho_max, rho_max / 2, ... (`levels` radii), skipping radii whose ball leaves the domain.
AllardScan allard_scan(const AllardProbe& probe, double p, double delta, double rho_max, int levels);

}  // namespace okflow
