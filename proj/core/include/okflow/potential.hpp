#pragma once

#include <string>
#include <vector>

#include "okflow/geometry.hpp"
#include "okflow/kernels.hpp"
#include "okflow/triangulate.hpp"
#include "okflow/vec2.hpp"

namespace okflow {

enum class QuadMethod {
  // Triangle rule on far cells, recursive subdivision near x, and polar
  // integration about x on the finest near cells.
  Triangulated,
  // Polar fan about x over every boundary edge; closed form for the log
  // kernel, Gauss-Legendre in a sinh-substituted variable for Riesz.
  EdgePolar,
};

std::string to_string(QuadMethod m);
QuadMethod parse_quad_method(const std::string& s);

struct QuadratureSpec {
  int order = 7;        // nodes per triangle
  int depth = 4;        // near-cell subdivision levels
  double factor = 2.0;  // near radius in triangle diameters
  QuadMethod method = QuadMethod::Triangulated;
  int arc = 1024;  // disk-boundary samples per full turn

  void validate() const;
  static QuadratureSpec edge_polar() {
    QuadratureSpec s;
    s.method = QuadMethod::EdgePolar;
    return s;
  }
};

class ExternalPotential {
 public:
  enum class Kind { Zero, Constant, Linear, Radial };

  static ExternalPotential zero() { return ExternalPotential(Kind::Zero, 0.0, {}, 0.0); }
  static ExternalPotential constant(double c) { return ExternalPotential(Kind::Constant, c, {}, 0.0); }
  static ExternalPotential linear(Vec2 a) { return ExternalPotential(Kind::Linear, 0.0, a, 0.0); }
  // f(x) = c |x|^p with p >= 2 so that f is C^2.
  static ExternalPotential radial(double c, double p);
  // "zero", "const:c", "linear:a1,a2", "radial:c,p"; throws ConfigError.
  static ExternalPotential parse(const std::string& spec);

  Kind kind() const { return kind_; }
  bool is_zero() const { return kind_ == Kind::Zero || (kind_ == Kind::Constant && c_ == 0.0); }
  // Invariant under rotations about the origin.
  bool is_radial() const { return kind_ != Kind::Linear; }
  double operator()(Vec2 x) const;
  std::string describe() const;

 private:
  ExternalPotential(Kind k, double c, Vec2 a, double p) : kind_(k), c_(c), a_(a), p_(p) {}
  Kind kind_;
  double c_;
  Vec2 a_;
  double p_;
};

// phi_E(x) = int_E G(x, y) dy for a fixed triangulated region.
class PotentialEvaluator {
 public:
  PotentialEvaluator(const Triangulation& tri, const Kernel& kernel, const QuadratureSpec& spec);

  double operator()(Vec2 x) const;
  // int_E g(|x - y|) dy, the translation-invariant part of the kernel.
  double singular_part(Vec2 x) const;
  // int_E R(x, y) dy for the Neumann kernel, zero otherwise.
  double corrector_part(Vec2 x) const;

  double enclosed_area() const { return area_; }
  double second_moment() const { return m2_; }
  const Triangulation& triangulation() const { return tri_; }
  const Kernel& kernel() const { return kernel_; }
  const QuadratureSpec& spec() const { return spec_; }

 private:
  Triangulation tri_;
  Kernel kernel_;
  QuadratureSpec spec_;
  double area_ = 0.0;
  double m2_ = 0.0;

  double edge_polar(Vec2 x) const;
  double triangulated(Vec2 x) const;
  double cell(Vec2 a, Vec2 b, Vec2 c, Vec2 x, int level) const;
};

// Signed polar integral of g over the triangle (x, a, b).
double edge_polar_segment(const Kernel& kernel, Vec2 x, Vec2 a, Vec2 b);

double phi(const Region& region, const Kernel& kernel, Vec2 x, const QuadratureSpec& spec = {});

// phi at every vertex of every component.
std::vector<std::vector<double>> phi_on_boundary(const Region& region, const Kernel& kernel,
                                                 const QuadratureSpec& spec = {});

}  // namespace okflow
