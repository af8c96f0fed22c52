#pragma once

#include "okflow/geometry.hpp"
#include "okflow/kernels.hpp"
#include "okflow/potential.hpp"
#include "okflow/triangulate.hpp"

namespace okflow {

struct EnergyBreakdown {
  double perimeter = 0.0;
  double nonlocal = 0.0;  // int_E int_E G
  double external = 0.0;  // int_E f
  double gamma = 0.0;
  double total = 0.0;
};

// E = P(E, Omega) + gamma * int_E phi_E + int_E f. When `layout` is given its
// connectivity is reused (moved to the region's vertices), which keeps the
// quadrature error smooth across nearby shapes.
EnergyBreakdown energy(const Region& region, const Kernel& kernel, double gamma,
                       const ExternalPotential& f, const QuadratureSpec& spec = {},
                       const Triangulation* layout = nullptr);

// int_E phi_E. The triangulated method applies the triangle rule of `order`
// nodes to phi; the edge-polar method integrates the translation-invariant
// part as a double boundary integral and only the smooth Neumann corrector
// with the triangle rule.
double nonlocal_energy(const PotentialEvaluator& phi, int order);
double external_energy(const Triangulation& tri, const ExternalPotential& f, int order);

}  // namespace okflow
