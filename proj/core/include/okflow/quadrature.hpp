#pragma once

#include <span>
#include <vector>

namespace okflow {

struct TriangleNode {
  double l0, l1, l2;  // barycentric coordinates
  double w;           // weights sum to 1
};

// Symmetric triangle rules with 1, 3, 6, 7 or 12 nodes (degrees 1, 2, 4, 5, 6).
std::span<const TriangleNode> triangle_rule(int nodes);
bool triangle_rule_exists(int nodes);
int triangle_rule_degree(int nodes);

struct GaussNode {
  double x;  // in [-1, 1]
  double w;
};

// Gauss-Legendre rule with n points, 1 <= n <= 64.
std::span<const GaussNode> gauss_legendre(int n);

}  // namespace okflow
