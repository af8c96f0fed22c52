#include "okflow/quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "okflow/errors.hpp"

namespace okflow {

namespace {

void push3(std::vector<TriangleNode>& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  r.push_back({a, a, b, w});
  r.push_back({a, b, a, w});
  r.push_back({b, a, a, w});
}

void push6(std::vector<TriangleNode>& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  r.push_back({a, b, c, w});
  r.push_back({a, c, b, w});
  r.push_back({b, a, c, w});
  r.push_back({b, c, a, w});
  r.push_back({c, a, b, w});
  r.push_back({c, b, a, w});
}

struct Rules {
  std::vector<TriangleNode> r1, r3, r6, r7, r12;
  Rules() {
    r1.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0});
    push3(r3, 1.0 / 6, 1.0 / 3);
    push3(r6, 0.445948490915965, 0.223381589678011);
    push3(r6, 0.091576213509771, 0.109951743655322);
    const double s15 = std::sqrt(15.0);
    r7.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225});
    push3(r7, (6.0 - s15) / 21.0, (155.0 - s15) / 1200.0);
    push3(r7, (6.0 + s15) / 21.0, (155.0 + s15) / 1200.0);
    push3(r12, 0.249286745170910, 0.116786275726379);
    push3(r12, 0.063089014491502, 0.050844906370207);
    push6(r12, 0.053145049844817, 0.310352451033784, 0.082851075618374);
    // Renormalize the tabulated weights to sum exactly to one.
    for (auto* r : {&r6, &r12}) {
      double s = 0.0;
      for (auto& n : *r) s += n.w;
      for (auto& n : *r) n.w /= s;
    }
  }
};

const Rules& rules() {
  static const Rules r;
  return r;
}

struct GaussTable {
  std::array<std::vector<GaussNode>, 65> t;
  GaussTable() {
    for (int n = 1; n <= 64; ++n) {
      auto& nodes = t[n];
      nodes.resize(n);
      for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
          double p0 = 1.0, p1 = x;
          for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
          }
          if (n == 1) p0 = 1.0;
          dp = n * (x * p1 - p0) / (x * x - 1.0);
          double dx = p1 / dp;
          x -= dx;
          if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
      }
      if (n == 1) nodes[0] = {0.0, 2.0};
    }
  }
};

}  // namespace

bool triangle_rule_exists(int nodes) {
  return nodes == 1 || nodes == 3 || nodes == 6 || nodes == 7 || nodes == 12;
}

int triangle_rule_degree(int nodes) {
  switch (nodes) {
    case 1: return 1;
    case 3: return 2;
    case 6: return 4;
    case 7: return 5;
    case 12: return 6;
    default: return -1;
  }
}

std::span<const TriangleNode> triangle_rule(int nodes) {
  const Rules& r = rules();
  switch (nodes) {
    case 1: return r.r1;
    case 3: return r.r3;
    case 6: return r.r6;
    case 7: return r.r7;
    case 12: return r.r12;
    default: throw ConfigError("no triangle rule with " + std::to_string(nodes) + " nodes");
  }
}

std::span<const GaussNode> gauss_legendre(int n) {
  static const GaussTable table;
  if (n < 1 || n > 64) throw ConfigError("gauss_legendre: n out of range");
  return table.t[n];
}

}  // namespace okflow
