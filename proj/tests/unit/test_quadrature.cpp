#include <doctest.h>

#include <cmath>

#include "okflow/quadrature.hpp"

using namespace okflow;

namespace {
// Exact int over the reference triangle (0,0),(1,0),(0,1) of x^i y^j = i! j! / (i+j+2)!.
double monomial(int i, int j) {
  return std::tgamma(i + 1.0) * std::tgamma(j + 1.0) / std::tgamma(i + j + 3.0);
}
}  // namespace

TEST_CASE("triangle rules integrate polynomials up to their degree") {
  for (int n : {1, 3, 6, 7, 12}) {
    REQUIRE(triangle_rule_exists(n));
    const int deg = triangle_rule_degree(n);
    double wsum = 0.0;
    for (const TriangleNode& q : triangle_rule(n)) wsum += q.w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
    for (int i = 0; i <= deg; ++i)
      for (int j = 0; i + j <= deg; ++j) {
        double s = 0.0;
        for (const TriangleNode& q : triangle_rule(n)) s += q.w * std::pow(q.l1, i) * std::pow(q.l2, j);
        CHECK(0.5 * s == doctest::Approx(monomial(i, j)).epsilon(1e-13));
      }
  }
  CHECK_FALSE(triangle_rule_exists(5));
}

TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto g = gauss_legendre(n);
    REQUIRE(g.size() == static_cast<std::size_t>(n));
    for (int k = 0; k <= 2 * n - 1 && k <= 40; ++k) {
      double s = 0.0;
      for (const GaussNode& q : g) s += q.w * std::pow(q.x, k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13));
    }
  }
}
