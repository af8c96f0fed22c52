#pragma once

#include <string>

#include "okflow/geometry.hpp"
#include "okflow/vec2.hpp"

namespace okflow {

class Kernel {
 public:
  enum class Kind { NewtonianLog, Riesz, NeumannDisk };

  static Kernel log();
  // 0 < beta < 1.
  static Kernel riesz(double beta);
  // Neumann function of the disk of radius R centred at the origin.
  static Kernel neumann_disk(double radius);
  // "log", "riesz:<beta>", "neumann-disk:<R>"; throws ConfigError.
  static Kernel parse(const std::string& spec);

  Kind kind() const { return kind_; }
  double beta() const { return beta_; }
  double radius() const { return radius_; }
  std::string describe() const;

  double eval(Vec2 x, Vec2 y) const;
  // Smooth part R of the Neumann kernel.
  double corrector(Vec2 x, Vec2 y) const;
  // Additive constant C0 of R; chosen so that G(., y) integrates to zero over the disk.
  double normalization() const;

  // Radial profile of the singular part: g(r) with G = g(|x - y|) (+ R).
  double radial(double r) const;
  // F(rho) = int_0^rho g(r) r dr.
  double radial_moment(double rho) const;

  // Throws ConfigError when the kernel cannot be used on the domain.
  void check_domain(const Domain& d) const;

  bool operator==(const Kernel&) const = default;

 private:
  Kernel(Kind k, double b, double r) : kind_(k), beta_(b), radius_(r) {}
  Kind kind_;
  double beta_;
  double radius_;
};

}  // namespace okflow
