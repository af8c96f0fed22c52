#include "okflow/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "okflow/errors.hpp"

namespace okflow {

namespace {

constexpr double kInv2Pi = 0.5 / std::numbers::pi;

double parse_number(const std::string& s, const std::string& what) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v))
    throw ConfigError("invalid number '" + s + "' in " + what);
  return v;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Kernel Kernel::log() { return Kernel(Kind::NewtonianLog, 0.0, 0.0); }

Kernel Kernel::riesz(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw ConfigError("riesz kernel requires beta in (0,1), got " + fmt(beta));
  return Kernel(Kind::Riesz, beta, 0.0);
}

Kernel Kernel::neumann_disk(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ConfigError("neumann-disk kernel requires a positive radius");
  return Kernel(Kind::NeumannDisk, 0.0, radius);
}

Kernel Kernel::parse(const std::string& spec) {
  if (spec == "log") return log();
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "riesz") return riesz(parse_number(arg, "kernel '" + spec + "'"));
  if (head == "neumann-disk") return neumann_disk(parse_number(arg, "kernel '" + spec + "'"));
  throw ConfigError("unknown kernel '" + spec + "' (expected log, riesz:<beta>, neumann-disk:<R>)");
}

std::string Kernel::describe() const {
  switch (kind_) {
    case Kind::NewtonianLog: return "log";
    case Kind::Riesz: return "riesz:" + fmt(beta_);
    case Kind::NeumannDisk: return "neumann-disk:" + fmt(radius_);
  }
  return "";
}

double Kernel::radial(double r) const {
  if (kind_ == Kind::Riesz) return std::pow(r, -beta_);
  return -kInv2Pi * std::log(r);
}

double Kernel::radial_moment(double rho) const {
  if (rho <= 0.0) return 0.0;
  if (kind_ == Kind::Riesz) return std::pow(rho, 2.0 - beta_) / (2.0 - beta_);
  const double r2 = rho * rho;
  return -0.25 * kInv2Pi * (r2 * std::log(r2) - r2);
}

double Kernel::normalization() const {
  if (kind_ != Kind::NeumannDisk) return 0.0;
  return (std::log(radius_) - 0.375) / std::numbers::pi;
}

double Kernel::corrector(Vec2 x, Vec2 y) const {
  if (kind_ != Kind::NeumannDisk) return 0.0;
  const double R = radius_;
  const double lim = R * (1.0 + 1e-12);
  if (norm(x) > lim || norm(y) > lim) throw DomainError("neumann-disk point outside the disk");
  const double R2 = R * R;
  const double x2 = norm2(x), y2 = norm2(y);
  // (|y|/R)^2 |x - y*|^2 written without the image point, regular at y = 0.
  const double q = x2 * y2 / R2 - 2.0 * dot(x, y) + R2;
  return -0.5 * kInv2Pi * std::log(q) + (x2 + y2) / (4.0 * std::numbers::pi * R2) + normalization();
}

double Kernel::eval(Vec2 x, Vec2 y) const {
  const double r = norm(x - y);
  if (r == 0.0) throw SingularityError("kernel evaluated at coincident points");
  if (kind_ == Kind::NeumannDisk) return radial(r) + corrector(x, y);
  return radial(r);
}

void Kernel::check_domain(const Domain& d) const {
  if (kind_ != Kind::NeumannDisk) return;
  if (!d.is_disk()) throw ConfigError("neumann-disk kernel requires a disk domain");
  if (std::abs(d.radius() - radius_) > 1e-12 * radius_)
    throw ConfigError("neumann-disk radius does not match the domain radius");
}

}  // namespace okflow
