#pragma once

#include <string>
#include <vector>

#include "okflow/geometry.hpp"
#include "okflow/kernels.hpp"
#include "okflow/potential.hpp"

namespace okflow {

struct FlowConfig {
  double dt = 0.0;       // fixed step; 0 selects dt = cfl * min(w)^2
  double cfl = 0.4;
  int max_steps = 20000;
  double tol = 1e-3;     // stop when sup |r| < tol
  int resample = 50;     // resample every this many steps; 0 never
  bool project = true;   // exact area restoration by a uniform normal offset
  int max_halvings = 10;
  QuadratureSpec quad = QuadratureSpec::edge_polar();

  void validate() const;
};

struct FlowStepRecord {
  int step = 0;
  double energy = 0.0;
  double area = 0.0;
  double sup_residual = 0.0;
  double dt = 0.0;
  int halvings = 0;
  double energy_change = 0.0;  // E(after) - E(before), same triangulation
  double area_drift = 0.0;     // |A(after) - A(before)| / A(initial)
  double max_displacement = 0.0;
};

struct StationarityReport {
  double lambda_ls = 0.0;
  double lambda_Y = 0.0;
  std::vector<std::vector<double>> residual;  // H + 2 gamma phi + f - lambda_ls
  double sup_residual = 0.0;
  double l2_residual = 0.0;  // (sum w r^2)^(1/2)
  double perimeter = 0.0;
  std::vector<double> energy_history;
  std::vector<double> area_drift_history;
  std::vector<FlowStepRecord> trace;
  bool converged = false;
  int steps = 0;
  int halvings = 0;
  double max_energy_increase = 0.0;  // largest per-step increase relative to |E|
  double max_area_drift = 0.0;
  std::string failure;
};

struct StepResult {
  Region region;
  double dt = 0.0;
  int halvings = 0;
  double max_displacement = 0.0;
};

// One explicit step v -= dt r nu with area restoration; rejected steps are
// retried with dt halved up to `max_halvings` times, then StepTooLarge.
StepResult step(const Region& region, const Kernel& kernel, double gamma, const ExternalPotential& f,
                const FlowConfig& config, double dt, double target_area = 0.0);

struct FlowResult {
  Region region;
  StationarityReport report;
};

FlowResult run(const Region& region, const Kernel& kernel, double gamma, const ExternalPotential& f,
               const FlowConfig& config);

// Standalone stationarity check; shares nothing with the flow.
StationarityReport el_residual(const Region& region, const Kernel& kernel, double gamma,
                               const ExternalPotential& f, const QuadratureSpec& spec = {});

// Moves every vertex by delta along its vertex normal with delta chosen so the
// area equals `target`.
Region restore_area(const Region& region, double target);

}  // namespace okflow
