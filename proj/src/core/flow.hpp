#pragma once

#include <string>
#include <vector>

#include "criticality.hpp"
#include "surface.hpp"

namespace qll {

struct FlowConfig {
  ResidualMode mode = ResidualMode::kWillmore;
  double target_area = 0.0;  // <= 0: area of the initial mesh
  double initial_step = 0.1;
  int max_steps = 5000;
  double residual_tol = 1e-5;
  double backtrack = 0.5;
  int max_backtracks = 40;
  double growth = 2.0;
  double max_step = 1e3;
  // Smoothing of the speed by (1 + l(l+1))^-2 on spherical harmonics; when
  // false the raw L2 speed is used.
  bool precondition = true;
};

struct FlowRecord {
  int step = 0;
  double functional = 0.0;
  double area = 0.0;
  double residual = 0.0;  // l2 of the lambda*-projected residual
  double step_size = 0.0;
};

enum class FlowStatus { kConverged, kMaxSteps, kStagnated, kDegenerate };
const char* to_string(FlowStatus status);

struct FlowState {
  SurfaceMesh mesh;
  FlowStatus status = FlowStatus::kMaxSteps;
  int step_index = 0;
  double functional = 0.0;
  double area = 0.0;
  double residual = 0.0;
  double lambda_star = 0.0;
  std::string message;
  std::vector<FlowRecord> history;
};

// Area-neutral normal speed (1/2) R_lambda*, the negative L2 gradient of the
// functional restricted to int H alpha = 0.
Field descent_speed(const SurfaceGeometry& geom, ResidualMode mode);

FlowState run_flow(const AmbientSpace& space, const FlowConfig& config,
                   const SurfaceMesh& initial);

}  // namespace qll
