#pragma once

// Batch runs driven by a JSON config.

#include <optional>
#include <string>
#include <vector>

#include "ambient.hpp"
#include "criticality.hpp"
#include "flow.hpp"
#include "functionals.hpp"
#include "highdim.hpp"
#include "report.hpp"
#include "surface.hpp"

namespace qll {

enum class Task { kEval, kResidual, kFlow, kSweep, kVarcheck };
Task parse_task(const std::string& name);
const char* to_string(Task task);

struct SpaceSpec {
  std::string name;
  Params params;
  DerivativeMode derivative = DerivativeMode::kAnalytic;
  double fd_step = 0.0;
  std::optional<double> electric_charge;  // attaches a point charge
  double magnetic_charge = 0.0;
  std::optional<double> Lambda;
  std::optional<double> beta;
};

struct SurfaceSpec {
  enum class Kind { kSphere, kEllipsoid, kPerturbed, kMesh } kind =
      Kind::kSphere;
  double radius = 1.0;
  Vec3d center{0.0, 0.0, 0.0};
  Vec3d axes{1.0, 1.0, 1.0};
  std::vector<SurfaceMesh::Harmonic> modes;
  std::string path;
};

struct SweepSpec {
  std::string model;
  int n = 3;
  Params params;
  double charge = 0.0;
  std::vector<double> radii;
};

struct VarcheckSpec {
  ResidualMode mode = ResidualMode::kHawking;
  enum class Lapse { kRandom, kHarmonic, kConstant } lapse = Lapse::kRandom;
  int degree = 4;
  unsigned seed = 1;
  int l = 2, m = 0;
  double constant = 1.0;
  std::vector<double> s{1e-3, 5e-4};
};

struct RunConfig {
  Task task = Task::kEval;
  std::optional<SpaceSpec> space;
  std::optional<SurfaceSpec> surface;
  int ntheta = 48, nphi = 96;
  std::optional<double> lambda;  // multiplier for the f integrals
  ResidualMode residual_mode = ResidualMode::kHawking;
  std::optional<double> residual_lambda;  // empty: least-squares lambda*
  bool dump_nodes = false;
  FlowConfig flow;
  SweepSpec sweep;
  VarcheckSpec varcheck;
  std::string out_dir = ".";
  std::string format = "json";
};

// Config errors name the line (syntax) or the field path (content). A task
// override must agree with the config's own task field when both are given.
RunConfig parse_run_config(const std::string& text,
                           std::optional<Task> task = std::nullopt);
void validate(const RunConfig& config);

AmbientSpace build_space(const SpaceSpec& spec);
SurfaceMesh build_mesh(const SurfaceSpec& spec, int ntheta, int nphi);

struct EnergyReport {
  int ntheta = 0, nphi = 0;
  std::string space;
  Params params;
  double area = 0.0;
  double willmore_integral = 0.0;
  double p_integral = 0.0;
  double hawking_functional = 0.0;
  double hawking_energy = 0.0;
  std::optional<ChargedEnergy> charged;
  std::optional<double> Lambda, lambda_energy;
  std::optional<double> brown_york;
  std::string brown_york_note;
  double lambda = 0.0;
  std::string lambda_source;  // "user" or "lambda_star"
  std::optional<double> beta;
  std::optional<FIntegrals> f;  // empty when H > 0 fails
  std::string hypothesis_violation;
  double gauss_bonnet_defect = 0.0;
  double dec_min = 0.0;
};

EnergyReport energy_report(const AmbientSpace& space, const SurfaceGeometry& geom,
                           const SpaceSpec& spec,
                           std::optional<double> lambda = std::nullopt);
JsonObject to_json(const EnergyReport& rep);
JsonObject to_json(const ResidualReport& rep);
JsonObject to_json(const RadialSphereReport& rep);
JsonObject to_json(const VariationCheck& check);

struct RunResult {
  int exit_code = 0;  // 0 ok, 2 hypothesis violation
  std::vector<std::string> files;
  std::string message;
};

// Writes the artifacts of one task into config.out_dir.
RunResult run(const RunConfig& config);

}  // namespace qll
