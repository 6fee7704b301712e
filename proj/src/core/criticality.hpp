#pragma once

#include <string>
#include <vector>

#include "ambient.hpp"
#include "surface.hpp"

namespace qll {

enum class ResidualMode { kWillmore, kHawking };

ResidualMode parse_residual_mode(const std::string& name);
const char* to_string(ResidualMode mode);

struct ResidualReport {
  ResidualMode mode = ResidualMode::kHawking;
  double lambda = 0.0;       // multiplier used for residual
  double lambda_star = 0.0;  // least-squares multiplier
  Field residual;
  double l2 = 0.0;  // sqrt(int residual^2)
  double linf = 0.0;
};

// Left side of the Euler-Lagrange equation at lambda = 0.
//   willmore: Delta H + H |B°|^2 + H Ric(nu, nu)
//   hawking:  the above + P (nabla_nu tr k - nabla_nu k(nu, nu))
//             - 2 P div(k(., nu)) + H P^2 / 2 - 2 k(grad P, nu)
Field residual_at_zero(const SurfaceGeometry& geom, ResidualMode mode);

// -int R0 H / int H^2
double best_lambda(const SurfaceGeometry& geom, const Field& r0);
double best_lambda(const SurfaceGeometry& geom, ResidualMode mode);

ResidualReport residual_report(const SurfaceGeometry& geom, ResidualMode mode,
                               double lambda);
ResidualReport residual_report_best(const SurfaceGeometry& geom,
                                    ResidualMode mode);

// d/ds of (1/4) int H^2 (willmore) or (1/4) int (H^2 - P^2) (hawking)
// along a normal speed alpha equals int W alpha with W = -R0 / 2.
Field variation_density(const SurfaceGeometry& geom, ResidualMode mode);
double mode_functional(const SurfaceGeometry& geom, ResidualMode mode);

// Radius field moved by s along normal speed alpha.
SurfaceMesh normal_deformation(const SurfaceMesh& mesh,
                               const SurfaceGeometry& geom, const Field& alpha,
                               double s);

struct VariationRow {
  double s = 0.0;
  double difference_quotient = 0.0;
  double analytic = 0.0;
  double error = 0.0;           // |fd - analytic|
  double relative_error = 0.0;  // error / |analytic| (error if analytic = 0)
  double order = 0.0;           // log2(error(prev s) / error(s)); 0 on row 0
};
struct VariationCheck {
  ResidualMode mode = ResidualMode::kHawking;
  std::vector<VariationRow> rows;
  double observed_order = 0.0;  // from the last pair of rows
};
VariationCheck first_variation_check(const AmbientSpace& space,
                                     const SurfaceMesh& mesh,
                                     const Field& alpha,
                                     const std::vector<double>& s_list,
                                     ResidualMode mode = ResidualMode::kHawking);

// Sum of real harmonics with degree 1..max_degree and standard normal
// coefficients drawn from the seed; unit L2 norm on the unit sphere.
Field random_lapse(const SphereGrid& grid, int max_degree, unsigned seed);

}  // namespace qll
