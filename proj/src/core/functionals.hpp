#pragma once

#include <optional>
#include <string>

#include "ambient.hpp"
#include "surface.hpp"

namespace qll {

// (1/4) int (H^2 - P^2)
double hawking_functional(const SurfaceGeometry& geom);
double hawking_energy(const SurfaceGeometry& geom);

struct ChargedEnergy {
  double charge = 0.0;           // electric flux charge Q
  double magnetic_charge = 0.0;  // supplied, not computed
  double energy = 0.0;
  // "time_symmetric" when k = 0, otherwise "H2_minus_P2"
  std::string convention;
};
// Needs an electric field on the space (configuration error otherwise).
ChargedEnergy charged_hawking_energy(const SurfaceGeometry& geom,
                                     const AmbientSpace& space,
                                     double magnetic_charge = 0.0);
// Electric flux Q = (1/4 pi) int g(E, nu)
double enclosed_charge(const SurfaceGeometry& geom, const AmbientSpace& space);

double lambda_hawking_energy(const SurfaceGeometry& geom, double Lambda);

struct FFields {
  Field f, f_beta, f_tilde;
};
struct FIntegrals {
  double f = 0.0;        // int (f - lambda)
  double f_beta = 0.0;   // int (f_beta - lambda)
  double f_tilde = 0.0;  // int (f_tilde - lambda)
};
// Throws a hypothesis error unless H > 0 at every node.
FFields f_fields(const SurfaceGeometry& geom, double beta);
FIntegrals f_integrals(const SurfaceGeometry& geom, double beta,
                       double lambda);

struct BrownYork {
  double value = 0.0;
  double mean_gauss_curvature = 0.0;
  double gauss_curvature_spread = 0.0;  // max |K - Kbar| / Kbar
  std::string warning;
};
// Restricted to surfaces of constant Gauss curvature (relative 1e-3);
// otherwise an unsupported error.
BrownYork brown_york_round(const SurfaceGeometry& geom,
                           double tolerance = 1e-3);

double gauss_bonnet_defect(const SurfaceGeometry& geom);
double dec_min(const SurfaceGeometry& geom);

}  // namespace qll
