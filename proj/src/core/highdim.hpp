#pragma once

#include <string>
#include <vector>

#include "ambient.hpp"

namespace qll {

// Spherically symmetric data on (r0, r1) x S^{n-1}:
//   g = phi(r) dr^2 + r^2 g_S,  k = k_rad phi dr^2 + k_tan r^2 g_S.
// Models: euclidean, schwarzschild (m), reissner_nordstrom (m, q),
// hyperboloid (a, k = g/a), hyperbolic (a), paraboloid (alpha).
class RadialModel {
 public:
  RadialModel(std::string name, int n, Params params);

  const std::string& name() const { return name_; }
  int dimension() const { return n_; }
  const Params& params() const { return params_; }
  bool has_k() const;

  struct Profile {
    double phi, dphi, k_rad, dk_rad, k_tan, dk_tan;
  };
  // Throws a domain error when phi(r) <= 0 or r is outside the model.
  Profile profile(double r) const;

  // volume of the unit (n-1)-sphere
  double omega() const;

 private:
  std::string name_;
  int n_;
  Params params_;
};

struct RadialSphereReport {
  int n = 3;
  double r = 0.0;
  double area = 0.0;
  double H = 0.0, P = 0.0, sc_sigma = 0.0, Bo2 = 0.0;
  double tr_k = 0.0, k_norm2 = 0.0, ric_nn = 0.0, sc_m = 0.0;
  double dnu_tr_k = 0.0, dnu_k_nn = 0.0;
  double mu = 0.0, J_norm = 0.0, dec_margin = 0.0;
  // static forms use H^2, dynamical forms H^2 - P^2
  double energy_1 = 0.0, energy_2 = 0.0;
  double energy_1_dyn = 0.0, energy_2_dyn = 0.0;
  double charged_energy_1 = 0.0, charged_energy_2 = 0.0;
  // residuals at lambda = 0 and least-squares multipliers
  double willmore_residual0 = 0.0, willmore_lambda_star = 0.0;
  double hawking_residual0 = 0.0, hawking_lambda_star = 0.0;
  double f = 0.0;           // pointwise n-dimensional f (H > 0 required)
  double f_integral = 0.0;  // int f
  bool f_defined = false;
};

RadialSphereReport radial_sphere(const RadialModel& model, double r,
                                 double charge = 0.0);

// lambda H - (n-3)/(2(n-1)) H^3 + H Ric(nu, nu) on a coordinate sphere
double willmore_nd_residual(const RadialSphereReport& rep, double lambda);

struct ConsistencyDefects {
  double energy_1 = 0.0;  // |E_{3,1} - E|
  double energy_2 = 0.0;  // |E_{3,2} - E|
  double f = 0.0;         // |int f_3 - int f| (NaN when f is undefined)
};
// Compares the n = 3 radial values against meshed coordinate spheres of the
// matching catalog space.
ConsistencyDefects nd_energy_consistency(const RadialModel& model, double r,
                                         int ntheta = 32, int nphi = 64);

}  // namespace qll
