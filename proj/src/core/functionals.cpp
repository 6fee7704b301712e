#include "functionals.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace qll {
namespace {

constexpr double kPi = std::numbers::pi;

double integral_h2_minus_p2(const SurfaceGeometry& geom) {
  Field w(geom.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = geom.H[i] * geom.H[i] - geom.P[i] * geom.P[i];
  return integrate(geom, w);
}

double area_factor(const SurfaceGeometry& geom) {
  return std::sqrt(geom.area / (16.0 * kPi));
}

}  // namespace

double hawking_functional(const SurfaceGeometry& geom) {
  return 0.25 * integral_h2_minus_p2(geom);
}

double hawking_energy(const SurfaceGeometry& geom) {
  return area_factor(geom) *
         (1.0 - integral_h2_minus_p2(geom) / (16.0 * kPi));
}

double enclosed_charge(const SurfaceGeometry& geom, const AmbientSpace& space) {
  if (!space.has_electric_field())
    fail(ErrorKind::kConfig, "charged energy needs an electric field");
  Field flux(geom.size());
  for (std::size_t i = 0; i < flux.size(); ++i)
    flux[i] = dot(space.electric_field(geom.X[i]), geom.nu_flat[i]);
  return integrate(geom, flux) / (4.0 * kPi);
}

ChargedEnergy charged_hawking_energy(const SurfaceGeometry& geom,
                                     const AmbientSpace& space,
                                     double magnetic_charge) {
  ChargedEnergy out;
  out.charge = enclosed_charge(geom, space);
  out.magnetic_charge = magnetic_charge;
  out.convention = geom.has_k ? "H2_minus_P2" : "time_symmetric";
  const double q2 = out.charge * out.charge + magnetic_charge * magnetic_charge;
  out.energy = area_factor(geom) * (1.0 + 4.0 * kPi * q2 / geom.area -
                                    integral_h2_minus_p2(geom) / (16.0 * kPi));
  return out;
}

double lambda_hawking_energy(const SurfaceGeometry& geom, double Lambda) {
  Field w(geom.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = geom.H[i] * geom.H[i] + 4.0 * Lambda / 3.0;
  return area_factor(geom) * (1.0 - integrate(geom, w) / (16.0 * kPi));
}

FFields f_fields(const SurfaceGeometry& geom, double beta) {
  const std::size_t n = geom.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!(geom.H[i] > 0.0))
      fail(ErrorKind::kHypothesis,
           "f requires H > 0, violated at node index " + std::to_string(i));
  // k(grad log H, nu) = h^{ij} (log H)_j k(X_i, nu)
  Field logH(n);
  for (std::size_t i = 0; i < n; ++i) logH[i] = std::log(geom.H[i]);
  const Field lt = geom.g().d_theta(logH, +1);
  const Field lp = geom.g().d_phi(logH);

  FFields out;
  out.f.resize(n);
  out.f_beta.resize(n);
  out.f_tilde.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double H = geom.H[i], P = geom.P[i];
    const double q = P / H;
    const double k2 = geom.k_norm2[i], trk = geom.tr_k[i];
    const double J = geom.J_norm[i], Bo2 = geom.Bo2[i];
    const double common = 0.5 * trk * trk - 0.75 * P * P -
                          q * (geom.dnu_tr_k[i] - geom.dnu_k_nn[i]);
    const double tail = -0.5 * k2 - 0.5 * Bo2 - J;
    const double D = geom.E[i] * geom.G[i] - geom.F[i] * geom.F[i];
    const double wt = (geom.G[i] * lt[i] - geom.F[i] * lp[i]) / D;
    const double wp = (-geom.F[i] * lt[i] + geom.E[i] * lp[i]) / D;
    const double k_grad = wt * geom.k_nu_t[i] + wp * geom.k_nu_p[i];
    out.f[i] = q * q * k2 + common + tail;
    out.f_beta[i] = q * q * k2 + common - beta * (k2 + Bo2 + 2.0 * J);
    out.f_tilde[i] = 2.0 * q * k_grad + common + tail;
  }
  return out;
}

FIntegrals f_integrals(const SurfaceGeometry& geom, double beta,
                       double lambda) {
  const FFields ff = f_fields(geom, beta);
  FIntegrals out;
  const double shift = lambda * geom.area;
  out.f = integrate(geom, ff.f) - shift;
  out.f_beta = integrate(geom, ff.f_beta) - shift;
  out.f_tilde = integrate(geom, ff.f_tilde) - shift;
  return out;
}

BrownYork brown_york_round(const SurfaceGeometry& geom, double tolerance) {
  BrownYork out;
  const double kbar = integrate(geom, geom.K) / geom.area;
  out.mean_gauss_curvature = kbar;
  if (!(kbar > 0.0))
    fail(ErrorKind::kUnsupported,
         "Brown-York energy needs positive mean Gauss curvature");
  double spread = 0.0;
  for (double K : geom.K) spread = std::max(spread, std::fabs(K - kbar) / kbar);
  out.gauss_curvature_spread = spread;
  if (spread > tolerance)
    fail(ErrorKind::kUnsupported,
         "Brown-York energy is only computed for constant Gauss curvature; "
         "relative spread " + std::to_string(spread));
  const double H0 = 2.0 * std::sqrt(kbar);
  Field w(geom.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = H0 - geom.H[i];
  out.value = integrate(geom, w) / (8.0 * kPi);
  if (geom.has_k)
    out.warning = "k is nonzero; the Shi-Tam positivity hypotheses do not hold";
  return out;
}

double gauss_bonnet_defect(const SurfaceGeometry& geom) {
  return std::fabs(integrate(geom, geom.K) - 4.0 * kPi);
}

double dec_min(const SurfaceGeometry& geom) {
  double m = geom.dec_margin.empty() ? 0.0 : geom.dec_margin[0];
  for (double v : geom.dec_margin) m = std::min(m, v);
  return m;
}

}  // namespace qll
