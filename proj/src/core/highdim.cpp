#include "highdim.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>

#include "catalog.hpp"
#include "error.hpp"
#include "functionals.hpp"
#include "jet.hpp"
#include "surface.hpp"

namespace qll {
namespace {

}  // namespace

RadialModel::RadialModel(std::string name, int n, Params params)
    : name_(std::move(name)), n_(n), params_(std::move(params)) {
  if (n_ < 3) fail(ErrorKind::kConfig, "radial model dimension must be >= 3");
  static const std::map<std::string, std::set<std::string>> keys = {
      {"euclidean", {}},          {"schwarzschild", {"m"}},
      {"reissner_nordstrom", {"m", "q"}}, {"hyperboloid", {"a"}},
      {"hyperbolic", {"a"}},      {"paraboloid", {"alpha"}}};
  auto it = keys.find(name_);
  if (it == keys.end())
    fail(ErrorKind::kConfig, "unknown radial model '" + name_ + "'");
  for (const auto& [k, v] : params_) {
    if (!it->second.count(k))
      fail(ErrorKind::kConfig,
           "unknown parameter '" + k + "' for radial model '" + name_ + "'");
    if (!std::isfinite(v))
      fail(ErrorKind::kConfig, "radial model parameter '" + k + "' not finite");
  }
  if (name_ == "schwarzschild" || name_ == "reissner_nordstrom") {
    params_.emplace("m", 1.0);
    if (params_["m"] < 0.0) fail(ErrorKind::kConfig, "m must be >= 0");
    if (name_ == "reissner_nordstrom") params_.emplace("q", 0.0);
  }
  if (name_ == "hyperboloid" || name_ == "hyperbolic") {
    params_.emplace("a", 1.0);
    if (!(params_["a"] > 0.0)) fail(ErrorKind::kConfig, "a must be > 0");
  }
  if (name_ == "paraboloid") {
    if (!params_.count("alpha"))
      fail(ErrorKind::kConfig, "paraboloid needs parameter 'alpha'");
    if (!(params_["alpha"] > 0.0)) fail(ErrorKind::kConfig, "alpha must be > 0");
  }
}

bool RadialModel::has_k() const {
  return name_ == "hyperboloid" || name_ == "paraboloid";
}

double RadialModel::omega() const {
  const double h = 0.5 * n_;
  return 2.0 * std::pow(std::numbers::pi, h) / std::tgamma(h);
}

RadialModel::Profile RadialModel::profile(double r) const {
  if (!(r > 0.0) || !std::isfinite(r))
    fail(ErrorKind::kDomain, "radius must be positive");
  const Jet x = jet_variable(r, 0);
  const double n = n_;
  Jet phi = 1.0, k_rad = 0.0, k_tan = 0.0;
  if (name_ == "schwarzschild" || name_ == "reissner_nordstrom") {
    const double m = params_.at("m");
    const double q = name_ == "reissner_nordstrom" ? params_.at("q") : 0.0;
    const Jet rn = pow(x, n - 2.0);
    const Jet V = 1.0 - 2.0 * m / rn + (q * q) / (rn * rn);
    if (!(V.v > 0.0))
      fail(ErrorKind::kDomain, "radius inside the horizon of the radial model");
    phi = reciprocal(V);
  } else if (name_ == "hyperboloid" || name_ == "hyperbolic") {
    const double a = params_.at("a");
    phi = reciprocal(1.0 + x * x * (1.0 / (a * a)));
    if (name_ == "hyperboloid") k_rad = k_tan = Jet(1.0 / a);
  } else if (name_ == "paraboloid") {
    const double al = params_.at("alpha");
    phi = 1.0 - al * al * x * x;
    if (!(phi.v > 0.0))
      fail(ErrorKind::kDomain, "paraboloid radial model needs alpha r < 1");
    const Jet w = sqrt(phi);
    k_tan = al / w;
    k_rad = al / (w * phi);
  }
  if (!(phi.v > 0.0)) fail(ErrorKind::kDomain, "phi(r) must be > 0");
  return {phi.v, phi.d[0], k_rad.v, k_rad.d[0], k_tan.v, k_tan.d[0]};
}

RadialSphereReport radial_sphere(const RadialModel& model, double r,
                                 double charge) {
  const auto pr = model.profile(r);
  const int ni = model.dimension();
  const double n = ni;
  const double om = model.omega();
  RadialSphereReport rep;
  rep.n = ni;
  rep.r = r;
  rep.area = om * std::pow(r, n - 1.0);
  const double V = 1.0 / pr.phi;
  const double dV = -pr.dphi / (pr.phi * pr.phi);
  const double sV = std::sqrt(V);
  rep.H = (n - 1.0) / (r * std::sqrt(pr.phi));
  rep.sc_sigma = (n - 1.0) * (n - 2.0) / (r * r);
  rep.P = (n - 1.0) * pr.k_tan;
  rep.tr_k = pr.k_rad + (n - 1.0) * pr.k_tan;
  rep.k_norm2 = pr.k_rad * pr.k_rad + (n - 1.0) * pr.k_tan * pr.k_tan;
  rep.ric_nn = -(n - 1.0) * dV / (2.0 * r);
  rep.sc_m = (n - 1.0) / (r * r) * ((n - 2.0) * (1.0 - V) - r * dV);
  rep.dnu_tr_k = sV * (pr.dk_rad + (n - 1.0) * pr.dk_tan);
  rep.dnu_k_nn = sV * pr.dk_rad;
  rep.mu = 0.5 * (rep.sc_m + rep.tr_k * rep.tr_k - rep.k_norm2);
  const double J = (pr.k_rad - pr.k_tan) * rep.H - (n - 1.0) * sV * pr.dk_tan;
  rep.J_norm = std::fabs(J);
  rep.dec_margin = rep.mu - rep.J_norm;

  const double ratio = rep.area / om;
  const double H2 = rep.H * rep.H, P2 = rep.P * rep.P;
  auto e1 = [&](double w) {
    return std::pow(ratio, 1.0 / (n - 1.0)) /
           (2.0 * (n - 1.0) * (n - 2.0) * om) *
           (rep.sc_sigma - (n - 2.0) / (n - 1.0) * w) * rep.area;
  };
  auto e2 = [&](double w, double extra) {
    return 0.5 * std::pow(ratio, (n - 2.0) / (n - 1.0)) *
           (1.0 + extra -
            std::pow(1.0 / ratio, (n - 3.0) / (n - 1.0)) * w * rep.area /
                ((n - 1.0) * (n - 1.0) * om));
  };
  rep.energy_1 = e1(H2);
  rep.energy_2 = e2(H2, 0.0);
  rep.energy_1_dyn = e1(H2 - P2);
  rep.energy_2_dyn = e2(H2 - P2, 0.0);
  const double q2 = charge * charge;
  rep.charged_energy_1 =
      rep.energy_1 + std::pow(ratio, 1.0 / (n - 1.0)) /
                         (2.0 * (n - 1.0) * (n - 2.0) * om) * (n - 1.0) *
                         (n - 2.0) * q2 / (ratio * ratio) * rep.area;
  rep.charged_energy_2 =
      e2(H2, q2 * std::pow(1.0 / ratio, 2.0 * (n - 2.0) / (n - 1.0)));

  const double cubic = (n - 3.0) / (2.0 * (n - 1.0)) * H2 * rep.H;
  rep.willmore_residual0 = -cubic + rep.H * rep.ric_nn;
  rep.willmore_lambda_star = -rep.willmore_residual0 / rep.H;
  rep.hawking_residual0 = rep.willmore_residual0 +
                          rep.P * (rep.dnu_tr_k - rep.dnu_k_nn) +
                          0.5 * rep.H * P2;
  rep.hawking_lambda_star = -rep.hawking_residual0 / rep.H;

  if (rep.H > 0.0) {
    const double q = rep.P / rep.H;
    rep.f = q * q * rep.k_norm2 + 0.5 * rep.tr_k * rep.tr_k -
            0.5 * rep.k_norm2 - rep.J_norm - n / (2.0 * (n - 1.0)) * P2 -
            q * (rep.dnu_tr_k - rep.dnu_k_nn) - 0.5 * rep.Bo2;
    rep.f_integral = rep.f * rep.area;
    rep.f_defined = true;
  }
  return rep;
}

double willmore_nd_residual(const RadialSphereReport& rep, double lambda) {
  return lambda * rep.H + rep.willmore_residual0;
}

ConsistencyDefects nd_energy_consistency(const RadialModel& model, double r,
                                         int ntheta, int nphi) {
  if (model.dimension() != 3)
    fail(ErrorKind::kConfig, "consistency check needs n = 3");
  const auto rep = radial_sphere(model, r);
  const AmbientSpace space = make_space(model.name(), model.params());
  const auto geom = induced_geometry(space, SurfaceMesh::sphere(ntheta, nphi, r));
  const double E = hawking_energy(geom);
  ConsistencyDefects d;
  d.energy_1 = std::fabs(rep.energy_1_dyn - E);
  d.energy_2 = std::fabs(rep.energy_2_dyn - E);
  if (rep.f_defined)
    d.f = std::fabs(rep.f_integral - f_integrals(geom, 0.0, 0.0).f);
  else
    d.f = std::numeric_limits<double>::quiet_NaN();
  return d;
}

}  // namespace qll
