#include "criticality.hpp"

#include <cmath>
#include <random>

#include "error.hpp"
#include "functionals.hpp"

namespace qll {

ResidualMode parse_residual_mode(const std::string& name) {
  if (name == "willmore") return ResidualMode::kWillmore;
  if (name == "hawking") return ResidualMode::kHawking;
  fail(ErrorKind::kConfig,
       "unknown residual mode '" + name + "' (willmore or hawking)");
}

const char* to_string(ResidualMode mode) {
  return mode == ResidualMode::kWillmore ? "willmore" : "hawking";
}

Field residual_at_zero(const SurfaceGeometry& geom, ResidualMode mode) {
  const std::size_t n = geom.size();
  const Field lapH = laplacian(geom, geom.H);
  Field r(n);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = lapH[i] + geom.H[i] * geom.Bo2[i] + geom.H[i] * geom.ric_nn[i];
  if (mode == ResidualMode::kWillmore || !geom.has_k) return r;

  const Field div_knu = covector_divergence(geom, geom.k_nu_t, geom.k_nu_p);
  const Field Pt = geom.g().d_theta(geom.P, +1);
  const Field Pp = geom.g().d_phi(geom.P);
  for (std::size_t i = 0; i < n; ++i) {
    const double H = geom.H[i], P = geom.P[i];
    const double D = geom.E[i] * geom.G[i] - geom.F[i] * geom.F[i];
    const double wt = (geom.G[i] * Pt[i] - geom.F[i] * Pp[i]) / D;
    const double wp = (-geom.F[i] * Pt[i] + geom.E[i] * Pp[i]) / D;
    const double k_gradP_nu = wt * geom.k_nu_t[i] + wp * geom.k_nu_p[i];
    r[i] += P * (geom.dnu_tr_k[i] - geom.dnu_k_nn[i]) - 2.0 * P * div_knu[i] +
            0.5 * H * P * P - 2.0 * k_gradP_nu;
  }
  return r;
}

double best_lambda(const SurfaceGeometry& geom, const Field& r0) {
  Field rh(geom.size()), hh(geom.size());
  for (std::size_t i = 0; i < rh.size(); ++i) {
    rh[i] = r0[i] * geom.H[i];
    hh[i] = geom.H[i] * geom.H[i];
  }
  const double denom = integrate(geom, hh);
  if (!(denom > 1e-300))
    fail(ErrorKind::kNumeric, "degenerate multiplier: int H^2 vanishes");
  return -integrate(geom, rh) / denom;
}

double best_lambda(const SurfaceGeometry& geom, ResidualMode mode) {
  return best_lambda(geom, residual_at_zero(geom, mode));
}

namespace {

ResidualReport assemble(const SurfaceGeometry& geom, ResidualMode mode,
                        const Field& r0, double lambda) {
  ResidualReport rep;
  rep.mode = mode;
  rep.lambda = lambda;
  rep.lambda_star = best_lambda(geom, r0);
  rep.residual.resize(r0.size());
  Field sq(r0.size());
  for (std::size_t i = 0; i < r0.size(); ++i) {
    rep.residual[i] = r0[i] + lambda * geom.H[i];
    sq[i] = rep.residual[i] * rep.residual[i];
    rep.linf = std::max(rep.linf, std::fabs(rep.residual[i]));
  }
  rep.l2 = std::sqrt(std::max(0.0, integrate(geom, sq)));
  return rep;
}

}  // namespace

ResidualReport residual_report(const SurfaceGeometry& geom, ResidualMode mode,
                               double lambda) {
  return assemble(geom, mode, residual_at_zero(geom, mode), lambda);
}

ResidualReport residual_report_best(const SurfaceGeometry& geom,
                                    ResidualMode mode) {
  const Field r0 = residual_at_zero(geom, mode);
  return assemble(geom, mode, r0, best_lambda(geom, r0));
}

Field variation_density(const SurfaceGeometry& geom, ResidualMode mode) {
  Field w = residual_at_zero(geom, mode);
  for (double& v : w) v *= -0.5;
  return w;
}

double mode_functional(const SurfaceGeometry& geom, ResidualMode mode) {
  if (mode == ResidualMode::kHawking) return hawking_functional(geom);
  Field h2(geom.size());
  for (std::size_t i = 0; i < h2.size(); ++i) h2[i] = geom.H[i] * geom.H[i];
  return 0.25 * integrate(geom, h2);
}

SurfaceMesh normal_deformation(const SurfaceMesh& mesh,
                               const SurfaceGeometry& geom, const Field& alpha,
                               double s) {
  Field r = mesh.radius();
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] += s * alpha[i] / geom.nu_radial[i];
  return mesh.with_radius(std::move(r));
}

VariationCheck first_variation_check(const AmbientSpace& space,
                                     const SurfaceMesh& mesh,
                                     const Field& alpha,
                                     const std::vector<double>& s_list,
                                     ResidualMode mode) {
  if (s_list.empty()) fail(ErrorKind::kConfig, "variation check needs s values");
  const SurfaceGeometry geom = induced_geometry(space, mesh);
  if (alpha.size() != geom.size())
    fail(ErrorKind::kConfig, "lapse does not match the surface grid");
  const Field W = variation_density(geom, mode);
  Field wa(W.size());
  for (std::size_t i = 0; i < W.size(); ++i) wa[i] = W[i] * alpha[i];
  const double analytic = integrate(geom, wa);

  VariationCheck out;
  out.mode = mode;
  for (double s : s_list) {
    if (!(s > 0.0)) fail(ErrorKind::kConfig, "variation steps must be > 0");
    const auto plus = induced_geometry(space, normal_deformation(mesh, geom, alpha, s));
    const auto minus = induced_geometry(space, normal_deformation(mesh, geom, alpha, -s));
    VariationRow row;
    row.s = s;
    row.difference_quotient =
        (mode_functional(plus, mode) - mode_functional(minus, mode)) / (2.0 * s);
    row.analytic = analytic;
    row.error = std::fabs(row.difference_quotient - analytic);
    row.relative_error =
        analytic != 0.0 ? row.error / std::fabs(analytic) : row.error;
    if (!out.rows.empty()) {
      const VariationRow& prev = out.rows.back();
      row.order = std::log(prev.error / row.error) / std::log(prev.s / row.s);
      out.observed_order = row.order;
    }
    out.rows.push_back(row);
  }
  return out;
}

Field random_lapse(const SphereGrid& grid, int max_degree, unsigned seed) {
  if (max_degree < 1 || max_degree > grid.max_degree())
    fail(ErrorKind::kConfig, "lapse degree out of range for the grid");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int w = max_degree + 1;
  std::vector<double> c(static_cast<std::size_t>(w) * w, 0.0);
  double norm2 = 0.0;
  for (int l = 1; l <= max_degree; ++l)
    for (int m = -l; m <= l; ++m) {
      const double v = normal(rng);
      c[l * l + l + m] = v;
      norm2 += v * v;
    }
  for (double& v : c) v /= std::sqrt(norm2);
  return grid.sh_synthesis(c, max_degree);
}

}  // namespace qll
