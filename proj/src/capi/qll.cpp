#include "qll/qll.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "catalog.hpp"
#include "criticality.hpp"
#include "error.hpp"
#include "flow.hpp"
#include "functionals.hpp"
#include "highdim.hpp"
#include "parallel.hpp"
#include "runner.hpp"
#include "surface.hpp"

struct qll_space {
  qll::AmbientSpace space;
};

struct qll_mesh {
  qll::SurfaceMesh mesh;
};

namespace {

thread_local std::string g_error;

qll_status status_of(qll::ErrorKind kind) {
  switch (kind) {
    case qll::ErrorKind::kDomain: return QLL_E_DOMAIN;
    case qll::ErrorKind::kGeometry: return QLL_E_GEOMETRY;
    case qll::ErrorKind::kNumeric: return QLL_E_NUMERIC;
    case qll::ErrorKind::kConfig: return QLL_E_CONFIG;
    case qll::ErrorKind::kHypothesis: return QLL_E_HYPOTHESIS;
    case qll::ErrorKind::kUnsupported: return QLL_E_UNSUPPORTED;
    case qll::ErrorKind::kFlow: return QLL_E_FLOW;
    case qll::ErrorKind::kIo: return QLL_E_IO;
  }
  return QLL_E_INTERNAL;
}

template <class F>
qll_status guarded(F&& body) {
  g_error.clear();
  try {
    return body();
  } catch (const qll::Error& e) {
    g_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
  } catch (const std::exception& e) {
    g_error = e.what();
  } catch (...) {
    g_error = "unknown error";
  }
  return QLL_E_INTERNAL;
}

qll_status argument_error(const char* what) {
  g_error = what;
  return QLL_E_ARGUMENT;
}

qll::Params make_params(const char* const* keys, const double* values,
                        size_t count) {
  qll::Params p;
  for (size_t i = 0; i < count; ++i) {
    if (!keys || !keys[i] || !values)
      qll::fail(qll::ErrorKind::kConfig, "null parameter key or value");
    p[keys[i]] = values[i];
  }
  return p;
}

qll::Vec3d vec_or_zero(const double* v) {
  return v ? qll::Vec3d{v[0], v[1], v[2]} : qll::Vec3d{0.0, 0.0, 0.0};
}

qll::ResidualMode mode_of(qll_mode m) {
  return m == QLL_WILLMORE ? qll::ResidualMode::kWillmore
                           : qll::ResidualMode::kHawking;
}

qll_status new_mesh(qll::SurfaceMesh m, qll_mesh** out) {
  *out = new qll_mesh{std::move(m)};
  return QLL_OK;
}

}  // namespace

extern "C" {

const char* qll_version(void) { return "0.1.0"; }

const char* qll_last_error(void) { return g_error.c_str(); }

const char* qll_status_name(qll_status status) {
  switch (status) {
    case QLL_OK: return "ok";
    case QLL_E_DOMAIN: return "domain";
    case QLL_E_GEOMETRY: return "geometry";
    case QLL_E_NUMERIC: return "numeric";
    case QLL_E_CONFIG: return "config";
    case QLL_E_HYPOTHESIS: return "hypothesis";
    case QLL_E_UNSUPPORTED: return "unsupported";
    case QLL_E_FLOW: return "flow";
    case QLL_E_IO: return "io";
    case QLL_E_ARGUMENT: return "argument";
    case QLL_E_INTERNAL: return "internal";
  }
  return "unknown";
}

qll_status qll_space_create(const char* name, const char* const* keys,
                            const double* values, size_t count,
                            qll_space** out) {
  if (!name || !out) return argument_error("null argument");
  return guarded([&] {
    *out = new qll_space{qll::make_space(name, make_params(keys, values, count))};
    return QLL_OK;
  });
}

qll_status qll_space_use_finite_differences(qll_space* space, double h) {
  if (!space) return argument_error("null space");
  return guarded([&] {
    space->space = space->space.with_derivative_mode(
        qll::DerivativeMode::kFiniteDifference, h > 0.0 ? h : 0.0);
    return QLL_OK;
  });
}

qll_status qll_space_attach_charge(qll_space* space, double q) {
  if (!space) return argument_error("null space");
  return guarded([&] {
    space->space = space->space.with_point_charge(q);
    return QLL_OK;
  });
}

void qll_space_free(qll_space* space) { delete space; }

qll_status qll_space_point(const qll_space* space, const double p[3],
                           qll_point_data* out) {
  if (!space || !p || !out) return argument_error("null argument");
  return guarded([&] {
    const auto d = qll::point_data(space->space, {p[0], p[1], p[2]});
    out->scalar_curvature = d.curv.scalar;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        out->ricci[3 * a + b] = d.curv.ricci[a][b];
        out->k[3 * a + b] = d.k[a][b];
      }
      out->J[a] = d.constraints.J[a];
    }
    out->tr_k = d.tr_k;
    out->k_norm2 = d.k_norm2;
    out->mu = d.constraints.mu;
    out->dec_margin = d.constraints.dec_margin;
    return QLL_OK;
  });
}

qll_status qll_mesh_sphere(int ntheta, int nphi, double r,
                           const double center[3], qll_mesh** out) {
  if (!out) return argument_error("null argument");
  return guarded([&] {
    return new_mesh(qll::SurfaceMesh::sphere(ntheta, nphi, r, vec_or_zero(center)), out);
  });
}

qll_status qll_mesh_ellipsoid(int ntheta, int nphi, const double axes[3],
                              const double center[3], qll_mesh** out) {
  if (!out || !axes) return argument_error("null argument");
  return guarded([&] {
    return new_mesh(qll::SurfaceMesh::ellipsoid(ntheta, nphi, vec_or_zero(axes),
                                                vec_or_zero(center)),
                    out);
  });
}

qll_status qll_mesh_perturbed(int ntheta, int nphi, double r0, const int* l,
                              const int* m, const double* amplitude,
                              size_t count, qll_mesh** out) {
  if (!out || (count && (!l || !m || !amplitude)))
    return argument_error("null argument");
  return guarded([&] {
    std::vector<qll::SurfaceMesh::Harmonic> modes;
    for (size_t i = 0; i < count; ++i) modes.push_back({l[i], m[i], amplitude[i]});
    return new_mesh(qll::SurfaceMesh::perturbed_sphere(ntheta, nphi, r0, modes), out);
  });
}

qll_status qll_mesh_load(const char* path, qll_mesh** out) {
  if (!path || !out) return argument_error("null argument");
  return guarded([&] { return new_mesh(qll::SurfaceMesh::load(path), out); });
}

qll_status qll_mesh_save(const qll_mesh* mesh, const char* path) {
  if (!mesh || !path) return argument_error("null argument");
  return guarded([&] {
    mesh->mesh.save(path);
    return QLL_OK;
  });
}

qll_status qll_mesh_size(const qll_mesh* mesh, int* ntheta, int* nphi) {
  if (!mesh || !ntheta || !nphi) return argument_error("null argument");
  *ntheta = mesh->mesh.grid().ntheta();
  *nphi = mesh->mesh.grid().nphi();
  return QLL_OK;
}

qll_status qll_mesh_radius(const qll_mesh* mesh, double* out, size_t count) {
  if (!mesh || !out) return argument_error("null argument");
  const auto& r = mesh->mesh.radius();
  if (count < r.size()) return argument_error("output buffer too small");
  std::copy(r.begin(), r.end(), out);
  return QLL_OK;
}

void qll_mesh_free(qll_mesh* mesh) { delete mesh; }

qll_status qll_energy_evaluate(const qll_space* space, const qll_mesh* mesh,
                               qll_energy* out) {
  if (!space || !mesh || !out) return argument_error("null argument");
  return guarded([&] {
    const auto geom = qll::induced_geometry(space->space, mesh->mesh);
    qll::Field H2(geom.H.size()), P2(geom.H.size());
    for (size_t i = 0; i < H2.size(); ++i) {
      H2[i] = geom.H[i] * geom.H[i];
      P2[i] = geom.P[i] * geom.P[i];
    }
    out->area = geom.area;
    out->willmore_integral = qll::integrate(geom, H2);
    out->p_integral = qll::integrate(geom, P2);
    out->hawking_functional = qll::hawking_functional(geom);
    out->hawking_energy = qll::hawking_energy(geom);
    out->gauss_bonnet_defect = qll::gauss_bonnet_defect(geom);
    out->dec_min = qll::dec_min(geom);
    out->min_mean_curvature = *std::min_element(geom.H.begin(), geom.H.end());
    out->max_mean_curvature = *std::max_element(geom.H.begin(), geom.H.end());
    out->max_traceless_norm2 = *std::max_element(geom.Bo2.begin(), geom.Bo2.end());
    return QLL_OK;
  });
}

qll_status qll_charged_energy(const qll_space* space, const qll_mesh* mesh,
                              double magnetic_charge, double* charge,
                              double* energy) {
  if (!space || !mesh || !charge || !energy) return argument_error("null argument");
  return guarded([&] {
    const auto geom = qll::induced_geometry(space->space, mesh->mesh);
    const auto c = qll::charged_hawking_energy(geom, space->space, magnetic_charge);
    *charge = c.charge;
    *energy = c.energy;
    return QLL_OK;
  });
}

qll_status qll_lambda_energy(const qll_space* space, const qll_mesh* mesh,
                             double Lambda, double* energy) {
  if (!space || !mesh || !energy) return argument_error("null argument");
  return guarded([&] {
    *energy = qll::lambda_hawking_energy(
        qll::induced_geometry(space->space, mesh->mesh), Lambda);
    return QLL_OK;
  });
}

qll_status qll_f_integrals(const qll_space* space, const qll_mesh* mesh,
                           double beta, double lambda, double out[3]) {
  if (!space || !mesh || !out) return argument_error("null argument");
  return guarded([&] {
    const auto f = qll::f_integrals(
        qll::induced_geometry(space->space, mesh->mesh), beta, lambda);
    out[0] = f.f;
    out[1] = f.f_beta;
    out[2] = f.f_tilde;
    return QLL_OK;
  });
}

qll_status qll_brown_york(const qll_space* space, const qll_mesh* mesh,
                          double* value) {
  if (!space || !mesh || !value) return argument_error("null argument");
  return guarded([&] {
    const auto by =
        qll::brown_york_round(qll::induced_geometry(space->space, mesh->mesh));
    *value = by.value;
    if (!by.warning.empty()) g_error = by.warning;
    return QLL_OK;
  });
}

qll_status qll_residual_evaluate(const qll_space* space, const qll_mesh* mesh,
                                 qll_mode mode, int use_lambda_star,
                                 double lambda, qll_residual* out) {
  if (!space || !mesh || !out) return argument_error("null argument");
  if (mode != QLL_WILLMORE && mode != QLL_HAWKING)
    return argument_error("bad residual mode");
  return guarded([&] {
    const auto geom = qll::induced_geometry(space->space, mesh->mesh);
    const auto rep = use_lambda_star
                         ? qll::residual_report_best(geom, mode_of(mode))
                         : qll::residual_report(geom, mode_of(mode), lambda);
    out->lambda = rep.lambda;
    out->lambda_star = rep.lambda_star;
    out->l2 = rep.l2;
    out->linf = rep.linf;
    return QLL_OK;
  });
}

void qll_flow_default_options(qll_flow_options* options) {
  if (!options) return;
  const qll::FlowConfig d;
  options->mode = QLL_WILLMORE;
  options->target_area = d.target_area;
  options->initial_step = d.initial_step;
  options->max_steps = d.max_steps;
  options->residual_tol = d.residual_tol;
  options->backtrack = d.backtrack;
  options->max_backtracks = d.max_backtracks;
  options->precondition = d.precondition ? 1 : 0;
}

qll_status qll_flow_run(const qll_space* space, const qll_mesh* mesh,
                        const qll_flow_options* options, qll_flow_result* out,
                        qll_mesh** final_mesh) {
  if (!space || !mesh || !options || !out) return argument_error("null argument");
  return guarded([&] {
    qll::FlowConfig cfg;
    cfg.mode = mode_of(options->mode);
    cfg.target_area = options->target_area;
    cfg.initial_step = options->initial_step;
    cfg.max_steps = options->max_steps;
    cfg.residual_tol = options->residual_tol;
    cfg.backtrack = options->backtrack;
    cfg.max_backtracks = options->max_backtracks;
    cfg.precondition = options->precondition != 0;
    const auto st = qll::run_flow(space->space, cfg, mesh->mesh);
    out->converged = st.status == qll::FlowStatus::kConverged;
    out->steps = st.step_index;
    out->functional = st.functional;
    out->area = st.area;
    out->residual = st.residual;
    out->lambda_star = st.lambda_star;
    const double target = st.history.empty() ? st.area : st.history.front().area;
    double drift = 0.0;
    int monotone = 1;
    for (size_t i = 0; i < st.history.size(); ++i) {
      drift = std::max(drift, std::fabs(st.history[i].area - target) / target);
      if (i && st.history[i].functional > st.history[i - 1].functional)
        monotone = 0;
    }
    out->max_area_drift = drift;
    out->monotone = monotone;
    if (final_mesh) *final_mesh = new qll_mesh{st.mesh};
    if (st.status == qll::FlowStatus::kDegenerate) {
      g_error = st.message;
      return QLL_E_FLOW;
    }
    return QLL_OK;
  });
}

qll_status qll_radial_sphere(const char* model, int n, const char* const* keys,
                             const double* values, size_t count, double r,
                             double charge, qll_radial* out) {
  if (!model || !out) return argument_error("null argument");
  return guarded([&] {
    const qll::RadialModel m(model, n, make_params(keys, values, count));
    const auto rep = qll::radial_sphere(m, r, charge);
    *out = qll_radial{rep.area, rep.H, rep.P, rep.sc_sigma, rep.ric_nn,
                      rep.mu, rep.J_norm, rep.dec_margin, rep.energy_1,
                      rep.energy_2, rep.energy_1_dyn, rep.energy_2_dyn,
                      rep.charged_energy_1, rep.charged_energy_2,
                      rep.willmore_residual0, rep.willmore_lambda_star,
                      rep.hawking_residual0, rep.hawking_lambda_star,
                      rep.f_integral, rep.f_defined ? 1 : 0};
    return QLL_OK;
  });
}

qll_status qll_run_config(const char* config_text, const char* task,
                          const int* grid, const char* out_dir,
                          const char* format) {
  if (!config_text) return argument_error("null config");
  return guarded([&] {
    std::optional<qll::Task> t;
    if (task) t = qll::parse_task(task);
    qll::RunConfig cfg = qll::parse_run_config(config_text, t);
    if (grid) {
      cfg.ntheta = grid[0];
      cfg.nphi = grid[1];
    }
    if (out_dir) cfg.out_dir = out_dir;
    if (format) cfg.format = format;
    const auto res = qll::run(cfg);
    if (res.exit_code == 2) {
      g_error = res.message;
      return QLL_E_HYPOTHESIS;
    }
    return QLL_OK;
  });
}

void qll_set_threads(int threads) { qll::set_thread_cap(threads); }

}  // extern "C"
