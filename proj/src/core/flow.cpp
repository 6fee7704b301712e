#include "flow.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "functionals.hpp"

namespace qll {
namespace {

struct Evaluated {
  SurfaceGeometry geom;
  double functional = 0.0;
};

double integral_product(const SurfaceGeometry& g, const Field& a,
                        const Field& b) {
  Field w(a.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = a[i] * b[i];
  return integrate(g, w);
}

void remove_h_component(const SurfaceGeometry& g, Field* a) {
  const double hh = integral_product(g, g.H, g.H);
  if (!(hh > 1e-300))
    fail(ErrorKind::kNumeric, "degenerate area constraint: int H^2 vanishes");
  const double c = integral_product(g, g.H, *a) / hh;
  for (std::size_t i = 0; i < a->size(); ++i) (*a)[i] -= c * g.H[i];
}

// Multiplicative rescale about the center until the area matches.
SurfaceMesh rescale_to_area(const AmbientSpace& space, SurfaceMesh mesh,
                            double target, SurfaceGeometry* geom_out) {
  SurfaceGeometry g = induced_geometry(space, mesh);
  for (int it = 0; it < 50; ++it) {
    const double rel = g.area / target - 1.0;
    if (std::fabs(rel) <= 1e-12) break;
    const double c = std::sqrt(target / g.area);
    Field r = mesh.radius();
    for (double& v : r) v *= c;
    mesh = mesh.with_radius(std::move(r));
    g = induced_geometry(space, mesh);
  }
  if (std::fabs(g.area / target - 1.0) > 1e-10)
    fail(ErrorKind::kFlow, "area rescaling did not converge");
  *geom_out = std::move(g);
  return mesh;
}

}  // namespace

const char* to_string(FlowStatus status) {
  switch (status) {
    case FlowStatus::kConverged: return "converged";
    case FlowStatus::kMaxSteps: return "max_steps";
    case FlowStatus::kStagnated: return "stagnated";
    case FlowStatus::kDegenerate: return "degenerate";
  }
  return "unknown";
}

Field descent_speed(const SurfaceGeometry& geom, ResidualMode mode) {
  Field a = residual_at_zero(geom, mode);
  for (double& v : a) v *= 0.5;
  remove_h_component(geom, &a);
  return a;
}

FlowState run_flow(const AmbientSpace& space, const FlowConfig& cfg,
                   const SurfaceMesh& initial) {
  if (!(cfg.residual_tol > 0.0))
    fail(ErrorKind::kConfig, "flow residual_tol must be > 0");
  if (!(cfg.initial_step > 0.0) || !(cfg.backtrack > 0.0 && cfg.backtrack < 1.0) ||
      cfg.max_steps < 0 || cfg.max_backtracks < 0 || !(cfg.growth >= 1.0))
    fail(ErrorKind::kConfig, "invalid flow step parameters");

  SurfaceGeometry geom = induced_geometry(space, initial);
  const double target = cfg.target_area > 0.0 ? cfg.target_area : geom.area;
  if (std::fabs(geom.area / target - 1.0) > 0.5)
    fail(ErrorKind::kConfig, "initial area is not within 50% of the target");

  FlowState st{initial, FlowStatus::kMaxSteps, 0, 0.0, 0.0, 0.0, 0.0, {}, {}};
  st.mesh = rescale_to_area(space, initial, target, &geom);
  const SphereGrid& grid = geom.g();
  const int lmax = grid.max_degree();

  double dt = cfg.initial_step;
  st.functional = mode_functional(geom, cfg.mode);
  auto measure = [&](const SurfaceGeometry& g) {
    const ResidualReport rep = residual_report_best(g, cfg.mode);
    st.residual = rep.l2;
    st.lambda_star = rep.lambda_star;
    st.area = g.area;
  };
  measure(geom);
  st.history.push_back({0, st.functional, st.area, st.residual, 0.0});

  for (int step = 1; step <= cfg.max_steps; ++step) {
    if (st.residual <= cfg.residual_tol) {
      st.status = FlowStatus::kConverged;
      return st;
    }
    Field speed = descent_speed(geom, cfg.mode);
    if (cfg.precondition) {
      Field weighted(speed.size());
      for (std::size_t i = 0; i < speed.size(); ++i)
        weighted[i] = speed[i] * geom.density[i];
      auto c = grid.sh_analysis(weighted, lmax);
      for (int l = 0; l <= lmax; ++l) {
        const double w = 1.0 / std::pow(1.0 + l * (l + 1.0), 2);
        for (int m = -l; m <= l; ++m) c[l * l + l + m] *= w;
      }
      speed = grid.sh_synthesis(c, lmax);
      remove_h_component(geom, &speed);
    }

    bool accepted = false;
    std::string last_error;
    for (int bt = 0; bt <= cfg.max_backtracks; ++bt, dt *= cfg.backtrack) {
      try {
        SurfaceGeometry trial_geom;
        SurfaceMesh trial = normal_deformation(st.mesh, geom, speed, dt);
        // keep the increment inside the harmonic band of the grid
        Field dr = trial.radius();
        for (std::size_t i = 0; i < dr.size(); ++i) dr[i] -= st.mesh.radius()[i];
        dr = grid.sh_synthesis(grid.sh_analysis(dr, lmax), lmax);
        for (std::size_t i = 0; i < dr.size(); ++i) dr[i] += st.mesh.radius()[i];
        trial = st.mesh.with_radius(std::move(dr));
        trial = rescale_to_area(space, trial, target, &trial_geom);
        const double value = mode_functional(trial_geom, cfg.mode);
        if (!(value <= st.functional)) continue;
        // changes of the functional at round-off level say nothing; there
        // the residual must not grow
        const double band = 1e-13 * std::max(1.0, std::fabs(st.functional));
        if (st.functional - value <= band &&
            !(residual_report_best(trial_geom, cfg.mode).l2 <= st.residual))
          continue;
        st.mesh = std::move(trial);
        geom = std::move(trial_geom);
        st.functional = value;
        accepted = true;
        break;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::kConfig) throw;
        last_error = e.what();
      }
    }
    if (!accepted) {
      st.status = last_error.empty() ? FlowStatus::kStagnated
                                     : FlowStatus::kDegenerate;
      st.message = last_error.empty()
                       ? "step size underflow after backtracking"
                       : "deformed mesh degenerated: " + last_error;
      return st;
    }
    st.step_index = step;
    measure(geom);
    st.history.push_back({step, st.functional, st.area, st.residual, dt});
    dt = std::min(dt * cfg.growth, cfg.max_step);
  }
  st.status = st.residual <= cfg.residual_tol ? FlowStatus::kConverged
                                              : FlowStatus::kMaxSteps;
  return st;
}

}  // namespace qll
