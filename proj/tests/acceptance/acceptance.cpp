// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "criticality.hpp"
#include "error.hpp"
#include "flow.hpp"
#include "functionals.hpp"
#include "highdim.hpp"
#include "surface.hpp"

using namespace qll;

namespace {

constexpr double kPi = std::numbers::pi;

class Check {
 public:
  // records |value - want| <= tol
  void near(const std::string& what, double value, double want, double tol) {
    const double err = std::fabs(value - want);
    worst_ = std::max(worst_, err / tol);
    if (!(err <= tol)) note(what + ": got " + fmt(value) + ", want " + fmt(want) +
                            " +- " + fmt(tol));
  }
  void below(const std::string& what, double value, double bound) {
    if (!(value <= bound)) note(what + ": " + fmt(value) + " > " + fmt(bound));
  }
  void that(const std::string& what, bool ok) {
    if (!ok) note(what);
  }
  void note(const std::string& msg) {
    if (failures_++ == 0) first_ = msg;
  }
  bool ok() const { return failures_ == 0; }
  const std::string& first() const { return first_; }
  int failures() const { return failures_; }
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

 private:
  int failures_ = 0;
  double worst_ = 0.0;
  std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_abs_dev(const Field& f, double c) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::fabs(v - c));
  return m;
}

double max_abs(const Field& f) { return max_abs_dev(f, 0.0); }

SurfaceGeometry sphere_in(const AmbientSpace& s, double r, int nt = 48, int np = 96) {
  return induced_geometry(s, SurfaceMesh::sphere(nt, np, r));
}

// 1
void example1(Check& c) {
  const auto space = make_space("hyperboloid", {{"a", 1.0}});
  for (double r : {0.5, 1.0, 2.0}) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string tag = "r=" + Check::fmt(r) + " ";
    const auto g = sphere_in(space, r);
    c.below(tag + "H", max_abs_dev(g.H, 2.0 / r * std::sqrt(1.0 + r * r)), 1e-8);
    c.below(tag + "P", max_abs_dev(g.P, 2.0), 1e-8);
    Field bo(g.size());
    for (std::size_t i = 0; i < bo.size(); ++i) bo[i] = std::sqrt(std::max(0.0, g.Bo2[i]));
    c.below(tag + "|B°|", max_abs(bo), 1e-8);
    c.near(tag + "E", hawking_energy(g), 0.0, 1e-8);
    c.below(tag + "hawking residual", residual_report(g, ResidualMode::kHawking, 0.0).linf, 1e-6);
    const auto f = f_integrals(g, 0.0, 0.0);
    c.near(tag + "int f", f.f, 3.0 * r * r / (1.0 + r * r) * 4.0 * kPi * r * r, 1e-6);
    c.that(tag + "int f > 0", f.f > 0.0);
    c.near(tag + "int f~", f.f_tilde, 0.0, 1e-6);
    c.below(tag + "runtime [s]", seconds_since(t0), 5.0);
  }
}

// 2
void example2(Check& c) {
  const double a = 0.5;
  const auto space = make_space("paraboloid", {{"alpha", a}});
  for (double r : {0.5, 1.0, 1.5}) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string tag = "r=" + Check::fmt(r) + " ";
    const auto g = sphere_in(space, r);
    const double w2 = 1.0 - a * a * r * r, w = std::sqrt(w2);
    c.below(tag + "H", max_abs_dev(g.H, 2.0 / (r * w)), 1e-6);
    c.below(tag + "P", max_abs_dev(g.P, 2.0 * a / w), 1e-6);
    c.below(tag + "tr k", max_abs_dev(g.tr_k, a * (3.0 - 2.0 * a * a * r * r) / (w2 * w)), 1e-6);
    c.below(tag + "|k|^2", max_abs_dev(g.k_norm2, a * a / (w2 * w2 * w2) + 2.0 * a * a / w2), 1e-6);
    c.below(tag + "nabla_nu tr k",
            max_abs_dev(g.dnu_tr_k, a * a * a * r * (5.0 - 2.0 * a * a * r * r) / (w2 * w2 * w2)), 1e-6);
    c.below(tag + "nabla_nu k(nu,nu)", max_abs_dev(g.dnu_k_nn, 3.0 * a * a * a * r / (w2 * w2 * w2)), 1e-6);
    std::vector<Vec3d> V(g.size());
    for (std::size_t i = 0; i < V.size(); ++i)
      V[i] = mul(inverse(g.metric[i]), mul(g.k[i], g.nu[i]));
    c.below(tag + "div k(., nu)", max_abs(tangential_divergence(g, V)), 1e-6);
    c.near(tag + "E", hawking_energy(g), 0.0, 1e-8);
    c.near(tag + "hawking lambda*", best_lambda(g, ResidualMode::kHawking), 0.0, 1e-6);
    c.near(tag + "willmore lambda*", best_lambda(g, ResidualMode::kWillmore),
           2.0 * a * a / (w2 * w2), 1e-5);
    c.below(tag + "runtime [s]", seconds_since(t0), 5.0);
  }
}

// 3
void time_symmetric(Check& c) {
  const auto e = make_space("euclidean", {});
  for (double r : {0.5, 1.0, 3.0}) {
    const auto g = sphere_in(e, r);
    c.near("euclidean E r=" + Check::fmt(r), hawking_energy(g), 0.0, 1e-8);
    c.below("euclidean willmore residual", residual_report(g, ResidualMode::kWillmore, 0.0).linf, 1e-8);
  }
  const Vec3d axes{1.0, 1.0, 1.2};
  const double e1 = hawking_energy(induced_geometry(e, SurfaceMesh::ellipsoid(32, 64, axes)));
  const double e2 = hawking_energy(induced_geometry(e, SurfaceMesh::ellipsoid(48, 96, axes)));
  c.that("ellipsoid E < 0 at 32x64", e1 < 0.0);
  c.that("ellipsoid E < 0 at 48x96", e2 < 0.0);
  c.below("ellipsoid resolution disagreement", std::fabs(e1 - e2) / std::fabs(e2), 1e-2);
  const auto s = make_space("schwarzschild", {{"m", 1.0}});
  for (double r : {3.0, 4.0, 8.0}) {
    const auto g = sphere_in(s, r);
    c.near("schwarzschild E r=" + Check::fmt(r), hawking_energy(g), 1.0, 1e-6);
    c.near("brown-york r=" + Check::fmt(r), brown_york_round(g).value,
           r * (1.0 - std::sqrt(1.0 - 2.0 / r)), 1e-6);
  }
}

// 4
void cosmological(Check& c) {
  const auto h = make_space("hyperbolic", {{"Lambda", -3.0}});
  for (double r : {0.5, 1.0, 2.0})
    c.near("H^3 E_Lambda r=" + Check::fmt(r), lambda_hawking_energy(sphere_in(h, r), -3.0), 0.0, 1e-7);
  const auto s = make_space("sphere3", {{"Lambda", 3.0}});
  const auto g = sphere_in(s, 1.0);
  c.below("equator H", max_abs(g.H), 1e-8);
  c.near("equator area", g.area, 12.0 * kPi / 3.0, 1e-8);
  c.near("equator E_Lambda", lambda_hawking_energy(g, 3.0), 0.0, 1e-7);
}

// 5
void charged(Check& c) {
  const auto s = make_space("reissner_nordstrom", {{"m", 1.0}, {"q", 0.5}});
  for (double r : {3.0, 4.0}) {
    const auto g = sphere_in(s, r);
    const auto q = charged_hawking_energy(g, s);
    c.near("Q r=" + Check::fmt(r), q.charge, 0.5, 1e-8);
    c.near("E_Q r=" + Check::fmt(r), q.energy, 1.0, 1e-6);
    c.that("E_Q >= E", q.energy >= hawking_energy(g));
  }
}

// 6
void first_variation(Check& c) {
  struct Case {
    const char* name;
    Params params;
    double r0;
  } cases[] = {{"euclidean", {}, 1.0},
               {"schwarzschild", {{"m", 1.0}}, 4.0},
               {"paraboloid", {{"alpha", 0.5}}, 1.0}};
  double worst_rel = 0.0, worst_order = 10.0;
  for (const auto& k : cases) {
    const auto space = make_space(k.name, k.params);
    const auto mesh =
        SurfaceMesh::perturbed_sphere(32, 64, k.r0, {{2, 0, 0.05}, {3, 1, 0.03}});
    for (unsigned seed = 1; seed <= 5; ++seed) {
      const Field alpha = random_lapse(mesh.grid(), 4, seed);
      const auto chk = first_variation_check(space, mesh, alpha, {1e-3, 5e-4});
      const std::string tag = std::string(k.name) + " seed " + std::to_string(seed);
      c.below(tag + " relative error", chk.rows[0].relative_error, 1e-2);
      c.that(tag + " order " + Check::fmt(chk.observed_order) + " < 1.9",
             chk.observed_order >= 1.9);
      worst_rel = std::max(worst_rel, chk.rows[0].relative_error);
      worst_order = std::min(worst_order, chk.observed_order);
    }
  }
  if (c.ok())
    c.that("", true), std::printf("     worst relative error %.2e, lowest order %.3f\n",
                                  worst_rel, worst_order);
}

// 7
void flow(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto space = make_space("euclidean", {});
  FlowConfig cfg;
  cfg.mode = ResidualMode::kWillmore;
  cfg.target_area = 4.0 * kPi;
  cfg.max_steps = 5000;
  cfg.residual_tol = 1e-5;
  const auto st =
      run_flow(space, cfg, SurfaceMesh::perturbed_sphere(32, 64, 1.0, {{2, 0, 0.05}}));
  c.that("flow status " + std::string(to_string(st.status)),
         st.status == FlowStatus::kConverged);
  c.below("l2 residual", st.residual, 1e-5);
  c.below("steps", st.step_index, 5000);
  double drift = 0.0;
  bool monotone = true;
  for (std::size_t i = 0; i < st.history.size(); ++i) {
    drift = std::max(drift, std::fabs(st.history[i].area / cfg.target_area - 1.0));
    if (i && st.history[i].functional > st.history[i - 1].functional) monotone = false;
  }
  c.that("functional monotone on accepted steps", monotone);
  c.below("area drift", drift, 1e-8);
  c.near("final E", hawking_energy(induced_geometry(space, st.mesh)), 0.0, 1e-4);
  c.below("runtime [s]", seconds_since(t0), 120.0);
  std::printf("     %d steps, residual %.2e, %.2f s\n", st.step_index, st.residual,
              seconds_since(t0));
}

// 8
void highdim(Check& c) {
  for (int n : {4, 5, 7}) {
    const RadialModel e("euclidean", n, {});
    for (double r : {0.5, 1.0, 2.0, 5.0}) {
      const auto rep = radial_sphere(e, r);
      c.near("n=" + std::to_string(n) + " r=" + Check::fmt(r) + " willmore residual",
             willmore_nd_residual(rep, (n - 3.0) * (n - 1.0) / (2.0 * r * r)), 0.0, 1e-10);
    }
  }
  struct Case {
    const char* name;
    Params params;
    double r;
  } cases[] = {{"schwarzschild", {{"m", 1.0}}, 4.0},
               {"hyperboloid", {{"a", 1.0}}, 1.0},
               {"paraboloid", {{"alpha", 0.5}}, 1.0}};
  for (const auto& k : cases) {
    const auto d = nd_energy_consistency(RadialModel(k.name, 3, k.params), k.r);
    c.below(std::string(k.name) + " E_{3,1} defect", d.energy_1, 1e-8);
    c.below(std::string(k.name) + " E_{3,2} defect", d.energy_2, 1e-8);
    c.below(std::string(k.name) + " f defect", d.f, 1e-8);
  }
}

// 9
void structural(Check& c) {
  struct Surf {
    std::string label;
    AmbientSpace space;
    SurfaceMesh mesh;
  };
  const auto eu = make_space("euclidean", {});
  const auto sc = make_space("schwarzschild", {{"m", 1.0}});
  const auto hy = make_space("hyperboloid", {{"a", 1.0}});
  const auto pa = make_space("paraboloid", {{"alpha", 0.5}});
  const auto rn = make_space("reissner_nordstrom", {{"m", 1.0}, {"q", 0.5}});
  const auto hb = make_space("hyperbolic", {{"Lambda", -3.0}});
  const auto s3 = make_space("sphere3", {{"Lambda", 3.0}});
  const std::vector<SurfaceMesh::Harmonic> bump{{2, 0, 0.05}, {3, 1, 0.03}};
  std::vector<Surf> surfs;
  for (double r : {0.5, 1.0, 3.0}) surfs.push_back({"euclidean sphere", eu, SurfaceMesh::sphere(48, 96, r)});
  for (double r : {0.5, 1.0, 2.0}) surfs.push_back({"hyperboloid sphere", hy, SurfaceMesh::sphere(48, 96, r)});
  for (double r : {0.5, 1.0, 1.5}) surfs.push_back({"paraboloid sphere", pa, SurfaceMesh::sphere(48, 96, r)});
  for (double r : {3.0, 4.0, 8.0}) surfs.push_back({"schwarzschild sphere", sc, SurfaceMesh::sphere(48, 96, r)});
  for (double r : {3.0, 4.0}) surfs.push_back({"reissner-nordstrom sphere", rn, SurfaceMesh::sphere(48, 96, r)});
  for (double r : {0.5, 1.0, 2.0}) surfs.push_back({"hyperbolic sphere", hb, SurfaceMesh::sphere(48, 96, r)});
  surfs.push_back({"3-sphere equator", s3, SurfaceMesh::sphere(48, 96, 1.0)});
  surfs.push_back({"ellipsoid 32", eu, SurfaceMesh::ellipsoid(32, 64, {1.0, 1.0, 1.2})});
  surfs.push_back({"ellipsoid 48", eu, SurfaceMesh::ellipsoid(48, 96, {1.0, 1.0, 1.2})});
  surfs.push_back({"perturbed euclidean", eu, SurfaceMesh::perturbed_sphere(32, 64, 1.0, bump)});
  surfs.push_back({"perturbed schwarzschild", sc, SurfaceMesh::perturbed_sphere(32, 64, 4.0, bump)});
  surfs.push_back({"perturbed paraboloid", pa, SurfaceMesh::perturbed_sphere(32, 64, 1.0, bump)});
  double worst_gb = 0.0, worst_ge = 0.0;
  for (const auto& s : surfs) {
    const auto g = induced_geometry(s.space, s.mesh);
    const double gb = gauss_bonnet_defect(g);
    const double ge = max_abs(gauss_equation_residual(g));
    c.below(s.label + " Gauss-Bonnet defect", gb, 1e-6);
    c.below(s.label + " Gauss equation residual", ge, 1e-5);
    worst_gb = std::max(worst_gb, gb);
    worst_ge = std::max(worst_ge, ge);
  }
  for (const auto& [label, space] :
       std::vector<std::pair<std::string, AmbientSpace>>{{"hyperboloid", hy}, {"paraboloid", pa}}) {
    for (double r : {0.5, 1.0, 1.5}) {
      const auto g = sphere_in(space, r);
      c.below(label + " DEC margin", max_abs(g.dec_margin), 1e-8);
    }
  }
  const double e1 = hawking_energy(induced_geometry(eu, SurfaceMesh::ellipsoid(48, 96, {1.0, 1.0, 1.2})));
  const double e2 = hawking_energy(induced_geometry(eu, SurfaceMesh::ellipsoid(48, 96, {2.0, 2.0, 2.4})));
  c.near("scaling E(2 Sigma) / E(Sigma)", e2 / e1, 2.0, 1e-6);
  std::printf("     %zu surfaces, worst Gauss-Bonnet %.1e, worst Gauss equation %.1e\n",
              surfs.size(), worst_gb, worst_ge);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
  } criteria[] = {{"example 1 golden suite (hyperboloid)", example1},
                  {"example 2 golden suite (paraboloid)", example2},
                  {"time-symmetric model suite", time_symmetric},
                  {"cosmological-constant suite", cosmological},
                  {"charged suite", charged},
                  {"first-variation property suite", first_variation},
                  {"flow suite", flow},
                  {"higher-dimensional suite", highdim},
                  {"structural property suite", structural}};
  int failed = 0, index = 0;
  for (const auto& cr : criteria) {
    ++index;
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const Error& e) {
      c.note(std::string("unexpected ") + to_string(e.kind()) + " error: " + e.what());
    } catch (const std::exception& e) {
      c.note(std::string("unexpected exception: ") + e.what());
    }
    const double dt = seconds_since(t0);
    if (c.ok()) {
      std::printf("PASS %d %s (%.2f s)\n", index, cr.name, dt);
    } else {
      ++failed;
      std::printf("FAIL %d %s (%.2f s): %s%s\n", index, cr.name, dt, c.first().c_str(),
                  c.failures() > 1 ? (" [+" + std::to_string(c.failures() - 1) + " more]").c_str()
                                   : "");
    }
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
