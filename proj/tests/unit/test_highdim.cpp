#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "catalog.hpp"
#include "criticality.hpp"
#include "error.hpp"
#include "functionals.hpp"
#include "highdim.hpp"

using namespace qll;

TEST(Radial, EuclideanSpheresAreWillmore) {
  for (int n : {3, 4, 5, 7}) {
    const RadialModel e("euclidean", n, {});
    for (double r : {0.5, 1.0, 3.0}) {
      const auto rep = radial_sphere(e, r);
      const double lambda = (n - 3.0) * (n - 1.0) / (2.0 * r * r);
      EXPECT_NEAR(willmore_nd_residual(rep, lambda), 0.0, 1e-10);
      EXPECT_NEAR(rep.willmore_lambda_star, lambda, 1e-12);
      EXPECT_NEAR(rep.energy_1, 0.0, 1e-12);
      EXPECT_NEAR(rep.energy_2, 0.0, 1e-12);
    }
  }
}

TEST(Radial, UnitSphereVolumes) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(RadialModel("euclidean", 3, {}).omega(), 4.0 * pi, 1e-14);
  EXPECT_NEAR(RadialModel("euclidean", 4, {}).omega(), 2.0 * pi * pi, 1e-13);
  EXPECT_NEAR(RadialModel("euclidean", 5, {}).omega(), 8.0 * pi * pi / 3.0, 1e-13);
}

TEST(Radial, SchwarzschildEnergiesEqualMass) {
  for (int n : {3, 4, 5}) {
    const RadialModel s("schwarzschild", n, {{"m", 1.0}});
    const auto rep = radial_sphere(s, 4.0);
    // H = (n-1) sqrt(1 - 2m/r^(n-2)) / r
    const double V = 1.0 - 2.0 / std::pow(4.0, n - 2.0);
    EXPECT_NEAR(rep.H, (n - 1.0) * std::sqrt(V) / 4.0, 1e-14);
    EXPECT_NEAR(rep.energy_1, 1.0, 1e-12);
    EXPECT_NEAR(rep.energy_2, 1.0, 1e-12);
    EXPECT_NEAR(rep.sc_m, 0.0, 1e-14);
    EXPECT_GT(rep.energy_1, 0.0);
  }
}

TEST(Radial, ChargedEnergiesOnReissnerNordstrom) {
  for (int n : {3, 4, 6}) {
    const RadialModel rn("reissner_nordstrom", n, {{"m", 1.0}, {"q", 0.5}});
    const auto rep = radial_sphere(rn, 3.0, 0.5);
    EXPECT_NEAR(rep.charged_energy_1, 1.0, 1e-12);
    EXPECT_NEAR(rep.charged_energy_2, 1.0, 1e-12);
    EXPECT_LT(rep.energy_1, rep.charged_energy_1);
  }
}

TEST(Radial, HyperboloidAndParaboloid) {
  const auto h = radial_sphere(RadialModel("hyperboloid", 3, {{"a", 1.0}}), 1.0);
  EXPECT_NEAR(h.H, 2.0 * std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(h.P, 2.0, 1e-14);
  EXPECT_NEAR(h.ric_nn, -2.0, 1e-14);
  EXPECT_NEAR(h.energy_1_dyn, 0.0, 1e-14);
  EXPECT_NEAR(h.hawking_residual0, 0.0, 1e-13);
  EXPECT_NEAR(h.f, 1.5, 1e-14);
  EXPECT_NEAR(h.dec_margin, 0.0, 1e-14);

  const double a = 0.5, r = 1.0, w2 = 1.0 - a * a * r * r;
  const auto p = radial_sphere(RadialModel("paraboloid", 3, {{"alpha", a}}), r);
  EXPECT_NEAR(p.dnu_tr_k, a * a * a * r * (5.0 - 2.0 * a * a * r * r) / std::pow(w2, 3), 1e-13);
  EXPECT_NEAR(p.dnu_k_nn, 3.0 * a * a * a * r / std::pow(w2, 3), 1e-13);
  EXPECT_NEAR(p.J_norm, 0.0, 1e-14);
  EXPECT_NEAR(p.hawking_lambda_star, 0.0, 1e-13);
  EXPECT_NEAR(p.willmore_lambda_star, 2.0 * a * a / (w2 * w2), 1e-13);
}

TEST(Radial, HigherDimensionalMinkowskiSlicesAreVacuum) {
  for (int n : {4, 5, 7}) {
    for (const auto& [name, p] : std::vector<std::pair<std::string, Params>>{
             {"hyperboloid", {{"a", 2.0}}}, {"paraboloid", {{"alpha", 0.4}}}}) {
      const auto rep = radial_sphere(RadialModel(name, n, p), 1.1);
      EXPECT_NEAR(rep.mu, 0.0, 1e-12) << name << n;
      EXPECT_NEAR(rep.J_norm, 0.0, 1e-12) << name << n;
    }
  }
}

TEST(Radial, ReducesToThreeDimensions) {
  struct Case {
    const char* name;
    Params params;
    double r;
  } cases[] = {{"euclidean", {}, 1.0},
               {"schwarzschild", {{"m", 1.0}}, 4.0},
               {"hyperboloid", {{"a", 1.0}}, 1.0},
               {"paraboloid", {{"alpha", 0.5}}, 1.0},
               {"reissner_nordstrom", {{"m", 1.0}, {"q", 0.5}}, 3.0}};
  for (const auto& c : cases) {
    const RadialModel m(c.name, 3, c.params);
    const auto d = nd_energy_consistency(m, c.r);
    EXPECT_LE(d.energy_1, 1e-8) << c.name;
    EXPECT_LE(d.energy_2, 1e-8) << c.name;
    EXPECT_LE(d.f, 1e-8) << c.name;
    // pointwise f
    const auto rep = radial_sphere(m, c.r);
    const auto g = induced_geometry(make_space(c.name, c.params),
                                    SurfaceMesh::sphere(32, 64, c.r));
    const auto f = f_fields(g, 0.0);
    for (double v : f.f) EXPECT_NEAR(v, rep.f, 1e-8) << c.name;
    EXPECT_NEAR(rep.willmore_lambda_star, best_lambda(g, ResidualMode::kWillmore), 1e-8);
  }
}

TEST(Radial, Errors) {
  EXPECT_THROW(RadialModel("euclidean", 2, {}), Error);
  EXPECT_THROW(RadialModel("torus", 4, {}), Error);
  EXPECT_THROW(RadialModel("schwarzschild", 4, {{"mass", 1.0}}), Error);
  EXPECT_THROW(RadialModel("paraboloid", 4, {}), Error);
  const RadialModel p("paraboloid", 4, {{"alpha", 0.5}});
  try {
    radial_sphere(p, 2.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
  try {
    radial_sphere(RadialModel("schwarzschild", 4, {{"m", 1.0}}), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
  EXPECT_THROW(nd_energy_consistency(RadialModel("euclidean", 4, {}), 1.0), Error);
}
