#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ambient.hpp"
#include "catalog.hpp"
#include "error.hpp"

using namespace qll;

namespace {

double max_abs_diff(const Mat3d& a, const Mat3d& b) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::fabs(a[i][j] - b[i][j]));
  return m;
}

Vec3d radial_unit(const AmbientSpace& s, const Vec3d& p) {
  const Vec3d n = (1.0 / norm(p)) * p;
  return (1.0 / std::sqrt(bilinear(s.metric(p), n, n))) * n;
}

}  // namespace

TEST(Ambient, EuclideanIsFlat) {
  const auto s = make_space("euclidean", {});
  const auto c = curvature_at(s, {0.3, -1.2, 2.0});
  EXPECT_EQ(c.scalar, 0.0);
  for (auto& row : c.ricci)
    for (double v : row) EXPECT_EQ(v, 0.0);
  const auto cd = constraint_data_at(s, {1, 2, 3});
  EXPECT_EQ(cd.mu, 0.0);
  EXPECT_EQ(cd.J_norm, 0.0);
  EXPECT_EQ(cd.dec_margin, 0.0);
}

// Reference values computed symbolically at (1, 2, 3), m = 1.
TEST(Ambient, SchwarzschildRicciMatchesReference) {
  const auto s = make_space("schwarzschild", {{"m", 1.0}});
  const auto c = curvature_at(s, {1.0, 2.0, 3.0});
  const double ref[9] = {0.01186767687503433,   -0.014444823665991965,
                         -0.021667235498987948, -0.014444823665991965,
                         -0.009799558623953618, -0.043334470997975896,
                         -0.021667235498987948, -0.043334470997975896,
                         -0.04591161778893353};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(c.ricci[i][j], ref[3 * i + j], 1e-13);
  EXPECT_NEAR(c.scalar, 0.0, 1e-13);

  const Vec3d p{0.0, 0.0, 4.0};
  const auto c4 = curvature_at(s, p);
  const Vec3d nu = radial_unit(s, p);
  EXPECT_NEAR(bilinear(c4.ricci, nu, nu), -1.0 / 32.0, 1e-13);
  EXPECT_NEAR(c4.scalar, 0.0, 1e-13);
}

TEST(Ambient, ReissnerNordstromScalarCurvature) {
  // Sc = q^2 / r^4 on the time-symmetric slice
  const auto s = make_space("reissner_nordstrom", {{"m", 1.0}, {"q", 0.5}});
  const auto c = curvature_at(s, {1.0, 2.0, 3.0});
  EXPECT_NEAR(c.scalar, 0.002551020408163265, 1e-14);
  EXPECT_NEAR(c.ricci[0][0], 0.012461132723918696, 1e-13);
  EXPECT_NEAR(c.ricci[1][2], -0.039773735904669705, 1e-13);
}

TEST(Ambient, HyperbolicRicciIsMinusTwoOverASquared) {
  for (double a : {1.0, 2.0}) {
    const auto s = make_space("hyperboloid", {{"a", a}});
    const Vec3d p{0.0, 0.0, 1.0};
    const auto c = curvature_at(s, p);
    const Vec3d nu = radial_unit(s, p);
    EXPECT_NEAR(bilinear(c.ricci, nu, nu), -2.0 / (a * a), 1e-12);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        EXPECT_NEAR(c.ricci[i][j], -2.0 / (a * a) * c.g[i][j], 1e-12);
    EXPECT_NEAR(c.scalar, -6.0 / (a * a), 1e-12);
  }
}

TEST(Ambient, Sphere3IsEinstein) {
  const auto s = make_space("sphere3", {{"Lambda", 3.0}});
  const Vec3d p{0.3, 0.4, -0.2};
  const auto c = curvature_at(s, p);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(c.ricci[i][j], 2.0 * c.g[i][j], 1e-12);
  EXPECT_NEAR(c.scalar, 6.0, 1e-12);
}

TEST(Ambient, HyperboloidTraceAndParallelK) {
  const auto s = make_space("hyperboloid", {{"a", 1.0}});
  const auto pd = point_data(s, {0.0, 0.0, 1.0});
  EXPECT_NEAR(pd.tr_k, 3.0, 1e-14);
  EXPECT_NEAR(pd.k_norm2, 3.0, 1e-14);
  for (auto& m : pd.nabla_k)
    for (auto& row : m)
      for (double v : row) EXPECT_NEAR(v, 0.0, 1e-14);
  EXPECT_NEAR(pd.constraints.mu, 0.0, 1e-13);
  EXPECT_NEAR(pd.constraints.J_norm, 0.0, 1e-13);
}

TEST(Ambient, ParaboloidClosedForms) {
  const double al = 0.5;
  const auto s = make_space("paraboloid", {{"alpha", al}});
  for (double r : {0.5, 1.0, 1.5}) {
    const Vec3d p{0.0, 0.0, r};
    const auto pd = point_data(s, p);
    const double w2 = 1.0 - al * al * r * r;
    const Vec3d nu = radial_unit(s, p);
    EXPECT_NEAR(pd.tr_k, al * (3.0 - 2.0 * al * al * r * r) / std::pow(w2, 1.5),
                1e-13);
    EXPECT_NEAR(bilinear(pd.curv.ricci, nu, nu), -2.0 * al * al / (w2 * w2),
                1e-12);
    EXPECT_NEAR(dot(nu, pd.d_tr_k),
                std::pow(al, 3) * r * (5.0 - 2.0 * al * al * r * r) / std::pow(w2, 3),
                1e-12);
    double dknn = 0.0;
    for (int a = 0; a < 3; ++a) dknn += nu[a] * bilinear(pd.nabla_k[a], nu, nu);
    EXPECT_NEAR(dknn, 3.0 * std::pow(al, 3) * r / std::pow(w2, 3), 1e-12);
  }
}

// Reference values computed symbolically at (0.3, 0.4, -0.2), alpha = 1/2.
TEST(Ambient, ParaboloidOffAxisReference) {
  const auto s = make_space("paraboloid", {{"alpha", 0.5}});
  const auto pd = point_data(s, {0.3, 0.4, -0.2});
  EXPECT_NEAR(pd.curv.scalar, -1.701527887766, 1e-12);
  EXPECT_NEAR(pd.tr_k, 1.598104739476093, 1e-14);
  EXPECT_NEAR(pd.k_norm2, 0.8524108705699508, 1e-14);
  EXPECT_NEAR(pd.curv.ricci[0][1], 0.008718332473608882, 1e-13);
  EXPECT_NEAR(pd.nabla_k[0][0][0], 0.12594520713909663, 1e-13);
  EXPECT_NEAR(pd.nabla_k[2][2][2], -0.08396347142606443, 1e-13);
}

TEST(Ambient, MinkowskiSlicesSatisfyVacuumConstraints) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto ex1 = make_space("hyperboloid", {{"a", 1.0}});
  const auto ex2 = make_space("paraboloid", {{"alpha", 0.5}});
  for (int n = 0; n < 50; ++n) {
    const Vec3d p{u(rng), u(rng), u(rng)};
    for (const auto* s : {&ex1, &ex2}) {
      const auto cd = constraint_data_at(*s, p);
      EXPECT_NEAR(cd.mu, 0.0, 1e-8);
      EXPECT_NEAR(cd.J_norm, 0.0, 1e-8);
      EXPECT_NEAR(cd.dec_margin, 0.0, 1e-8);
    }
  }
}

TEST(Ambient, SchwarzschildMassZeroIsEuclidean) {
  const auto s0 = make_space("schwarzschild", {{"m", 0.0}});
  const auto e = make_space("euclidean", {});
  for (Vec3d p : {Vec3d{1, 2, 3}, Vec3d{0.1, 0, 0}, Vec3d{-4, 0.5, 2}}) {
    EXPECT_EQ(max_abs_diff(s0.metric(p), e.metric(p)), 0.0);
    EXPECT_EQ(curvature_at(s0, p).scalar, 0.0);
  }
}

TEST(Ambient, MetricCompatibility) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (const char* name : {"schwarzschild", "hyperboloid", "sphere3"}) {
    Params prm;
    if (std::string(name) == "schwarzschild") prm["m"] = 0.2;
    const auto s = make_space(name, prm);
    for (int n = 0; n < 100; ++n) {
      Vec3d p{u(rng), u(rng), u(rng)};
      if (!s.in_domain(p)) continue;
      const auto md = s.metric_derivatives(p);
      const auto c = curvature_from(md);
      // nabla_c g_ab = d_c g_ab - Gamma^d_ca g_db - Gamma^d_cb g_ad
      for (int cc = 0; cc < 3; ++cc)
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            double v = md.dg[cc][a][b];
            for (int d = 0; d < 3; ++d)
              v -= c.christoffel[d][cc][a] * md.g[d][b] +
                   c.christoffel[d][cc][b] * md.g[a][d];
            EXPECT_NEAR(v, 0.0, 1e-8);
          }
    }
  }
}

TEST(Ambient, RiemannSymmetries) {
  const auto s = make_space("paraboloid", {{"alpha", 0.7}});
  const auto c = curvature_at(s, {0.2, -0.5, 0.4});
  const auto& R = c.riemann;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int cc = 0; cc < 3; ++cc)
        for (int d = 0; d < 3; ++d) {
          EXPECT_NEAR(R[a][b][cc][d], -R[b][a][cc][d], 1e-12);
          EXPECT_NEAR(R[a][b][cc][d], -R[a][b][d][cc], 1e-12);
          EXPECT_NEAR(R[a][b][cc][d], R[cc][d][a][b], 1e-12);
          EXPECT_NEAR(R[a][b][cc][d] + R[a][cc][d][b] + R[a][d][b][cc], 0.0, 1e-12);
        }
}

// div(Ric - Sc g / 2) = 0, with the divergence taken by central differences of
// analytic curvature.
TEST(Ambient, ContractedBianchi) {
  const Vec3d p{0.4, -0.3, 0.6};
  for (const char* name : {"paraboloid", "schwarzschild", "reissner_nordstrom"}) {
    Params prm;
    if (std::string(name) == "paraboloid") prm["alpha"] = 0.8;
    if (std::string(name) == "schwarzschild") prm["m"] = 0.1;
    if (std::string(name) == "reissner_nordstrom") prm = {{"m", 0.1}, {"q", 0.05}};
    const auto s = make_space(name, prm);
    const double h = 1e-4;
    const auto c0 = curvature_at(s, p);
    Tensor3d dG{};  // d_c (G_ab) with G = Ric - Sc g / 2
    for (int cc = 0; cc < 3; ++cc) {
      Vec3d pp = p, pm = p;
      pp[cc] += h;
      pm[cc] -= h;
      const auto cp = curvature_at(s, pp), cm = curvature_at(s, pm);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          dG[cc][a][b] = ((cp.ricci[a][b] - 0.5 * cp.scalar * cp.g[a][b]) -
                          (cm.ricci[a][b] - 0.5 * cm.scalar * cm.g[a][b])) /
                         (2 * h);
    }
    Mat3d G{};
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        G[a][b] = c0.ricci[a][b] - 0.5 * c0.scalar * c0.g[a][b];
    for (int b = 0; b < 3; ++b) {
      double div = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int cc = 0; cc < 3; ++cc) {
          double cov = dG[cc][a][b];
          for (int d = 0; d < 3; ++d)
            cov -= c0.christoffel[d][cc][a] * G[d][b] + c0.christoffel[d][cc][b] * G[a][d];
          div += c0.g_inv[a][cc] * cov;
        }
      EXPECT_NEAR(div, 0.0, 1e-6) << name;
    }
  }
}

TEST(Ambient, FiniteDifferenceModeAgrees) {
  const Vec3d p{0.3, 0.5, -0.4};
  for (const char* name : {"paraboloid", "hyperboloid", "sphere3", "schwarzschild"}) {
    Params prm;
    if (std::string(name) == "paraboloid") prm["alpha"] = 0.5;
    if (std::string(name) == "schwarzschild") prm["m"] = 0.2;
    const auto s = make_space(name, prm);
    const auto ca = curvature_at(s, p);
    for (double h : {0.0, 1e-4}) {
      const auto fd = s.with_derivative_mode(DerivativeMode::kFiniteDifference, h);
      const auto cf = curvature_at(fd, p);
      double scale = 0.0;
      for (auto& row : ca.ricci)
        for (double v : row) scale = std::max(scale, std::fabs(v));
      EXPECT_LE(max_abs_diff(ca.ricci, cf.ricci) / scale, 1e-5) << name << " h=" << h;
      EXPECT_NEAR(nabla_k_at(s, p)[0][1][1], nabla_k_at(fd, p)[0][1][1], 1e-6);
    }
  }
}

TEST(Ambient, Errors) {
  const auto s = make_space("schwarzschild", {{"m", 1.0}});
  try {
    curvature_at(s, {0.0, 0.0, 1.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDomain);
  }
  const auto p = make_space("paraboloid", {{"alpha", 0.5}});
  EXPECT_THROW(point_data(p, {0.0, 0.0, 2.5}), Error);
  EXPECT_THROW(make_space("nope", {}), Error);
  EXPECT_THROW(make_space("hyperboloid", {{"a", -1.0}}), Error);
  EXPECT_THROW(make_space("schwarzschild", {{"mass", 1.0}}), Error);
  EXPECT_THROW(make_space("hyperbolic", {{"Lambda", 3.0}}), Error);
}

TEST(Ambient, ElectricField) {
  const auto s = make_space("reissner_nordstrom", {{"m", 1.0}, {"q", 0.5}});
  ASSERT_TRUE(s.has_electric_field());
  const Vec3d p{0.0, 3.0, 0.0};
  const Vec3d E = s.electric_field(p);
  EXPECT_NEAR(std::sqrt(bilinear(s.metric(p), E, E)), 0.5 / 9.0, 1e-15);
  EXPECT_FALSE(make_space("euclidean", {}).has_electric_field());
}
