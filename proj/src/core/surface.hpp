#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "ambient.hpp"
#include "spectral.hpp"

namespace qll {

std::shared_ptr<const SphereGrid> shared_grid(int ntheta, int nphi);

// Star-shaped closed surface X = center + r(theta, phi) u(theta, phi).
class SurfaceMesh {
 public:
  SurfaceMesh(std::shared_ptr<const SphereGrid> grid, Vec3d center, Field r);

  static SurfaceMesh sphere(int ntheta, int nphi, double radius,
                            Vec3d center = {0.0, 0.0, 0.0});
  // semi-axes along x, y, z
  static SurfaceMesh ellipsoid(int ntheta, int nphi, const Vec3d& axes,
                               Vec3d center = {0.0, 0.0, 0.0});
  struct Harmonic {
    int l;
    int m;
    double amplitude;
  };
  // r = r0 (1 + sum amplitude Y_lm)
  static SurfaceMesh perturbed_sphere(int ntheta, int nphi, double r0,
                                      const std::vector<Harmonic>& modes,
                                      Vec3d center = {0.0, 0.0, 0.0});

  const SphereGrid& grid() const { return *grid_; }
  std::shared_ptr<const SphereGrid> grid_ptr() const { return grid_; }
  const Vec3d& center() const { return center_; }
  const Field& radius() const { return r_; }
  Vec3d direction(int i, int j) const;
  Vec3d point(int i, int j) const;

  SurfaceMesh with_radius(Field r) const;
  // Same surface sampled on another grid (spectral interpolation).
  SurfaceMesh resampled(int ntheta, int nphi) const;

  void write(std::ostream& os) const;
  static SurfaceMesh read(std::istream& is);
  void save(const std::string& path) const;
  static SurfaceMesh load(const std::string& path);

 private:
  std::shared_ptr<const SphereGrid> grid_;
  Vec3d center_;
  Field r_;
};

// Induced geometry on every node. Tangent vectors are coordinate vectors of
// (theta, phi); h = [[E, F], [F, G]].
struct SurfaceGeometry {
  std::shared_ptr<const SphereGrid> grid;
  std::vector<Vec3d> X, Xt, Xp;
  std::vector<Vec3d> nu;       // unit normal, vector components
  std::vector<Vec3d> nu_flat;  // unit normal, covector components
  Field nu_radial;             // nu_flat(u), normal part of a radial shift
  Field E, F, G;
  Field Btt, Btp, Bpp;
  Field H, B2, Bo2, P, K;
  Field density;  // area element per (cos theta, phi) cell: sqrt(det h)/sin
  Field theta_plus, theta_minus;
  // ambient data along the surface
  Field ric_nn, scalar_m, tr_k, k_norm2, k_nn, dnu_tr_k, dnu_k_nn;
  Field mu, J_norm, dec_margin;
  Field k_nu_t, k_nu_p;  // k(nu, X_theta), k(nu, X_phi)
  std::vector<Mat3d> metric, k;
  bool has_k = false;
  double area = 0.0;

  const SphereGrid& g() const { return *grid; }
  std::size_t size() const { return X.size(); }
};

SurfaceGeometry induced_geometry(const AmbientSpace& space,
                                 const SurfaceMesh& mesh);

double integrate(const SurfaceGeometry& geom, const Field& f);

struct SurfaceGradient {
  Field t, p;               // coordinate derivatives
  std::vector<Vec3d> grad;  // ambient components of the surface gradient
};
SurfaceGradient surface_gradient(const SurfaceGeometry& geom, const Field& f);
Field laplacian(const SurfaceGeometry& geom, const Field& f);
// Divergence of the tangential part of V.
Field tangential_divergence(const SurfaceGeometry& geom,
                            const std::vector<Vec3d>& V);
// Divergence of the tangent field dual to the 1-form (c_theta, c_phi).
Field covector_divergence(const SurfaceGeometry& geom, const Field& ct,
                          const Field& cp);

Field gauss_equation_residual(const SurfaceGeometry& geom);

}  // namespace qll
