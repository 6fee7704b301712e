#include "surface.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"

namespace qll {
namespace {

std::string node_name(int i, int j) {
  return "node (" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

Vec3d add3(const Vec3d& a, const Vec3d& b, const Vec3d& c) {
  return {a[0] + b[0] + c[0], a[1] + b[1] + c[1], a[2] + b[2] + c[2]};
}

// Gamma^c_ab v^a w^b
Vec3d christoffel_contract(const Tensor3d& G, const Vec3d& v, const Vec3d& w) {
  Vec3d out{};
  for (int c = 0; c < 3; ++c) {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) acc += G[c][a][b] * v[a] * w[b];
    out[c] = acc;
  }
  return out;
}

// (d_v g)(a, b)
double dg_contract(const Tensor3d& dg, const Vec3d& v, const Vec3d& a,
                   const Vec3d& b) {
  double acc = 0.0;
  for (int c = 0; c < 3; ++c) {
    if (v[c] == 0.0) continue;
    acc += v[c] * bilinear(dg[c], a, b);
  }
  return acc;
}

void put_double(std::ostream& os, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general,
                           17);
  os.write(buf, res.ptr - buf);
}

bool parse_double(const std::string& tok, double* v) {
  const char* first = tok.data();
  const char* last = first + tok.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, *v);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

std::shared_ptr<const SphereGrid> shared_grid(int ntheta, int nphi) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::weak_ptr<const SphereGrid>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{ntheta, nphi}];
  if (auto sp = slot.lock()) return sp;
  auto sp = std::make_shared<const SphereGrid>(ntheta, nphi);
  slot = sp;
  return sp;
}

SurfaceMesh::SurfaceMesh(std::shared_ptr<const SphereGrid> grid, Vec3d center,
                         Field r)
    : grid_(std::move(grid)), center_(center), r_(std::move(r)) {
  if (!grid_) fail(ErrorKind::kConfig, "mesh without grid");
  if (r_.size() != grid_->size())
    fail(ErrorKind::kGeometry, "radius field does not match the grid");
  for (double c : center_)
    if (!std::isfinite(c)) fail(ErrorKind::kGeometry, "center not finite");
  for (int i = 0; i < grid_->ntheta(); ++i)
    for (int j = 0; j < grid_->nphi(); ++j) {
      const double v = r_[grid_->index(i, j)];
      if (!std::isfinite(v) || v <= 0.0)
        fail(ErrorKind::kGeometry,
             "radius must be positive and finite at " + node_name(i, j));
    }
}

SurfaceMesh SurfaceMesh::sphere(int ntheta, int nphi, double radius,
                                Vec3d center) {
  auto grid = shared_grid(ntheta, nphi);
  return SurfaceMesh(grid, center, Field(grid->size(), radius));
}

SurfaceMesh SurfaceMesh::ellipsoid(int ntheta, int nphi, const Vec3d& axes,
                                   Vec3d center) {
  for (double a : axes)
    if (!(a > 0.0)) fail(ErrorKind::kConfig, "ellipsoid axes must be > 0");
  auto grid = shared_grid(ntheta, nphi);
  Field r(grid->size());
  for (int i = 0; i < ntheta; ++i)
    for (int j = 0; j < nphi; ++j) {
      const double s = grid->sin_theta(i), c = grid->cos_theta(i);
      const Vec3d u{s * std::cos(grid->phi(j)), s * std::sin(grid->phi(j)), c};
      double q = 0.0;
      for (int k = 0; k < 3; ++k) q += u[k] * u[k] / (axes[k] * axes[k]);
      r[grid->index(i, j)] = 1.0 / std::sqrt(q);
    }
  return SurfaceMesh(grid, center, std::move(r));
}

SurfaceMesh SurfaceMesh::perturbed_sphere(int ntheta, int nphi, double r0,
                                          const std::vector<Harmonic>& modes,
                                          Vec3d center) {
  if (!(r0 > 0.0)) fail(ErrorKind::kConfig, "sphere radius must be > 0");
  auto grid = shared_grid(ntheta, nphi);
  Field r(grid->size());
  for (int i = 0; i < ntheta; ++i)
    for (int j = 0; j < nphi; ++j) {
      double v = 1.0;
      for (const auto& h : modes)
        v += h.amplitude * SphereGrid::ylm(h.l, h.m, grid->theta(i), grid->phi(j));
      r[grid->index(i, j)] = r0 * v;
    }
  return SurfaceMesh(grid, center, std::move(r));
}

Vec3d SurfaceMesh::direction(int i, int j) const {
  const double s = grid_->sin_theta(i);
  return {s * std::cos(grid_->phi(j)), s * std::sin(grid_->phi(j)),
          grid_->cos_theta(i)};
}

Vec3d SurfaceMesh::point(int i, int j) const {
  return center_ + r_[grid_->index(i, j)] * direction(i, j);
}

SurfaceMesh SurfaceMesh::with_radius(Field r) const {
  return SurfaceMesh(grid_, center_, std::move(r));
}

SurfaceMesh SurfaceMesh::resampled(int ntheta, int nphi) const {
  if (ntheta == grid_->ntheta() && nphi == grid_->nphi()) return *this;
  auto target = shared_grid(ntheta, nphi);
  const int lmax = std::min(grid_->max_degree(), target->max_degree());
  const auto c = grid_->sh_analysis(r_, lmax);
  return SurfaceMesh(target, center_, target->sh_synthesis(c, lmax));
}

void SurfaceMesh::write(std::ostream& os) const {
  os << grid_->ntheta() << ' ' << grid_->nphi();
  for (double c : center_) {
    os << ' ';
    put_double(os, c);
  }
  os << '\n';
  for (int i = 0; i < grid_->ntheta(); ++i) {
    for (int j = 0; j < grid_->nphi(); ++j) {
      if (j) os << ' ';
      put_double(os, r_[grid_->index(i, j)]);
    }
    os << '\n';
  }
}

SurfaceMesh SurfaceMesh::read(std::istream& is) {
  std::string tok;
  auto next_double = [&](const char* what) {
    if (!(is >> tok)) fail(ErrorKind::kIo, std::string("mesh: missing ") + what);
    double v = 0.0;
    if (!parse_double(tok, &v))
      fail(ErrorKind::kIo,
           std::string("mesh: bad number '") + tok + "' for " + what);
    return v;
  };
  const double nt = next_double("ntheta");
  const double np = next_double("nphi");
  if (nt != std::floor(nt) || np != std::floor(np) || nt < 1 || np < 1 ||
      nt > 1e5 || np > 1e5)
    fail(ErrorKind::kIo, "mesh: grid sizes must be positive integers");
  Vec3d center{};
  center[0] = next_double("center_x");
  center[1] = next_double("center_y");
  center[2] = next_double("center_z");
  auto grid = shared_grid(static_cast<int>(nt), static_cast<int>(np));
  Field r(grid->size());
  for (std::size_t n = 0; n < r.size(); ++n) {
    const std::string what = "radius value " + std::to_string(n);
    r[n] = next_double(what.c_str());
  }
  if (is >> tok) fail(ErrorKind::kIo, "mesh: trailing data '" + tok + "'");
  return SurfaceMesh(grid, center, std::move(r));
}

void SurfaceMesh::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorKind::kIo, "cannot write mesh file " + path);
  write(os);
  if (!os) fail(ErrorKind::kIo, "failed writing mesh file " + path);
}

SurfaceMesh SurfaceMesh::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorKind::kIo, "cannot open mesh file " + path);
  return read(is);
}

SurfaceGeometry induced_geometry(const AmbientSpace& space,
                                 const SurfaceMesh& mesh) {
  const SphereGrid& grid = mesh.grid();
  const std::size_t n = grid.size();
  const FieldDerivatives rd = grid.derivatives(mesh.radius(), +1);

  SurfaceGeometry geo;
  geo.grid = mesh.grid_ptr();
  geo.has_k = space.has_k();
  geo.X.resize(n);
  geo.Xt.resize(n);
  geo.Xp.resize(n);
  geo.nu.resize(n);
  geo.nu_flat.resize(n);
  geo.metric.resize(n);
  geo.k.resize(n);
  for (Field* f :
       {&geo.nu_radial, &geo.E, &geo.F, &geo.G, &geo.Btt, &geo.Btp, &geo.Bpp,
        &geo.H, &geo.B2, &geo.Bo2, &geo.P, &geo.K, &geo.density,
        &geo.theta_plus, &geo.theta_minus, &geo.ric_nn, &geo.scalar_m,
        &geo.tr_k, &geo.k_norm2, &geo.k_nn, &geo.dnu_tr_k, &geo.dnu_k_nn,
        &geo.mu, &geo.J_norm, &geo.dec_margin, &geo.k_nu_t, &geo.k_nu_p})
    f->assign(n, 0.0);
  Field A1(n), A2(n), sqrtD(n);

  const int np = grid.nphi();
  parallel_for(n, [&](std::size_t idx) {
    const int i = static_cast<int>(idx / np);
    const int j = static_cast<int>(idx % np);
    const double st = grid.sin_theta(i), ct = grid.cos_theta(i);
    const double sp = std::sin(grid.phi(j)), cp = std::cos(grid.phi(j));
    const Vec3d u{st * cp, st * sp, ct};
    const Vec3d ut{ct * cp, ct * sp, -st};
    const Vec3d up{-st * sp, st * cp, 0.0};
    const Vec3d utp{-ct * sp, ct * cp, 0.0};
    const Vec3d upp{-st * cp, -st * sp, 0.0};
    const double r = rd.f[idx], rt = rd.t[idx], rp = rd.p[idx];

    const Vec3d X = mesh.center() + r * u;
    const Vec3d Xt = rt * u + r * ut;
    const Vec3d Xp = rp * u + r * up;
    const Vec3d Xtt = add3(rd.tt[idx] * u, (2.0 * rt) * ut, (-r) * u);
    const Vec3d Xtp = add3(rd.tp[idx] * u, rt * up, rp * ut) + r * utp;
    const Vec3d Xpp = add3(rd.pp[idx] * u, (2.0 * rp) * up, r * upp);

    const PointData pd = point_data(space, X);
    const Mat3d& g = pd.curv.g;
    const Mat3d& gi = pd.curv.g_inv;
    const Tensor3d& Gam = pd.curv.christoffel;

    const Vec3d nc = cross(Xt, Xp);
    const double nn = bilinear(gi, nc, nc);
    if (!(nn > 0.0) || !std::isfinite(nn))
      fail(ErrorKind::kGeometry, "degenerate normal at " + node_name(i, j));
    const Vec3d nuf = (1.0 / std::sqrt(nn)) * nc;
    const Vec3d nu = mul(gi, nuf);

    const double E = bilinear(g, Xt, Xt);
    const double F = bilinear(g, Xt, Xp);
    const double G = bilinear(g, Xp, Xp);
    const double D = E * G - F * F;
    if (!(D > 0.0) || !std::isfinite(D))
      fail(ErrorKind::kGeometry,
           "degenerate induced metric (det <= 0) at " + node_name(i, j));
    const double rootD = std::sqrt(D);

    const double Btt = -dot(nuf, Xtt + christoffel_contract(Gam, Xt, Xt));
    const double Btp = -dot(nuf, Xtp + christoffel_contract(Gam, Xt, Xp));
    const double Bpp = -dot(nuf, Xpp + christoffel_contract(Gam, Xp, Xp));
    const double itt = G / D, itp = -F / D, ipp = E / D;
    const double H = itt * Btt + 2.0 * itp * Btp + ipp * Bpp;
    // M = h^{-1} B
    const double m00 = itt * Btt + itp * Btp, m01 = itt * Btp + itp * Bpp;
    const double m10 = itp * Btt + ipp * Btp, m11 = itp * Btp + ipp * Bpp;
    const double B2 = m00 * m00 + 2.0 * m01 * m10 + m11 * m11;
    const double o00 = m00 - 0.5 * H, o11 = m11 - 0.5 * H;
    const double Bo2 = std::max(0.0, o00 * o00 + 2.0 * m01 * m10 + o11 * o11);

    const double k_nn = bilinear(pd.k, nu, nu);
    const double P = pd.tr_k - k_nn;
    double dknn = 0.0;
    for (int a = 0; a < 3; ++a) dknn += nu[a] * bilinear(pd.nabla_k[a], nu, nu);

    const double Et = dg_contract(pd.dg, Xt, Xt, Xt) + 2.0 * bilinear(g, Xtt, Xt);
    const double Ep = dg_contract(pd.dg, Xp, Xt, Xt) + 2.0 * bilinear(g, Xtp, Xt);
    const double Ft = dg_contract(pd.dg, Xt, Xt, Xp) + bilinear(g, Xtt, Xp) +
                      bilinear(g, Xt, Xtp);
    const double Gt = dg_contract(pd.dg, Xt, Xp, Xp) + 2.0 * bilinear(g, Xtp, Xp);

    geo.X[idx] = X;
    geo.Xt[idx] = Xt;
    geo.Xp[idx] = Xp;
    geo.nu[idx] = nu;
    geo.nu_flat[idx] = nuf;
    geo.metric[idx] = g;
    geo.k[idx] = pd.k;
    geo.nu_radial[idx] = dot(nuf, u);
    geo.E[idx] = E;
    geo.F[idx] = F;
    geo.G[idx] = G;
    geo.Btt[idx] = Btt;
    geo.Btp[idx] = Btp;
    geo.Bpp[idx] = Bpp;
    geo.H[idx] = H;
    geo.B2[idx] = B2;
    geo.Bo2[idx] = Bo2;
    geo.P[idx] = P;
    geo.density[idx] = rootD / st;
    sqrtD[idx] = rootD;
    geo.ric_nn[idx] = bilinear(pd.curv.ricci, nu, nu);
    geo.scalar_m[idx] = pd.curv.scalar;
    geo.tr_k[idx] = pd.tr_k;
    geo.k_norm2[idx] = pd.k_norm2;
    geo.k_nn[idx] = k_nn;
    geo.dnu_tr_k[idx] = dot(nu, pd.d_tr_k);
    geo.dnu_k_nn[idx] = dknn;
    geo.mu[idx] = pd.constraints.mu;
    geo.J_norm[idx] = pd.constraints.J_norm;
    geo.dec_margin[idx] = pd.constraints.dec_margin;
    geo.k_nu_t[idx] = bilinear(pd.k, nu, Xt);
    geo.k_nu_p[idx] = bilinear(pd.k, nu, Xp);
    A1[idx] = (2.0 * E * Ft - E * Ep - F * Et) / (2.0 * E * rootD);
    A2[idx] = (E * Gt - F * Ep) / (2.0 * E * rootD);
  });

  // Gauss curvature from the intrinsic metric alone
  const Field dA1 = grid.d_phi(A1);
  const Field dA2 = grid.d_theta(A2, +1);
  for (std::size_t idx = 0; idx < n; ++idx) {
    geo.K[idx] = (dA1[idx] - dA2[idx]) / sqrtD[idx];
    const double P = geo.P[idx], H = geo.H[idx];
    geo.theta_plus[idx] = (P + H) / std::sqrt(2.0);
    geo.theta_minus[idx] = (P - H) / std::sqrt(2.0);
    const double lhs = geo.theta_plus[idx] * geo.theta_minus[idx];
    const double rhs = 0.5 * (P * P - H * H);
    if (!std::isfinite(geo.K[idx]) || !std::isfinite(H) ||
        std::fabs(lhs - rhs) > 1e-12 * (P * P + H * H + 1.0))
      fail(ErrorKind::kNumeric,
           "non-finite surface geometry at " +
               node_name(static_cast<int>(idx / np), static_cast<int>(idx % np)));
  }
  geo.area = grid.quadrature(geo.density);
  return geo;
}

double integrate(const SurfaceGeometry& geom, const Field& f) {
  if (f.size() != geom.size())
    fail(ErrorKind::kNumeric, "field does not match the surface grid");
  Field w(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i]))
      fail(ErrorKind::kNumeric, "non-finite integrand at node index " +
                                    std::to_string(i));
    w[i] = f[i] * geom.density[i];
  }
  return geom.g().quadrature(w);
}

SurfaceGradient surface_gradient(const SurfaceGeometry& geom, const Field& f) {
  SurfaceGradient out;
  out.t = geom.g().d_theta(f, +1);
  out.p = geom.g().d_phi(f);
  out.grad.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double D = geom.E[i] * geom.G[i] - geom.F[i] * geom.F[i];
    const double wt = (geom.G[i] * out.t[i] - geom.F[i] * out.p[i]) / D;
    const double wp = (-geom.F[i] * out.t[i] + geom.E[i] * out.p[i]) / D;
    out.grad[i] = wt * geom.Xt[i] + wp * geom.Xp[i];
  }
  return out;
}

Field covector_divergence(const SurfaceGeometry& geom, const Field& ct,
                          const Field& cp) {
  const SphereGrid& grid = geom.g();
  const std::size_t n = geom.size();
  const int np = grid.nphi();
  Field U(n), V(n), rootD(n);
  for (std::size_t i = 0; i < n; ++i) {
    rootD[i] = geom.density[i] * grid.sin_theta(static_cast<int>(i / np));
    U[i] = (geom.G[i] * ct[i] - geom.F[i] * cp[i]) / rootD[i];
    V[i] = (-geom.F[i] * ct[i] + geom.E[i] * cp[i]) / rootD[i];
  }
  const Field dU = grid.d_theta(U, +1);
  const Field dV = grid.d_phi(V);
  Field out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = (dU[i] + dV[i]) / rootD[i];
  return out;
}

Field laplacian(const SurfaceGeometry& geom, const Field& f) {
  return covector_divergence(geom, geom.g().d_theta(f, +1), geom.g().d_phi(f));
}

Field tangential_divergence(const SurfaceGeometry& geom,
                            const std::vector<Vec3d>& V) {
  if (V.size() != geom.size())
    fail(ErrorKind::kNumeric, "vector field does not match the surface grid");
  Field ct(V.size()), cp(V.size());
  for (std::size_t i = 0; i < V.size(); ++i) {
    ct[i] = bilinear(geom.metric[i], V[i], geom.Xt[i]);
    cp[i] = bilinear(geom.metric[i], V[i], geom.Xp[i]);
  }
  return covector_divergence(geom, ct, cp);
}

Field gauss_equation_residual(const SurfaceGeometry& geom) {
  Field out(geom.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = 2.0 * geom.K[i] - (geom.scalar_m[i] - 2.0 * geom.ric_nn[i] +
                                0.5 * geom.H[i] * geom.H[i] - geom.Bo2[i]);
  return out;
}

}  // namespace qll
