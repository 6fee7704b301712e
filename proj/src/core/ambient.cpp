#include "ambient.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace qll {
namespace {

std::string point_string(const Vec3d& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p[0] << ", " << p[1] << ", " << p[2] << ")";
  return os.str();
}

double coordinate_scale(const Vec3d& p) { return std::max(1.0, norm(p)); }

Vec3<Jet> seed(const Vec3d& p) {
  return {jet_variable(p[0], 0), jet_variable(p[1], 1), jet_variable(p[2], 2)};
}

Vec3d shifted(const Vec3d& p, int a, double h) {
  Vec3d q = p;
  q[a] += h;
  return q;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kGeometry: return "geometry";
    case ErrorKind::kNumeric: return "numeric";
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kHypothesis: return "hypothesis";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kFlow: return "flow";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

AmbientSpace AmbientSpace::with_derivative_mode(DerivativeMode mode,
                                                double step) const {
  if (step < 0.0 || !std::isfinite(step))
    fail(ErrorKind::kConfig, "finite-difference step must be >= 0");
  AmbientSpace s = *this;
  s.mode_ = mode;
  s.fd_step_ = step;
  return s;
}

AmbientSpace AmbientSpace::with_point_charge(double q) const {
  if (!std::isfinite(q)) fail(ErrorKind::kConfig, "charge must be finite");
  AmbientSpace s = *this;
  s.charge_ = q;
  return s;
}

Vec3d AmbientSpace::electric_field(const Vec3d& p) const {
  if (!charge_) fail(ErrorKind::kConfig, "space carries no electric field");
  require_domain(p);
  const double r = norm(p);
  if (r == 0.0) fail(ErrorKind::kDomain, "electric field singular at origin");
  const Vec3d n = (1.0 / r) * p;
  const double len = std::sqrt(bilinear(metric(p), n, n));
  return (*charge_ / (r * r * len)) * n;
}

void AmbientSpace::require_domain(const Vec3d& p) const {
  if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || !std::isfinite(p[2]) ||
      !model_->in_domain(p))
    fail(ErrorKind::kDomain,
         "point " + point_string(p) + " outside chart domain of '" +
             info_.name + "'");
}

Mat3d AmbientSpace::metric(const Vec3d& p) const {
  require_domain(p);
  Mat3d g = model_->metric(p);
  if (!is_positive_definite(g))
    fail(ErrorKind::kGeometry,
         "metric not positive definite at " + point_string(p));
  return g;
}

Mat3d AmbientSpace::k(const Vec3d& p) const {
  require_domain(p);
  return model_->k(p);
}

MetricDerivatives AmbientSpace::metric_derivatives(const Vec3d& p) const {
  MetricDerivatives md;
  md.g = metric(p);
  if (mode_ == DerivativeMode::kAnalytic) {
    const Mat3<Jet> gj = model_->metric(seed(p));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          md.dg[c][a][b] = gj[a][b].d[c];
          for (int d = 0; d < 3; ++d) md.ddg[c][d][a][b] = gj[a][b].h[c][d];
        }
    return md;
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = coordinate_scale(p);
  const double h1 = fd_step_ > 0.0 ? fd_step_ : std::cbrt(eps) * scale;
  const double h2 = fd_step_ > 0.0 ? fd_step_ : std::pow(eps, 0.25) * scale;
  for (int c = 0; c < 3; ++c) {
    const Mat3d gp = model_->metric(shifted(p, c, h1));
    const Mat3d gm = model_->metric(shifted(p, c, -h1));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        md.dg[c][a][b] = (gp[a][b] - gm[a][b]) / (2.0 * h1);
  }
  // nested central differences
  for (int c = 0; c < 3; ++c)
    for (int d = c; d < 3; ++d) {
      const Mat3d gpp = model_->metric(shifted(shifted(p, c, h2), d, h2));
      const Mat3d gpm = model_->metric(shifted(shifted(p, c, h2), d, -h2));
      const Mat3d gmp = model_->metric(shifted(shifted(p, c, -h2), d, h2));
      const Mat3d gmm = model_->metric(shifted(shifted(p, c, -h2), d, -h2));
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          const double v =
              (gpp[a][b] - gpm[a][b] - gmp[a][b] + gmm[a][b]) / (4.0 * h2 * h2);
          md.ddg[c][d][a][b] = v;
          md.ddg[d][c][a][b] = v;
        }
    }
  return md;
}

KDerivatives AmbientSpace::k_derivatives(const Vec3d& p) const {
  KDerivatives kd;
  require_domain(p);
  if (!model_->has_k()) return kd;
  if (mode_ == DerivativeMode::kAnalytic) {
    const Mat3<Jet> kj = model_->k(seed(p));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        kd.k[a][b] = kj[a][b].v;
        for (int c = 0; c < 3; ++c) kd.dk[c][a][b] = kj[a][b].d[c];
      }
    return kd;
  }
  kd.k = model_->k(p);
  const double eps = std::numeric_limits<double>::epsilon();
  const double h =
      fd_step_ > 0.0 ? fd_step_ : std::cbrt(eps) * coordinate_scale(p);
  for (int c = 0; c < 3; ++c) {
    const Mat3d kp = model_->k(shifted(p, c, h));
    const Mat3d km = model_->k(shifted(p, c, -h));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) kd.dk[c][a][b] = (kp[a][b] - km[a][b]) / (2.0 * h);
  }
  return kd;
}

Curvature curvature_from(const MetricDerivatives& md) {
  Curvature cv;
  cv.g = md.g;
  cv.g_inv = inverse(md.g);
  // first kind: Gamma_{d,ab} = 1/2 (d_a g_db + d_b g_da - d_d g_ab)
  Tensor3d first{};
  for (int d = 0; d < 3; ++d)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        first[d][a][b] =
            0.5 * (md.dg[a][d][b] + md.dg[b][d][a] - md.dg[d][a][b]);
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        double acc = 0.0;
        for (int d = 0; d < 3; ++d) acc += cv.g_inv[c][d] * first[d][a][b];
        cv.christoffel[c][a][b] = acc;
      }
  const auto& G = cv.christoffel;
  const auto& dd = md.ddg;  // dd[x][y][a][b] = d_x d_y g_ab
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          double r = 0.5 * (dd[b][c][a][d] + dd[a][d][b][c] - dd[a][c][b][d] -
                            dd[b][d][a][c]);
          for (int e = 0; e < 3; ++e)
            for (int f = 0; f < 3; ++f)
              r += md.g[e][f] *
                   (G[e][b][c] * G[f][a][d] - G[e][b][d] * G[f][a][c]);
          cv.riemann[a][b][c][d] = r;
        }
  for (int b = 0; b < 3; ++b)
    for (int d = 0; d < 3; ++d) {
      double acc = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) acc += cv.g_inv[a][c] * cv.riemann[a][b][c][d];
      cv.ricci[b][d] = acc;
    }
  cv.scalar = trace(cv.g_inv, cv.ricci);
  return cv;
}

Curvature curvature_at(const AmbientSpace& space, const Vec3d& p) {
  return curvature_from(space.metric_derivatives(p));
}

namespace {

Tensor3d covariant_k(const Curvature& cv, const KDerivatives& kd) {
  Tensor3d nk{};
  const auto& G = cv.christoffel;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        double v = kd.dk[a][b][c];
        for (int d = 0; d < 3; ++d)
          v -= G[d][a][b] * kd.k[d][c] + G[d][a][c] * kd.k[b][d];
        nk[a][b][c] = v;
      }
  return nk;
}

}  // namespace

Tensor3d nabla_k_at(const AmbientSpace& space, const Vec3d& p) {
  const Curvature cv = curvature_at(space, p);
  return covariant_k(cv, space.k_derivatives(p));
}

PointData point_data(const AmbientSpace& space, const Vec3d& p) {
  PointData pd;
  const MetricDerivatives md = space.metric_derivatives(p);
  pd.curv = curvature_from(md);
  pd.dg = md.dg;
  const KDerivatives kd = space.k_derivatives(p);
  pd.k = kd.k;
  pd.nabla_k = covariant_k(pd.curv, kd);
  const Mat3d& gi = pd.curv.g_inv;
  pd.tr_k = trace(gi, pd.k);
  for (int a = 0; a < 3; ++a) pd.d_tr_k[a] = trace(gi, pd.nabla_k[a]);
  pd.k_norm2 = contract2(gi, pd.k, pd.k);

  ConstraintData& cd = pd.constraints;
  cd.mu = 0.5 * (pd.curv.scalar + pd.tr_k * pd.tr_k - pd.k_norm2);
  // J_b = g^{ac} (nabla_c k)_ab - d_b tr k
  for (int b = 0; b < 3; ++b) {
    double acc = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int c = 0; c < 3; ++c) acc += gi[a][c] * pd.nabla_k[c][a][b];
    cd.J[b] = acc - pd.d_tr_k[b];
  }
  cd.J_norm = std::sqrt(std::max(0.0, bilinear(gi, cd.J, cd.J)));
  cd.dec_margin = cd.mu - cd.J_norm;
  return pd;
}

ConstraintData constraint_data_at(const AmbientSpace& space, const Vec3d& p) {
  return point_data(space, p).constraints;
}

}  // namespace qll
