#include "spectral.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"

namespace qll {
namespace {

constexpr double kPi = std::numbers::pi;

// Normalized associated Legendre values Pbar[l * (lmax + 1) + m] at x, so that
// Y_l0 = Pbar_l0 and Y_lm = sqrt(2) Pbar_lm cos/sin(m phi) are orthonormal.
std::vector<double> normalized_legendre(int lmax, double x) {
  const int w = lmax + 1;
  std::vector<double> p(static_cast<std::size_t>(w) * w, 0.0);
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  double pmm = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) pmm *= s * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    p[m * w + m] = pmm;
    if (m + 1 <= lmax) p[(m + 1) * w + m] = x * std::sqrt(2.0 * m + 3.0) * pmm;
    for (int l = m + 2; l <= lmax; ++l) {
      const double l2 = double(l) * l, m2 = double(m) * m;
      const double a = std::sqrt((4.0 * l2 - 1.0) / (l2 - m2));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - m2) /
                                 (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      p[l * w + m] = a * (x * p[(l - 1) * w + m] - b * p[(l - 2) * w + m]);
    }
  }
  return p;
}

void gauss_legendre(int n, std::vector<double>* x, std::vector<double>* w) {
  x->resize(n);
  w->resize(n);
  for (int k = 0; k < n; ++k) {
    double z = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-16) break;
    }
    (*x)[k] = z;
    (*w)[k] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace

SphereGrid::SphereGrid(int ntheta, int nphi) : nt_(ntheta), np_(nphi) {
  if (ntheta < 4 || nphi < 8 || nphi % 2 != 0)
    fail(ErrorKind::kConfig,
         "grid must have ntheta >= 4 and even nphi >= 8");
  nm_ = np_ / 2 + 1;
  std::vector<double> wgl;
  gauss_legendre(nt_, &x_, &wgl);
  theta_.resize(nt_);
  s_.resize(nt_);
  wq_.resize(nt_);
  for (int i = 0; i < nt_; ++i) {
    theta_[i] = std::acos(x_[i]);
    s_[i] = std::sqrt((1.0 - x_[i]) * (1.0 + x_[i]));
    wq_[i] = wgl[i] * 2.0 * kPi / np_;
  }
  phi_.resize(np_);
  for (int j = 0; j < np_; ++j) phi_[j] = 2.0 * kPi * j / np_;

  std::vector<double> bw(nt_);
  for (int i = 0; i < nt_; ++i)
    bw[i] = (i % 2 ? -1.0 : 1.0) * std::sqrt((1.0 - x_[i] * x_[i]) * wgl[i]);
  D_.assign(static_cast<std::size_t>(nt_) * nt_, 0.0);
  for (int i = 0; i < nt_; ++i) {
    double diag = 0.0;
    for (int j = 0; j < nt_; ++j) {
      if (i == j) continue;
      const double v = (bw[j] / bw[i]) / (x_[i] - x_[j]);
      D_[i * nt_ + j] = v;
      diag -= v;
    }
    D_[i * nt_ + i] = diag;
  }
  D2_.assign(D_.size(), 0.0);
  for (int i = 0; i < nt_; ++i) {
    double diag = 0.0;
    for (int j = 0; j < nt_; ++j) {
      if (i == j) continue;
      const double v =
          2.0 * D_[i * nt_ + j] * (D_[i * nt_ + i] - 1.0 / (x_[i] - x_[j]));
      D2_[i * nt_ + j] = v;
      diag -= v;
    }
    D2_[i * nt_ + i] = diag;
  }

  cos_.resize(static_cast<std::size_t>(nm_) * np_);
  sin_.resize(cos_.size());
  for (int m = 0; m < nm_; ++m)
    for (int j = 0; j < np_; ++j) {
      // exact index reduction keeps the tables symmetric
      const int k = (m * j) % np_;
      cos_[m * np_ + j] = std::cos(2.0 * kPi * k / np_);
      sin_[m * np_ + j] = std::sin(2.0 * kPi * k / np_);
    }
}

SphereGrid::Modes SphereGrid::forward(const Field& f) const {
  if (f.size() != size()) fail(ErrorKind::kNumeric, "field size mismatch");
  Modes md;
  md.a.assign(nm_, std::vector<double>(nt_, 0.0));
  md.b.assign(nm_, std::vector<double>(nt_, 0.0));
  const int nyq = np_ / 2;
  for (int i = 0; i < nt_; ++i) {
    const double* row = &f[index(i, 0)];
    double mean = 0.0;
    for (int j = 0; j < np_; ++j) mean += row[j];
    mean /= np_;
    md.a[0][i] = mean;
    for (int m = 1; m < nm_; ++m) {
      const double* c = &cos_[m * np_];
      const double* s = &sin_[m * np_];
      double sa = 0.0, sb = 0.0;
      for (int j = 0; j < np_; ++j) {
        sa += (row[j] - mean) * c[j];
        sb += (row[j] - mean) * s[j];
      }
      const double scale = m == nyq ? 1.0 / np_ : 2.0 / np_;
      md.a[m][i] = sa * scale;
      md.b[m][i] = (m == nyq) ? 0.0 : sb * scale;
    }
  }
  return md;
}

Field SphereGrid::inverse(const Modes& md) const {
  Field f(size(), 0.0);
  for (int i = 0; i < nt_; ++i) {
    double* row = &f[index(i, 0)];
    for (int m = 0; m < nm_; ++m) {
      const double a = md.a[m][i], b = md.b[m][i];
      if (a == 0.0 && b == 0.0) continue;
      const double* c = &cos_[m * np_];
      const double* s = &sin_[m * np_];
      for (int j = 0; j < np_; ++j) row[j] += a * c[j] + b * s[j];
    }
  }
  return f;
}

void SphereGrid::theta_derivs(const std::vector<double>& v, bool even,
                              std::vector<double>* d1,
                              std::vector<double>* d2) const {
  std::vector<double> q(nt_), q1(nt_, 0.0), q2(nt_, 0.0);
  for (int i = 0; i < nt_; ++i) q[i] = even ? v[i] : v[i] / s_[i];
  for (int i = 0; i < nt_; ++i) {
    // rows sum to zero, so differences keep constants exact
    double a1 = 0.0, a2 = 0.0;
    for (int j = 0; j < nt_; ++j) {
      if (j == i) continue;
      const double dq = q[j] - q[i];
      a1 += D_[i * nt_ + j] * dq;
      if (d2) a2 += D2_[i * nt_ + j] * dq;
    }
    q1[i] = a1;
    q2[i] = a2;
  }
  d1->resize(nt_);
  if (d2) d2->resize(nt_);
  for (int i = 0; i < nt_; ++i) {
    const double s = s_[i], c = x_[i];
    if (even) {
      (*d1)[i] = -s * q1[i];
      if (d2) (*d2)[i] = -c * q1[i] + s * s * q2[i];
    } else {
      (*d1)[i] = c * q[i] - s * s * q1[i];
      if (d2) (*d2)[i] = -s * q[i] - 3.0 * s * c * q1[i] + s * s * s * q2[i];
    }
  }
}

FieldDerivatives SphereGrid::derivatives(const Field& f, int parity) const {
  const Modes md = forward(f);
  Modes t = md, tt = md, p = md, tp = md, pp = md;
  const int nyq = np_ / 2;
  for (int m = 0; m < nm_; ++m) {
    const bool even = parity * ((m % 2) ? -1 : 1) > 0;
    theta_derivs(md.a[m], even, &t.a[m], &tt.a[m]);
    theta_derivs(md.b[m], even, &t.b[m], &tt.b[m]);
    const double dm = m;
    for (int i = 0; i < nt_; ++i) {
      if (m == nyq) {
        p.a[m][i] = p.b[m][i] = 0.0;
        tp.a[m][i] = tp.b[m][i] = 0.0;
      } else {
        p.a[m][i] = dm * md.b[m][i];
        p.b[m][i] = -dm * md.a[m][i];
        tp.a[m][i] = dm * t.b[m][i];
        tp.b[m][i] = -dm * t.a[m][i];
      }
      pp.a[m][i] = -dm * dm * md.a[m][i];
      pp.b[m][i] = -dm * dm * md.b[m][i];
    }
  }
  FieldDerivatives out;
  out.f = f;
  out.t = inverse(t);
  out.p = inverse(p);
  out.tt = inverse(tt);
  out.tp = inverse(tp);
  out.pp = inverse(pp);
  return out;
}

Field SphereGrid::d_theta(const Field& f, int parity) const {
  Modes md = forward(f);
  for (int m = 0; m < nm_; ++m) {
    const bool even = parity * ((m % 2) ? -1 : 1) > 0;
    std::vector<double> da, db;
    theta_derivs(md.a[m], even, &da, nullptr);
    theta_derivs(md.b[m], even, &db, nullptr);
    md.a[m] = std::move(da);
    md.b[m] = std::move(db);
  }
  return inverse(md);
}

Field SphereGrid::d_phi(const Field& f) const {
  const Modes md = forward(f);
  Modes p = md;
  const int nyq = np_ / 2;
  for (int m = 0; m < nm_; ++m)
    for (int i = 0; i < nt_; ++i) {
      p.a[m][i] = m == nyq ? 0.0 : m * md.b[m][i];
      p.b[m][i] = m == nyq ? 0.0 : -m * md.a[m][i];
    }
  return inverse(p);
}

double SphereGrid::quadrature(const Field& f) const {
  if (f.size() != size()) fail(ErrorKind::kNumeric, "field size mismatch");
  // Neumaier summation
  double sum = 0.0, comp = 0.0;
  for (int i = 0; i < nt_; ++i)
    for (int j = 0; j < np_; ++j) {
      const double v = f[index(i, j)] * wq_[i];
      const double t = sum + v;
      if (std::fabs(sum) >= std::fabs(v))
        comp += (sum - t) + v;
      else
        comp += (v - t) + sum;
      sum = t;
    }
  return sum + comp;
}

double SphereGrid::ylm(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  if (l < 0 || am > l) fail(ErrorKind::kConfig, "invalid spherical harmonic");
  const std::vector<double> p = normalized_legendre(l, std::cos(theta));
  const double v = p[l * (l + 1) + am];
  if (m == 0) return v;
  return std::sqrt(2.0) * v * (m > 0 ? std::cos(am * phi) : std::sin(am * phi));
}

int SphereGrid::max_degree() const { return std::min(nt_ - 1, np_ / 2 - 1); }

void SphereGrid::legendre_table(int lmax,
                                std::vector<std::vector<double>>* table) const {
  table->resize(nt_);
  for (int i = 0; i < nt_; ++i) (*table)[i] = normalized_legendre(lmax, x_[i]);
}

std::vector<double> SphereGrid::sh_analysis(const Field& f, int lmax) const {
  if (lmax < 0 || lmax > max_degree())
    fail(ErrorKind::kConfig, "harmonic degree exceeds grid resolution");
  const Modes md = forward(f);
  std::vector<std::vector<double>> P;
  legendre_table(lmax, &P);
  const int w = lmax + 1;
  std::vector<double> c(static_cast<std::size_t>(w) * w, 0.0);
  const double r2 = std::sqrt(2.0);
  for (int l = 0; l <= lmax; ++l)
    for (int m = 0; m <= l; ++m) {
      double sa = 0.0, sb = 0.0;
      for (int i = 0; i < nt_; ++i) {
        const double wl = wq_[i] * np_ / (2.0 * kPi) * P[i][l * w + m];
        sa += wl * md.a[m][i];
        sb += wl * md.b[m][i];
      }
      if (m == 0) {
        c[l * l + l] = 2.0 * kPi * sa;
      } else {
        c[l * l + l + m] = r2 * kPi * sa;
        c[l * l + l - m] = r2 * kPi * sb;
      }
    }
  return c;
}

Field SphereGrid::sh_synthesis(const std::vector<double>& c, int lmax) const {
  if (lmax < 0 || lmax > max_degree())
    fail(ErrorKind::kConfig, "harmonic degree exceeds grid resolution");
  const int w = lmax + 1;
  if (c.size() != static_cast<std::size_t>(w) * w)
    fail(ErrorKind::kNumeric, "coefficient count mismatch");
  std::vector<std::vector<double>> P;
  legendre_table(lmax, &P);
  Modes md;
  md.a.assign(nm_, std::vector<double>(nt_, 0.0));
  md.b.assign(nm_, std::vector<double>(nt_, 0.0));
  const double r2 = std::sqrt(2.0);
  for (int l = 0; l <= lmax; ++l)
    for (int m = 0; m <= l; ++m)
      for (int i = 0; i < nt_; ++i) {
        const double p = P[i][l * w + m];
        if (m == 0) {
          md.a[0][i] += c[l * l + l] * p;
        } else {
          md.a[m][i] += r2 * c[l * l + l + m] * p;
          md.b[m][i] += r2 * c[l * l + l - m] * p;
        }
      }
  return inverse(md);
}

}  // namespace qll
