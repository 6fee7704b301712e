#pragma once

// Tensor-product grid on the sphere: Gauss-Legendre nodes in cos(theta),
// uniform periodic nodes in phi. Fields are stored row-major, theta outer.
//
// Differentiation is Fourier in phi and Legendre-node polynomial in theta.
// A field carries a parity sigma with F(-theta, phi + pi) = sigma F(theta,
// phi) under continuation through the poles; each Fourier mode is then either
// even or odd in theta and is differentiated as a smooth function of
// cos(theta) (times sin(theta) in the odd case).

#include <cstddef>
#include <vector>

namespace qll {

using Field = std::vector<double>;

struct FieldDerivatives {
  Field f, t, p, tt, tp, pp;  // value, d_theta, d_phi, second derivatives
};

class SphereGrid {
 public:
  SphereGrid(int ntheta, int nphi);

  int ntheta() const { return nt_; }
  int nphi() const { return np_; }
  std::size_t size() const { return static_cast<std::size_t>(nt_) * np_; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * np_ + j;
  }

  double theta(int i) const { return theta_[i]; }
  double cos_theta(int i) const { return x_[i]; }
  double sin_theta(int i) const { return s_[i]; }
  double phi(int j) const { return phi_[j]; }
  // Gauss-Legendre weight in cos(theta) times the phi spacing.
  double weight(int i) const { return wq_[i]; }

  // parity is +1 or -1
  FieldDerivatives derivatives(const Field& f, int parity) const;
  Field d_theta(const Field& f, int parity) const;
  Field d_phi(const Field& f) const;

  // Sum of f * w over the grid (f must already include the area density).
  double quadrature(const Field& f) const;

  // Real orthonormal spherical harmonics on the unit sphere, no
  // Condon-Shortley phase; m < 0 selects sin(|m| phi).
  static double ylm(int l, int m, double theta, double phi);
  // Largest degree resolved exactly by the quadrature for products.
  int max_degree() const;
  // Coefficients c[l*l + l + m] of f against Y_lm using the unit-sphere
  // measure, for l <= lmax.
  std::vector<double> sh_analysis(const Field& f, int lmax) const;
  Field sh_synthesis(const std::vector<double>& c, int lmax) const;

 private:
  struct Modes {
    // a[m][i], b[m][i] for m = 0..np/2
    std::vector<std::vector<double>> a, b;
  };
  Modes forward(const Field& f) const;
  Field inverse(const Modes& modes) const;
  void theta_derivs(const std::vector<double>& v, bool even,
                    std::vector<double>* d1, std::vector<double>* d2) const;
  void legendre_table(int lmax, std::vector<std::vector<double>>* table) const;

  int nt_, np_, nm_;
  std::vector<double> theta_, x_, s_, wq_, phi_;
  std::vector<double> D_, D2_;      // nt x nt in x
  std::vector<double> cos_, sin_;   // [m * np + j]
};

}  // namespace qll
