#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace qll {

// Component storage for small fixed-size tensors. The scalar type is a
// template parameter so the same closed-form expressions can be evaluated in
// plain doubles or in derivative-carrying jets.
template <class T>
using Vec3 = std::array<T, 3>;
template <class T>
using Mat3 = std::array<std::array<T, 3>, 3>;

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;

// [a][b][c]
using Tensor3d = std::array<Mat3d, 3>;
// [a][b][c][d]
using Tensor4d = std::array<Tensor3d, 3>;

template <class T>
constexpr Mat3<T> identity3() {
  Mat3<T> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = T(i == j ? 1.0 : 0.0);
  return m;
}

inline Vec3d operator+(const Vec3d& a, const Vec3d& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3d operator-(const Vec3d& a, const Vec3d& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3d operator*(double s, const Vec3d& a) {
  return {s * a[0], s * a[1], s * a[2]};
}

inline double dot(const Vec3d& a, const Vec3d& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3d cross(const Vec3d& a, const Vec3d& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3d& a) { return std::sqrt(dot(a, a)); }

inline Vec3d mul(const Mat3d& m, const Vec3d& v) {
  Vec3d out{};
  for (int i = 0; i < 3; ++i)
    out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

// m(u, v) = u^a m_ab v^b
inline double bilinear(const Mat3d& m, const Vec3d& u, const Vec3d& v) {
  return dot(u, mul(m, v));
}

inline double det(const Mat3d& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline Mat3d inverse(const Mat3d& m) {
  const double d = det(m);
  Mat3d inv{};
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / d;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / d;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / d;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / d;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / d;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / d;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / d;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / d;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / d;
  return inv;
}

// Sylvester's criterion on the leading minors.
inline bool is_positive_definite(const Mat3d& m) {
  const double m1 = m[0][0];
  const double m2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  return m1 > 0.0 && m2 > 0.0 && det(m) > 0.0;
}

// Full contraction g^{ac} g^{bd} s_ab t_cd.
inline double contract2(const Mat3d& ginv, const Mat3d& s, const Mat3d& t) {
  double acc = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          acc += ginv[a][c] * ginv[b][d] * s[a][b] * t[c][d];
  return acc;
}

inline double trace(const Mat3d& ginv, const Mat3d& s) {
  double acc = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) acc += ginv[a][b] * s[a][b];
  return acc;
}

}  // namespace qll
