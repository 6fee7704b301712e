#pragma once

// Second-order forward-mode jets in three variables. Evaluating a closed-form
// metric on Vec3<Jet> seeded with jet_variable() yields its value, gradient
// and Hessian with no truncation error.

#include <array>
#include <cmath>

namespace qll {

struct Jet {
  double v = 0.0;
  std::array<double, 3> d{};
  // symmetric Hessian, h[i][j]
  std::array<std::array<double, 3>, 3> h{};

  Jet() = default;
  Jet(double value) : v(value) {}  // NOLINT: implicit on purpose, constants
};

inline Jet jet_variable(double value, int index) {
  Jet j(value);
  j.d[index] = 1.0;
  return j;
}

// f(u) given f(u.v), f'(u.v), f''(u.v)
inline Jet chain(const Jet& u, double f, double df, double ddf) {
  Jet r(f);
  for (int i = 0; i < 3; ++i) r.d[i] = df * u.d[i];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.h[i][j] = df * u.h[i][j] + ddf * u.d[i] * u.d[j];
  return r;
}

inline Jet operator+(const Jet& a, const Jet& b) {
  Jet r(a.v + b.v);
  for (int i = 0; i < 3; ++i) {
    r.d[i] = a.d[i] + b.d[i];
    for (int j = 0; j < 3; ++j) r.h[i][j] = a.h[i][j] + b.h[i][j];
  }
  return r;
}

inline Jet operator-(const Jet& a) {
  Jet r(-a.v);
  for (int i = 0; i < 3; ++i) {
    r.d[i] = -a.d[i];
    for (int j = 0; j < 3; ++j) r.h[i][j] = -a.h[i][j];
  }
  return r;
}

inline Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r(a.v * b.v);
  for (int i = 0; i < 3; ++i) r.d[i] = a.v * b.d[i] + b.v * a.d[i];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.h[i][j] = a.v * b.h[i][j] + b.v * a.h[i][j] + a.d[i] * b.d[j] +
                  a.d[j] * b.d[i];
  return r;
}

inline Jet reciprocal(const Jet& a) {
  const double inv = 1.0 / a.v;
  return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

inline Jet& operator+=(Jet& a, const Jet& b) { return a = a + b; }
inline Jet& operator-=(Jet& a, const Jet& b) { return a = a - b; }
inline Jet& operator*=(Jet& a, const Jet& b) { return a = a * b; }

inline Jet sqrt(const Jet& a) {
  const double s = std::sqrt(a.v);
  return chain(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet pow(const Jet& a, double p) {
  const double f = std::pow(a.v, p);
  const double df = p * std::pow(a.v, p - 1.0);
  const double ddf = p * (p - 1.0) * std::pow(a.v, p - 2.0);
  return chain(a, f, df, ddf);
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.v; }

}  // namespace qll
