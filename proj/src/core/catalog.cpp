#include "catalog.hpp"

#include <cmath>
#include <set>

#include "error.hpp"

namespace qll {
namespace {

template <class T>
T radius2(const Vec3<T>& x) {
  return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
}

// a * delta + b * x x^T
template <class T>
Mat3<T> radial_form(const Vec3<T>& x, const T& a, const T& b) {
  Mat3<T> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      m[i][j] = b * x[i] * x[j];
      if (i == j) m[i][j] = m[i][j] + a;
    }
  return m;
}

template <class T>
Mat3<T> zero3() {
  Mat3<T> m{};
  for (auto& row : m)
    for (auto& v : row) v = T(0.0);
  return m;
}

struct Euclidean {
  template <class T>
  Mat3<T> metric(const Vec3<T>& x) const {
    return radial_form(x, T(1.0), T(0.0));
  }
  template <class T>
  Mat3<T> k(const Vec3<T>&) const {
    return zero3<T>();
  }
  bool in_domain(const Vec3d&) const { return true; }
  bool has_k() const { return false; }
};

// (1 - 2m/r)^{-1} dr^2 + r^2 dOmega^2
struct Schwarzschild {
  double m;
  template <class T>
  Mat3<T> metric(const Vec3<T>& x) const {
    if (m == 0.0) return radial_form(x, T(1.0), T(0.0));
    using std::sqrt;
    const T r2 = radius2(x);
    const T r = sqrt(r2);
    return radial_form(x, T(1.0), (2.0 * m) / (r2 * (r - 2.0 * m)));
  }
  template <class T>
  Mat3<T> k(const Vec3<T>&) const {
    return zero3<T>();
  }
  bool in_domain(const Vec3d& p) const { return norm(p) > 2.0 * m; }
  bool has_k() const { return false; }
};

struct ReissnerNordstrom {
  double m;
  double q;
  template <class T>
  Mat3<T> metric(const Vec3<T>& x) const {
    using std::sqrt;
    const T r2 = radius2(x);
    const T r = sqrt(r2);
    const T num = 2.0 * m * r - q * q;
    return radial_form(x, T(1.0), num / (r2 * (r2 - 2.0 * m * r + q * q)));
  }
  template <class T>
  Mat3<T> k(const Vec3<T>&) const {
    return zero3<T>();
  }
  bool in_domain(const Vec3d& p) const {
    const double r = norm(p);
    if (q * q <= m * m) return r > m + std::sqrt(m * m - q * q);
    return r > 0.0;
  }
  bool has_k() const { return false; }
};

// Spacelike hyperboloid t^2 - |x|^2 = a^2 in Minkowski, parametrized by x.
struct Hyperboloid {
  double a;
  bool umbilic;  // k = g/a when true, time-symmetric otherwise
  template <class T>
  Mat3<T> metric(const Vec3<T>& x) const {
    return radial_form(x, T(1.0), T(-1.0) / (a * a + radius2(x)));
  }
  template <class T>
  Mat3<T> k(const Vec3<T>& x) const {
    if (!umbilic) return zero3<T>();
    Mat3<T> g = metric(x);
    for (auto& row : g)
      for (auto& v : row) v = v * (1.0 / a);
    return g;
  }
  bool in_domain(const Vec3d&) const { return true; }
  bool has_k() const { return umbilic; }
};

// Graph t = (alpha/2)|x|^2 in Minkowski.
struct Paraboloid {
  double alpha;
  template <class T>
  Mat3<T> metric(const Vec3<T>& x) const {
    return radial_form(x, T(1.0), T(-alpha * alpha));
  }
  template <class T>
  Mat3<T> k(const Vec3<T>& x) const {
    using std::sqrt;
    const T w = sqrt(1.0 - alpha * alpha * radius2(x));
    return radial_form(x, alpha / w, T(0.0));
  }
  bool in_domain(const Vec3d& p) const { return alpha * norm(p) < 1.0; }
  bool has_k() const { return true; }
};

// Round 3-sphere of radius R, stereographic from the south pole.
struct Sphere3 {
  double R;
  template <class T>
  Mat3<T> metric(const Vec3<T>& x) const {
    const T c = (2.0 * R * R) / (R * R + radius2(x));
    return radial_form(x, c * c, T(0.0));
  }
  template <class T>
  Mat3<T> k(const Vec3<T>&) const {
    return zero3<T>();
  }
  bool in_domain(const Vec3d&) const { return true; }
  bool has_k() const { return false; }
};

void check_keys(const std::string& name, const Params& params,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : params) {
    if (!allowed.count(key))
      fail(ErrorKind::kConfig,
           "unknown parameter '" + key + "' for space '" + name + "'");
    if (!std::isfinite(value))
      fail(ErrorKind::kConfig,
           "parameter '" + key + "' of space '" + name + "' is not finite");
  }
}

double get(const Params& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double require(const std::string& name, const Params& params,
               const std::string& key) {
  auto it = params.find(key);
  if (it == params.end())
    fail(ErrorKind::kConfig,
         "space '" + name + "' requires parameter '" + key + "'");
  return it->second;
}

void require_positive(const std::string& name, const std::string& key,
                      double v) {
  if (!(v > 0.0))
    fail(ErrorKind::kConfig,
         "space '" + name + "': parameter '" + key + "' must be > 0");
}

// Curvature radius from either a length parameter or Lambda.
double curvature_radius(const std::string& name, const Params& params,
                        const std::string& key, double sign) {
  const bool has_len = params.count(key) > 0;
  const bool has_lambda = params.count("Lambda") > 0;
  if (has_len && has_lambda)
    fail(ErrorKind::kConfig, "space '" + name + "': give either '" + key +
                                 "' or 'Lambda', not both");
  if (has_lambda) {
    const double lam = params.at("Lambda");
    if (!(sign * lam > 0.0))
      fail(ErrorKind::kConfig, "space '" + name + "': Lambda has wrong sign");
    return std::sqrt(3.0 / std::fabs(lam));
  }
  const double len = get(params, key, 1.0);
  require_positive(name, key, len);
  return len;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"euclidean",   "schwarzschild", "reissner_nordstrom", "hyperboloid",
          "paraboloid",  "hyperbolic",    "sphere3"};
}

AmbientSpace make_space(const std::string& name, const Params& params) {
  if (name == "euclidean") {
    check_keys(name, params, {});
    return AmbientSpace::from_model(Euclidean{}, {name, params});
  }
  if (name == "schwarzschild") {
    check_keys(name, params, {"m"});
    const double m = get(params, "m", 1.0);
    if (m < 0.0) fail(ErrorKind::kConfig, "schwarzschild: m must be >= 0");
    return AmbientSpace::from_model(Schwarzschild{m}, {name, {{"m", m}}});
  }
  if (name == "reissner_nordstrom") {
    check_keys(name, params, {"m", "q"});
    const double m = get(params, "m", 1.0);
    const double q = get(params, "q", 0.0);
    if (m < 0.0) fail(ErrorKind::kConfig, "reissner_nordstrom: m must be >= 0");
    return AmbientSpace::from_model(ReissnerNordstrom{m, q},
                                    {name, {{"m", m}, {"q", q}}})
        .with_point_charge(q);
  }
  if (name == "hyperboloid") {
    check_keys(name, params, {"a"});
    const double a = get(params, "a", 1.0);
    require_positive(name, "a", a);
    return AmbientSpace::from_model(Hyperboloid{a, true}, {name, {{"a", a}}});
  }
  if (name == "paraboloid") {
    check_keys(name, params, {"alpha"});
    const double alpha = require(name, params, "alpha");
    require_positive(name, "alpha", alpha);
    return AmbientSpace::from_model(Paraboloid{alpha},
                                    {name, {{"alpha", alpha}}});
  }
  if (name == "hyperbolic") {
    check_keys(name, params, {"a", "Lambda"});
    const double a = curvature_radius(name, params, "a", -1.0);
    return AmbientSpace::from_model(
        Hyperboloid{a, false}, {name, {{"a", a}, {"Lambda", -3.0 / (a * a)}}});
  }
  if (name == "sphere3") {
    check_keys(name, params, {"R", "Lambda"});
    const double R = curvature_radius(name, params, "R", 1.0);
    return AmbientSpace::from_model(
        Sphere3{R}, {name, {{"R", R}, {"Lambda", 3.0 / (R * R)}}});
  }
  fail(ErrorKind::kConfig, "unknown space '" + name + "'");
}

}  // namespace qll
