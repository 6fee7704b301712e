#pragma once

// Initial data (M, g, k) on a single global Cartesian chart, and pointwise
// curvature / constraint evaluation.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "jet.hpp"
#include "tensor.hpp"

namespace qll {

enum class DerivativeMode { kAnalytic, kFiniteDifference };

using Params = std::map<std::string, double>;

struct CatalogInfo {
  std::string name;
  Params params;
};

// g, dg[c][a][b] = d_c g_ab, ddg[c][d][a][b] = d_c d_d g_ab
struct MetricDerivatives {
  Mat3d g{};
  Tensor3d dg{};
  Tensor4d ddg{};
};

// k, dk[c][a][b] = d_c k_ab
struct KDerivatives {
  Mat3d k{};
  Tensor3d dk{};
};

class AmbientSpace {
 public:
  // Model requirements:
  //   template <class T> Mat3<T> metric(const Vec3<T>&) const;
  //   template <class T> Mat3<T> k(const Vec3<T>&) const;
  //   bool in_domain(const Vec3d&) const;
  //   bool has_k() const;
  template <class Model>
  static AmbientSpace from_model(Model model, CatalogInfo info) {
    AmbientSpace s;
    s.model_ = std::make_shared<const ModelImpl<Model>>(std::move(model));
    s.info_ = std::move(info);
    return s;
  }

  const CatalogInfo& info() const { return info_; }
  DerivativeMode mode() const { return mode_; }
  // 0 selects the default step.
  double fd_step() const { return fd_step_; }
  AmbientSpace with_derivative_mode(DerivativeMode mode,
                                    double step = 0.0) const;

  // Radial Coulomb-type field E = (q / r^2) * unit radial about the origin.
  AmbientSpace with_point_charge(double q) const;
  bool has_electric_field() const { return charge_.has_value(); }
  Vec3d electric_field(const Vec3d& p) const;

  bool in_domain(const Vec3d& p) const { return model_->in_domain(p); }
  bool has_k() const { return model_->has_k(); }

  Mat3d metric(const Vec3d& p) const;
  Mat3d k(const Vec3d& p) const;
  MetricDerivatives metric_derivatives(const Vec3d& p) const;
  KDerivatives k_derivatives(const Vec3d& p) const;

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual Mat3d metric(const Vec3d&) const = 0;
    virtual Mat3<Jet> metric(const Vec3<Jet>&) const = 0;
    virtual Mat3d k(const Vec3d&) const = 0;
    virtual Mat3<Jet> k(const Vec3<Jet>&) const = 0;
    virtual bool in_domain(const Vec3d&) const = 0;
    virtual bool has_k() const = 0;
  };

  template <class Model>
  struct ModelImpl final : Concept {
    explicit ModelImpl(Model m) : model(std::move(m)) {}
    Mat3d metric(const Vec3d& x) const override {
      return model.template metric<double>(x);
    }
    Mat3<Jet> metric(const Vec3<Jet>& x) const override {
      return model.template metric<Jet>(x);
    }
    Mat3d k(const Vec3d& x) const override { return model.template k<double>(x); }
    Mat3<Jet> k(const Vec3<Jet>& x) const override {
      return model.template k<Jet>(x);
    }
    bool in_domain(const Vec3d& x) const override { return model.in_domain(x); }
    bool has_k() const override { return model.has_k(); }
    Model model;
  };

  void require_domain(const Vec3d& p) const;

  std::shared_ptr<const Concept> model_;
  CatalogInfo info_;
  DerivativeMode mode_ = DerivativeMode::kAnalytic;
  double fd_step_ = 0.0;
  std::optional<double> charge_;
};

struct Curvature {
  Mat3d g{};
  Mat3d g_inv{};
  Tensor3d christoffel{};  // [c][a][b] = Gamma^c_ab
  Tensor4d riemann{};      // R_abcd, Ric_bd = g^ac R_abcd
  Mat3d ricci{};
  double scalar = 0.0;
};

struct ConstraintData {
  double mu = 0.0;
  Vec3d J{};  // covector components
  double J_norm = 0.0;
  double dec_margin = 0.0;  // mu - |J|_g
};

// Everything the surface layer needs at one chart point.
struct PointData {
  Curvature curv;
  Tensor3d dg{};
  Mat3d k{};
  Tensor3d nabla_k{};  // [a][b][c] = (nabla_a k)_bc
  double tr_k = 0.0;
  Vec3d d_tr_k{};  // nabla_a tr k
  double k_norm2 = 0.0;
  ConstraintData constraints;
};

Curvature curvature_at(const AmbientSpace& space, const Vec3d& p);
Tensor3d nabla_k_at(const AmbientSpace& space, const Vec3d& p);
ConstraintData constraint_data_at(const AmbientSpace& space, const Vec3d& p);
PointData point_data(const AmbientSpace& space, const Vec3d& p);

// Curvature from metric derivatives; exposed for tests of the index algebra.
Curvature curvature_from(const MetricDerivatives& md);

}  // namespace qll
