#pragma once
#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "riemap/grid.hpp"

namespace riemap {

// Small dense types with stack storage; chart dimensions stay <= 4.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 4, 1>;

/// First metric derivatives: dg[k](i,j) = d g_ij / d x^k.
using MetricDeriv1 = std::vector<Mat>;
/// Second derivatives: d2g[k][l](i,j) = d^2 g_ij / dx^k dx^l (l >= k used).
using MetricDeriv2 = std::vector<std::vector<Mat>>;

/// A single coordinate chart with a Riemannian metric. Derivatives come from
/// analytic callbacks when supplied, otherwise from centered differences of
/// the metric callback with step fd_step (independent of any grid spacing).
class ChartManifold {
 public:
  using MetricFn = std::function<Mat(const std::vector<double>&)>;
  using Deriv1Fn = std::function<MetricDeriv1(const std::vector<double>&)>;
  using Deriv2Fn = std::function<MetricDeriv2(const std::vector<double>&)>;
  using ScalarFn = std::function<double(const std::vector<double>&)>;

  ChartManifold() = default;
  ChartManifold(std::string name, int dim, Box domain, MetricFn metric,
                double fd_step = 1e-5);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const Box& domain() const { return domain_; }
  double fd_step() const { return fd_step_; }
  bool has_analytic_derivs() const { return bool(d1_); }

  void set_analytic_derivs(Deriv1Fn d1, Deriv2Fn d2);
  /// Optional closed forms used by probes when available.
  void set_scalar_curvature_fn(ScalarFn scal) { scal_fn_ = std::move(scal); }
  const ScalarFn& scalar_curvature_fn() const { return scal_fn_; }

  /// Metric at x; throws degenerate_metric_error unless symmetric positive
  /// definite.
  Mat metric(const std::vector<double>& x) const;
  Mat metric_inverse(const std::vector<double>& x) const;
  MetricDeriv1 metric_d1(const std::vector<double>& x) const;
  MetricDeriv2 metric_d2(const std::vector<double>& x) const;

  /// Max |analytic - FD| of first and second partials over random probes.
  double derivative_consistency(int probes, unsigned seed) const;

 private:
  std::string name_;
  int dim_ = 0;
  Box domain_;
  MetricFn metric_;
  Deriv1Fn d1_;
  Deriv2Fn d2_;
  ScalarFn scal_fn_;
  double fd_step_ = 1e-5;
};

/// Builtins. The conformal factory covers every 2-D builtin except the polar
/// sphere chart: g = exp(2u) * I with analytic u-derivatives.
ChartManifold make_euclidean(int dim, Box domain);
ChartManifold make_cigar_manifold(double half_width);
ChartManifold make_sphere_polar(double radius);
ChartManifold make_hyperbolic_disk(double chart_radius = 0.7);

struct ConformalData {
  std::function<double(double, double)> u;       // log conformal factor
  std::function<Eigen::Vector2d(double, double)> du;
  std::function<Eigen::Matrix2d(double, double)> d2u;
};
ChartManifold make_conformal2d(std::string name, Box domain, ConformalData cd);

/// Named preset lookup used by config files: euclidean | cigar | sphere |
/// hyperbolic. `param` is the sphere radius or the box half-width.
ChartManifold manifold_preset(const std::string& name, double param,
                              const Box* domain_override = nullptr);

}  // namespace riemap
