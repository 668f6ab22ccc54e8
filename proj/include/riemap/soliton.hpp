#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "riemap/geometry.hpp"

namespace riemap {

/// Gradient Ricci soliton data: Ric + Hess f = lambda * g. Steady means
/// lambda = 0. The potential carries analytic gradient/Hessian callbacks when
/// available; grid sampling is the fallback.
struct SolitonStructure {
  ChartManifold M;
  double lambda = 0.0;
  std::function<double(const std::vector<double>&)> f;
  std::function<Vec(const std::vector<double>&)> grad_f;     // covariant df
  std::function<Mat(const std::vector<double>&)> hess_f;     // covariant
  std::string name;

  bool analytic() const { return bool(grad_f) && bool(hess_f); }
};

SolitonStructure make_cigar(double half_width = 4.0);
/// Euclidean Gaussian soliton: f = (lambda/2)|x|^2 on a box.
SolitonStructure make_gaussian(double lambda, Box domain);
/// Flat metric, f = 0, lambda = 0.
SolitonStructure make_euclidean_trivial(Box domain);
SolitonStructure soliton_preset(const std::string& name, double lambda = 0.0);

/// Pointwise Frobenius g-norm of Ric + Hess f - lambda g over the grid.
/// Analytic path when the potential has callbacks, else grid FD of sampled f.
Field soliton_residual(const SolitonStructure& S, const GridGeometry& geo);
double soliton_residual_sup(const SolitonStructure& S, const GridGeometry& geo);

/// Scal + |grad f|^2 - 2 lambda f (Hamilton's identity field) and its
/// max-min defect over the interior.
struct HamiltonReport {
  Field field;
  double constancy_defect = 0.0;
  double value = 0.0;  // interior mean
};
HamiltonReport hamilton_identity(const SolitonStructure& S,
                                 const GridGeometry& geo);

enum class BallMode { Chart, Metric };

/// Smooth cutoff: 1 on B_R(x0), 0 outside B_{2R}(x0), quintic smoothstep in
/// between. Chart mode measures balls and derivative bounds in chart
/// (euclidean) terms; metric mode uses grid geodesic distance and g-norms.
struct CutoffFunction {
  std::vector<double> center;
  double R = 1.0;
  BallMode mode = BallMode::Chart;
  Field dist;      // distance field used
  Field eta;       // scalar
  Field eta2;      // eta^2
  Field grad_eta2; // covariant d(eta^2), FD of eta2
  Field lap_eta2;  // Laplace-Beltrami of eta^2
  double measured_c1 = 0.0;  // sup R   |grad eta|
  double measured_c2 = 0.0;  // sup R^2 |grad^2 eta|
};

/// Grid geodesic distance from a point: fast-marching upwind solve for
/// diagonal metrics, Dijkstra over grid edges otherwise.
Field metric_distance_field(const GridGeometry& geo,
                            const std::vector<double>& x0);

CutoffFunction make_cutoff(const SolitonStructure& S, const GridGeometry& geo,
                           const std::vector<double>& x0, double R,
                           double c_target = 15.0,
                           BallMode mode = BallMode::Chart);

/// sup of |grad Scal|_g over the ball B_R and over the annulus [R, 2R]
/// (where the cutoff derivative lives), with the products against R.
struct ShiRow {
  double R = 0;
  double sup_ball = 0;
  double sup_annulus = 0;
  double product_ball = 0;
  double product_annulus = 0;
};
struct ShiReport {
  std::vector<ShiRow> rows;
  bool annulus_product_grows = false;
};
ShiReport shi_decay_probe(const SolitonStructure& S, const GridGeometry& geo,
                          const std::vector<double>& x0,
                          const std::vector<double>& R_ladder);

/// |grad Scal|_g at a chart point (pointwise FD of the scalar-curvature
/// callback when present, else of the assembled curvature).
double grad_scal_norm(const SolitonStructure& S, const std::vector<double>& x);

}  // namespace riemap
