#pragma once
#include <optional>
#include <vector>

#include "riemap/grid.hpp"
#include "riemap/manifold.hpp"

namespace riemap {

/// Christoffel symbols at x: gamma[k](i,j) = Gamma^k_ij.
std::vector<Mat> christoffel(const ChartManifold& M,
                             const std::vector<double>& x);

/// d gamma[mu][k](i,j) = d_mu Gamma^k_ij (analytic chain rule when the
/// manifold carries second metric derivatives, else FD of Gamma).
std::vector<std::vector<Mat>> christoffel_d1(const ChartManifold& M,
                                             const std::vector<double>& x);

/// Riemann tensor R^r_{s,mu,nu} indexed riem[r][s](mu,nu).
std::vector<std::vector<Mat>> riemann(const ChartManifold& M,
                                      const std::vector<double>& x);

Mat ricci(const ChartManifold& M, const std::vector<double>& x);
double scalar_curvature(const ChartManifold& M, const std::vector<double>& x);

/// R^N(X,Y)Z in chart components of the target.
Vec curvature_operator(const ChartManifold& N, const std::vector<double>& y,
                       const Vec& X, const Vec& Y, const Vec& Z);

/// Per-node geometric data cached over a grid. Built either from a chart
/// manifold (pointwise callbacks) or from a sampled metric field (grid FD),
/// the latter being what the metric-variation oracle rebuilds.
struct GridGeometry {
  const Grid* grid = nullptr;
  int m = 0;
  Stencil stencil;
  std::vector<Mat> g, ginv;
  std::vector<double> sqrt_det;
  std::vector<std::vector<Mat>> gamma;  // [node][k](i,j)
  // Optional curvature cache (soliton / ledger paths).
  std::vector<Mat> ric;
  std::vector<double> scal;
  bool has_curvature = false;

  double spacing() const { return grid->max_spacing(); }
};

GridGeometry build_geometry(const ChartManifold& M, const Grid& grid,
                            bool with_curvature = false, int fd_order = 2);

/// Sym 2-tensor field: comps m*m, stored full, symmetric by construction.
GridGeometry build_geometry_from_metric_field(const Field& metric_field,
                                              const GridGeometry& base,
                                              int margin_width = 1);

/// g-gradient of a scalar grid field: comps m (contravariant).
Field grad_scalar(const GridGeometry& geo, const Field& f);
/// Covariant Hessian: comps m*m.
Field hessian_scalar(const GridGeometry& geo, const Field& f);
/// Laplace-Beltrami of a scalar field.
Field laplacian_scalar(const GridGeometry& geo, const Field& f);
/// (div S)_j = g^{ik} (d_i S_kj - Gamma^l_ik S_lj - Gamma^l_ij S_kl);
/// input comps m*m symmetric, output comps m covariant.
Field div_symtensor(const GridGeometry& geo, const Field& S);

/// Pointwise pairing <A,B> = g^{ik} g^{jl} A_ij B_kl of two 2-tensor fields.
double tensor_dot(const GridGeometry& geo, std::size_t node, const Field& A,
                  const Field& B);
/// Frobenius g-norm of a covariant 2-tensor at a node.
double tensor_norm(const GridGeometry& geo, std::size_t node, const Field& A);

enum class QuadratureRule { Trapezoid, Riemann };

/// Quadrature weights sqrt(det g) * prod(h) (trapezoid halves face nodes;
/// the plain Riemann sum is identical on compactly supported integrands).
struct Quadrature {
  const Grid* grid = nullptr;
  QuadratureRule rule = QuadratureRule::Trapezoid;
  std::vector<double> weight;

  double integrate(const Field& f) const;
};

Quadrature build_quadrature(const GridGeometry& geo,
                            QuadratureRule rule = QuadratureRule::Trapezoid);

}  // namespace riemap
