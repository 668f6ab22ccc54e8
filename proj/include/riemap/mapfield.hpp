#pragma once
#include <string>
#include <vector>

#include "riemap/geometry.hpp"
#include "riemap/rng.hpp"

namespace riemap {

/// Smooth compactly supported window: product of exp bumps per axis over a
/// support box placed strictly inside the grid box.
struct SupportWindow {
  Box support;
  double operator()(const std::vector<double>& x) const;
};

/// A discrete map phi: (M,g) -> (N,h), stored as target-chart coordinates on
/// the source grid. Nodes outside the support window hold the constant base
/// point, which keeps every derived field compactly supported.
class DiscreteMap {
 public:
  DiscreteMap() = default;
  DiscreteMap(const Grid& grid, const ChartManifold& target, Field values,
              std::vector<double> base_point, int support_margin);

  const Grid& grid() const { return *grid_; }
  const ChartManifold& target() const { return *target_; }
  int n() const { return target_->dim(); }
  const Field& values() const { return values_; }
  Field& values() { return values_; }
  const std::vector<double>& base_point() const { return base_; }

  /// Nodes, in grid margin units, between the map's support and the box.
  int support_margin() const { return support_margin_; }
  void require_support_margin(int needed, const char* op) const;

  std::vector<double> value_at(std::size_t node) const;
  /// Throws chart_domain_error if any node leaves the target box.
  void validate_in_target(double pad = 0.0) const;

 private:
  const Grid* grid_ = nullptr;
  const ChartManifold* target_ = nullptr;
  Field values_;
  std::vector<double> base_;
  int support_margin_ = 0;
};

/// Target metric data evaluated along the map, cached per node.
struct TargetAlongMap {
  Field h;      // n*n
  Field hinv;   // n*n
  Field gamma;  // n*n*n: Gamma^a_{bc} at (a*n+b)*n+c
};
TargetAlongMap build_target_along(const DiscreteMap& phi);

/// dphi^a_i stored at comp i*n + a; radius 1.
Field differential(const GridGeometry& geo, const DiscreteMap& phi);
/// e(phi) = 1/2 g^{ij} h_{ab} dphi^a_i dphi^b_j.
Field energy_density(const GridGeometry& geo, const DiscreteMap& phi,
                     const Field& dphi, const TargetAlongMap& tc);
/// (phi^* h)_{ij} = h_{ab} dphi^a_i dphi^b_j; comps m*m.
Field pullback_metric(const GridGeometry& geo, const DiscreteMap& phi,
                      const Field& dphi, const TargetAlongMap& tc);
/// (nabla dphi)^a_{ij} at comp (i*m+j)*n + a; radius 1 (diagonal cross
/// stencils); symmetric in (i,j) up to O(h^2).
Field second_fundamental_form(const GridGeometry& geo, const DiscreteMap& phi,
                              const Field& dphi, const TargetAlongMap& tc);
/// tau(phi) = tr_g nabla dphi; comps n. Exact g-trace of the SFF.
Field tension_from_sff(const GridGeometry& geo, const Field& sff, int n);
Field tension(const GridGeometry& geo, const DiscreteMap& phi);

/// (nabla^phi_i V)^a = d_i V^a + Gamma^N a_{bc} dphi^b_i V^c; comps m*n,
/// input comps n.
Field pullback_gradient(const GridGeometry& geo, const DiscreteMap& phi,
                        const Field& dphi, const TargetAlongMap& tc,
                        const Field& V);
/// Divergence of a dphi-indexed family W (comps m*n):
/// g^{ij} (d_i W^a_j + Gamma^N dphi_i W_j - Gamma^k_{ij} W^a_k); comps n.
Field pullback_divergence(const GridGeometry& geo, const DiscreteMap& phi,
                          const Field& dphi, const TargetAlongMap& tc,
                          const Field& W);

/// h-norm of a section (comps n) at a node.
double section_norm(const TargetAlongMap& tc, std::size_t node, const Field& V,
                    int n);
double section_dot(const TargetAlongMap& tc, std::size_t node, const Field& V,
                   const Field& W, int n);

/// Map presets (External Interfaces): constant, identity, linear,
/// gaussian-bump, random-smooth (band-limited noise, seeded).
DiscreteMap make_constant_map(const Grid& grid, const ChartManifold& target,
                              std::vector<double> y0);
DiscreteMap make_identity_map(const Grid& grid, const ChartManifold& target);
DiscreteMap make_linear_map(const Grid& grid, const ChartManifold& target,
                            const Mat& A, std::vector<double> y0);
DiscreteMap make_gaussian_bump_map(const Grid& grid,
                                   const ChartManifold& target,
                                   std::vector<double> y0, double amp,
                                   double sigma);
/// Seeded band-limited bump: y0 + amp * W(x) * sum of a few smooth modes.
/// support_inset is the physical gap kept between the window and the box.
DiscreteMap make_random_smooth_map(const Grid& grid,
                                   const ChartManifold& target,
                                   std::vector<double> y0, double amp,
                                   std::uint64_t seed,
                                   double support_inset_frac = 0.18);
DiscreteMap map_preset(const std::string& name, const Grid& grid,
                       const ChartManifold& target, std::uint64_t seed);

/// Seeded compactly supported variation field (comps n).
Field make_random_variation(const Grid& grid, int n, double amp,
                            std::uint64_t seed,
                            double support_inset_frac = 0.18);
/// Seeded compactly supported symmetric 2-tensor field (comps m*m).
Field make_random_symtensor(const Grid& grid, int m, double amp,
                            std::uint64_t seed,
                            double support_inset_frac = 0.18);

}  // namespace riemap
