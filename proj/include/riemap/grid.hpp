#pragma once
#include <cstddef>
#include <vector>

#include "riemap/errors.hpp"

namespace riemap {

/// Axis-aligned box in chart coordinates.
struct Box {
  std::vector<double> lo, hi;
  int dim() const { return int(lo.size()); }
  double extent(int axis) const { return hi[axis] - lo[axis]; }
  bool contains(const std::vector<double>& x, double pad = 0.0) const;
};

/// Uniform vertex-centered grid over a box: node i along an axis sits at
/// lo + i*h with h = extent/(n-1). All discrete fields live on these nodes.
class Grid {
 public:
  Grid() = default;
  Grid(Box box, std::vector<int> nodes_per_axis);

  int dim() const { return dim_; }
  const Box& box() const { return box_; }
  int nodes(int axis) const { return n_[axis]; }
  double spacing(int axis) const { return h_[axis]; }
  double max_spacing() const;
  std::size_t size() const { return size_; }

  std::size_t index(const std::vector<int>& idx) const;
  std::vector<int> unindex(std::size_t flat) const;
  std::ptrdiff_t stride(int axis) const { return stride_[axis]; }

  std::vector<double> coords(std::size_t flat) const;
  double coord(std::size_t flat, int axis) const;

  /// True if the node keeps `width` nodes between itself and every face.
  bool interior(std::size_t flat, int width) const;

  /// Smallest distance (in nodes) from the index to any face.
  int boundary_distance(std::size_t flat) const;

 private:
  Box box_;
  int dim_ = 0;
  std::vector<int> n_;
  std::vector<double> h_;
  std::vector<std::ptrdiff_t> stride_;
  std::size_t size_ = 0;
};

/// Flat per-node storage with `comps` components per node.
class Field {
 public:
  Field() = default;
  Field(const Grid& grid, int comps, double fill = 0.0)
      : grid_(&grid), comps_(comps), v_(grid.size() * std::size_t(comps), fill) {}

  const Grid& grid() const { return *grid_; }
  int comps() const { return comps_; }
  double& at(std::size_t node, int c) { return v_[node * comps_ + c]; }
  double at(std::size_t node, int c) const { return v_[node * comps_ + c]; }
  double* node_ptr(std::size_t node) { return v_.data() + node * comps_; }
  const double* node_ptr(std::size_t node) const {
    return v_.data() + node * comps_;
  }
  std::vector<double>& raw() { return v_; }
  const std::vector<double>& raw() const { return v_; }

  bool finite() const;

 private:
  const Grid* grid_ = nullptr;
  int comps_ = 0;
  std::vector<double> v_;
};

/// Central differences on node data. order is 2 or 4; the stencil radius is
/// order/2 and callers must stay that far inside the grid.
struct Stencil {
  int order = 2;
  int radius() const { return order / 2; }

  double d1(const Field& f, std::size_t node, int c, int axis) const;
  double d2(const Field& f, std::size_t node, int c, int axis) const;
  /// Mixed second derivative along two distinct axes.
  double d11(const Field& f, std::size_t node, int c, int ax1, int ax2) const;
};

/// Scalar helpers (comps == 1).
inline double value(const Field& f, std::size_t node) { return f.at(node, 0); }

void require_margin(const Grid& g, std::size_t node, int width,
                    const char* op_name);

}  // namespace riemap
