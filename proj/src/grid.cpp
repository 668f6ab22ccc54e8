#include "riemap/grid.hpp"

#include <cmath>
#include <string>

namespace riemap {

bool Box::contains(const std::vector<double>& x, double pad) const {
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (x[i] < lo[i] + pad || x[i] > hi[i] - pad) return false;
  return true;
}

Grid::Grid(Box box, std::vector<int> nodes_per_axis)
    : box_(std::move(box)), dim_(int(nodes_per_axis.size())),
      n_(std::move(nodes_per_axis)) {
  h_.resize(dim_);
  stride_.resize(dim_);
  size_ = 1;
  for (int a = 0; a < dim_; ++a) {
    if (n_[a] < 2) throw config_error("grid needs >=2 nodes per axis");
    h_[a] = box_.extent(a) / double(n_[a] - 1);
  }
  // Row-major: last axis is contiguous.
  for (int a = dim_ - 1; a >= 0; --a) {
    stride_[a] = std::ptrdiff_t(size_);
    size_ *= std::size_t(n_[a]);
  }
}

double Grid::max_spacing() const {
  double h = 0;
  for (double v : h_) h = std::max(h, v);
  return h;
}

std::size_t Grid::index(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) flat += std::size_t(idx[a]) * stride_[a];
  return flat;
}

std::vector<int> Grid::unindex(std::size_t flat) const {
  std::vector<int> idx(dim_);
  for (int a = 0; a < dim_; ++a) {
    idx[a] = int(flat / stride_[a]);
    flat %= stride_[a];
  }
  return idx;
}

std::vector<double> Grid::coords(std::size_t flat) const {
  auto idx = unindex(flat);
  std::vector<double> x(dim_);
  for (int a = 0; a < dim_; ++a) x[a] = box_.lo[a] + idx[a] * h_[a];
  return x;
}

double Grid::coord(std::size_t flat, int axis) const {
  int i = int((flat / stride_[axis]) % std::size_t(n_[axis]));
  return box_.lo[axis] + i * h_[axis];
}

bool Grid::interior(std::size_t flat, int width) const {
  for (int a = 0; a < dim_; ++a) {
    int i = int((flat / stride_[a]) % std::size_t(n_[a]));
    if (i < width || i > n_[a] - 1 - width) return false;
  }
  return true;
}

int Grid::boundary_distance(std::size_t flat) const {
  int d = 1 << 30;
  for (int a = 0; a < dim_; ++a) {
    int i = int((flat / stride_[a]) % std::size_t(n_[a]));
    d = std::min(d, std::min(i, n_[a] - 1 - i));
  }
  return d;
}

bool Field::finite() const {
  for (double x : v_)
    if (!std::isfinite(x)) return false;
  return true;
}

double Stencil::d1(const Field& f, std::size_t node, int c, int axis) const {
  const auto& g = f.grid();
  const std::ptrdiff_t s = g.stride(axis) * f.comps();
  const double h = g.spacing(axis);
  const double* p = f.raw().data() + node * f.comps() + c;
  if (order == 2) return (p[s] - p[-s]) / (2.0 * h);
  return (-p[2 * s] + 8.0 * p[s] - 8.0 * p[-s] + p[-2 * s]) / (12.0 * h);
}

double Stencil::d2(const Field& f, std::size_t node, int c, int axis) const {
  const auto& g = f.grid();
  const std::ptrdiff_t s = g.stride(axis) * f.comps();
  const double h = g.spacing(axis);
  const double* p = f.raw().data() + node * f.comps() + c;
  if (order == 2) return (p[s] - 2.0 * p[0] + p[-s]) / (h * h);
  return (-p[2 * s] + 16.0 * p[s] - 30.0 * p[0] + 16.0 * p[-s] - p[-2 * s]) /
         (12.0 * h * h);
}

double Stencil::d11(const Field& f, std::size_t node, int c, int ax1,
                    int ax2) const {
  const auto& g = f.grid();
  const std::ptrdiff_t s1 = g.stride(ax1) * f.comps();
  const std::ptrdiff_t s2 = g.stride(ax2) * f.comps();
  const double h1 = g.spacing(ax1), h2 = g.spacing(ax2);
  const double* p = f.raw().data() + node * f.comps() + c;
  if (order == 2)
    return (p[s1 + s2] - p[s1 - s2] - p[-s1 + s2] + p[-s1 - s2]) /
           (4.0 * h1 * h2);
  // Fourth order as nested first derivatives.
  auto row = [&](std::ptrdiff_t off) {
    return (-p[off + 2 * s2] + 8.0 * p[off + s2] - 8.0 * p[off - s2] +
            p[off - 2 * s2]) /
           (12.0 * h2);
  };
  return (-row(2 * s1) + 8.0 * row(s1) - 8.0 * row(-s1) + row(-2 * s1)) /
         (12.0 * h1);
}

void require_margin(const Grid& g, std::size_t node, int width,
                    const char* op_name) {
  if (!g.interior(node, width))
    throw margin_error(std::string(op_name) + ": node too close to boundary (need margin " +
                       std::to_string(width) + ")");
}

}  // namespace riemap
