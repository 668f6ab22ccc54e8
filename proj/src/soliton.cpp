#include "riemap/soliton.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace riemap {

SolitonStructure make_cigar(double half_width) {
  SolitonStructure s;
  s.M = make_cigar_manifold(half_width);
  s.lambda = 0.0;
  s.name = "cigar";
  s.f = [](const std::vector<double>& x) {
    return -std::log(1.0 + x[0] * x[0] + x[1] * x[1]);
  };
  s.grad_f = [](const std::vector<double>& x) {
    double q = 1.0 + x[0] * x[0] + x[1] * x[1];
    Vec df(2);
    df << -2.0 * x[0] / q, -2.0 * x[1] / q;
    return df;
  };
  // Covariant Hessian: d_i d_j f - Gamma^k_ij d_k f with the cigar symbols.
  s.hess_f = [](const std::vector<double>& x) {
    double q = 1.0 + x[0] * x[0] + x[1] * x[1];
    Mat d2(2, 2);
    d2(0, 0) = -2.0 / q + 4.0 * x[0] * x[0] / (q * q);
    d2(1, 1) = -2.0 / q + 4.0 * x[1] * x[1] / (q * q);
    d2(0, 1) = d2(1, 0) = 4.0 * x[0] * x[1] / (q * q);
    double du[2] = {-x[0] / q, -x[1] / q};
    double df[2] = {-2.0 * x[0] / q, -2.0 * x[1] / q};
    Mat h(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double gam_df = 0.0;  // Gamma^k_ij df_k, conformal symbols
        for (int k = 0; k < 2; ++k) {
          double gam = 0.0;
          if (k == i) gam += du[j];
          if (k == j) gam += du[i];
          if (i == j) gam -= du[k];
          gam_df += gam * df[k];
        }
        h(i, j) = d2(i, j) - gam_df;
      }
    return h;
  };
  return s;
}

SolitonStructure make_gaussian(double lambda, Box domain) {
  SolitonStructure s;
  int m = domain.dim();
  s.M = make_euclidean(m, std::move(domain));
  s.lambda = lambda;
  s.name = "gaussian";
  s.f = [lambda](const std::vector<double>& x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    return 0.5 * lambda * r2;
  };
  s.grad_f = [lambda, m](const std::vector<double>& x) {
    Vec df(m);
    for (int i = 0; i < m; ++i) df[i] = lambda * x[i];
    return df;
  };
  s.hess_f = [lambda, m](const std::vector<double>&) {
    return Mat(lambda * Mat::Identity(m, m));
  };
  return s;
}

SolitonStructure make_euclidean_trivial(Box domain) {
  SolitonStructure s = make_gaussian(0.0, std::move(domain));
  s.name = "euclidean-trivial";
  return s;
}

SolitonStructure soliton_preset(const std::string& name, double lambda) {
  if (name == "cigar") return make_cigar();
  if (name == "gaussian") return make_gaussian(lambda, Box{{-1, -1}, {1, 1}});
  if (name == "euclidean-trivial")
    return make_euclidean_trivial(Box{{-1, -1}, {1, 1}});
  throw config_error("unknown soliton preset: " + name);
}

Field soliton_residual(const SolitonStructure& S, const GridGeometry& geo) {
  const Grid& grid = *geo.grid;
  const int m = geo.m;
  Field out(grid, 1);
  if (!geo.has_curvature)
    throw config_error("soliton_residual needs geometry with curvature cache");

  std::optional<Field> hess_grid;
  if (!S.analytic()) {
    Field f(grid, 1);
    for (std::size_t i = 0; i < grid.size(); ++i)
      f.at(i, 0) = S.f(grid.coords(i));
    hess_grid = hessian_scalar(geo, f);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.interior(i, geo.stencil.radius())) continue;
    Mat hess(m, m);
    if (S.analytic()) {
      hess = S.hess_f(grid.coords(i));
    } else {
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) hess(a, b) = hess_grid->at(i, a * m + b);
    }
    Mat res = geo.ric[i] + hess - S.lambda * geo.g[i];
    Mat up = geo.ginv[i] * res * geo.ginv[i];
    double n2 = (up.array() * res.array()).sum();
    out.at(i, 0) = std::sqrt(std::max(0.0, n2));
  }
  return out;
}

double soliton_residual_sup(const SolitonStructure& S,
                            const GridGeometry& geo) {
  Field r = soliton_residual(S, geo);
  double sup = 0.0;
  for (std::size_t i = 0; i < geo.grid->size(); ++i)
    sup = std::max(sup, r.at(i, 0));
  return sup;
}

HamiltonReport hamilton_identity(const SolitonStructure& S,
                                 const GridGeometry& geo) {
  const Grid& grid = *geo.grid;
  HamiltonReport rep;
  rep.field = Field(grid, 1);
  if (!geo.has_curvature)
    throw config_error("hamilton_identity needs curvature cache");

  std::optional<Field> grad_grid;
  if (!S.grad_f) {
    Field fsample(grid, 1);
    for (std::size_t i = 0; i < grid.size(); ++i)
      fsample.at(i, 0) = S.f(grid.coords(i));
    grad_grid = grad_scalar(geo, fsample);
  }
  double vmin = 1e300, vmax = -1e300, sum = 0.0;
  std::size_t count = 0;
  const int rad = std::max(1, geo.stencil.radius());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.interior(i, rad)) continue;
    auto x = grid.coords(i);
    double grad2;
    if (S.grad_f) {
      Vec df = S.grad_f(x);
      grad2 = (geo.ginv[i] * df).dot(df);
    } else {
      Vec up(geo.m);
      for (int a = 0; a < geo.m; ++a) up[a] = grad_grid->at(i, a);
      grad2 = (geo.g[i] * up).dot(up);
    }
    double v = geo.scal[i] + grad2 - 2.0 * S.lambda * S.f(x);
    rep.field.at(i, 0) = v;
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
    sum += v;
    ++count;
  }
  rep.constancy_defect = vmax - vmin;
  rep.value = count ? sum / double(count) : 0.0;
  return rep;
}

namespace {

double quintic_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

bool metric_is_diagonal(const GridGeometry& geo) {
  for (std::size_t i = 0; i < geo.grid->size(); ++i) {
    const Mat& g = geo.g[i];
    for (int a = 0; a < geo.m; ++a)
      for (int b = 0; b < geo.m; ++b)
        if (a != b && std::abs(g(a, b)) > 1e-14) return false;
  }
  return true;
}

/// First-order fast marching for diagonal metrics:
/// sum_i g^{ii} ((d - d_i)/h_i)^2 = 1 with upwind neighbors.
Field fmm_distance(const GridGeometry& geo, std::size_t src) {
  const Grid& grid = *geo.grid;
  const int m = geo.m;
  const double INF = 1e300;
  Field dist(grid, 1, INF);
  std::vector<char> accepted(grid.size(), 0);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;

  auto solve_node = [&](std::size_t node) {
    double a[4], w[4];
    int cnt = 0;
    auto idx = grid.unindex(node);
    for (int ax = 0; ax < m; ++ax) {
      double best = INF;
      if (idx[ax] > 0)
        best = std::min(best, dist.at(node - grid.stride(ax), 0));
      if (idx[ax] < grid.nodes(ax) - 1)
        best = std::min(best, dist.at(node + grid.stride(ax), 0));
      if (best < INF) {
        a[cnt] = best;
        w[cnt] = geo.ginv[node](ax, ax) / (grid.spacing(ax) * grid.spacing(ax));
        ++cnt;
      }
    }
    for (int i = 0; i < cnt; ++i)
      for (int j = i + 1; j < cnt; ++j)
        if (a[j] < a[i]) {
          std::swap(a[i], a[j]);
          std::swap(w[i], w[j]);
        }
    // Upwind quadratic over the usable neighbor subset.
    for (int use = cnt; use >= 1; --use) {
      double A = 0, B = 0, C = -1.0;
      for (int k = 0; k < use; ++k) {
        A += w[k];
        B += -2.0 * w[k] * a[k];
        C += w[k] * a[k] * a[k];
      }
      double disc = B * B - 4.0 * A * C;
      if (disc < 0) continue;
      double d = (-B + std::sqrt(disc)) / (2.0 * A);
      if (use == 1 || d >= a[use - 1]) return d;
    }
    return INF;
  };

  dist.at(src, 0) = 0.0;
  heap.push({0.0, src});
  while (!heap.empty()) {
    auto [d, node] = heap.top();
    heap.pop();
    if (accepted[node]) continue;
    accepted[node] = 1;
    auto idx = grid.unindex(node);
    for (int ax = 0; ax < m; ++ax)
      for (int dir = -1; dir <= 1; dir += 2) {
        int ni = idx[ax] + dir;
        if (ni < 0 || ni >= grid.nodes(ax)) continue;
        std::size_t nb = std::size_t(std::ptrdiff_t(node) + dir * grid.stride(ax));
        if (accepted[nb]) continue;
        double nd = solve_node(nb);
        if (nd < dist.at(nb, 0)) {
          dist.at(nb, 0) = nd;
          heap.push({nd, nb});
        }
      }
  }
  return dist;
}

/// Dijkstra over the (3^m - 1)-neighbor graph with g-edge lengths.
Field dijkstra_distance(const GridGeometry& geo, std::size_t src) {
  const Grid& grid = *geo.grid;
  const int m = geo.m;
  const double INF = 1e300;
  Field dist(grid, 1, INF);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  dist.at(src, 0) = 0.0;
  heap.push({0.0, src});
  int total = 1;
  for (int i = 0; i < m; ++i) total *= 3;
  while (!heap.empty()) {
    auto [d, node] = heap.top();
    heap.pop();
    if (d > dist.at(node, 0)) continue;
    auto idx = grid.unindex(node);
    for (int code = 0; code < total; ++code) {
      int c = code;
      bool zero = true, ok = true;
      std::vector<int> nidx = idx;
      Vec step(m);
      for (int ax = 0; ax < m; ++ax) {
        int o = (c % 3) - 1;
        c /= 3;
        nidx[ax] += o;
        step[ax] = o * grid.spacing(ax);
        if (o != 0) zero = false;
        if (nidx[ax] < 0 || nidx[ax] >= grid.nodes(ax)) ok = false;
      }
      if (zero || !ok) continue;
      std::size_t nb = grid.index(nidx);
      Mat gmid = 0.5 * (geo.g[node] + geo.g[nb]);
      double len = std::sqrt((gmid * step).dot(step));
      if (dist.at(node, 0) + len < dist.at(nb, 0)) {
        dist.at(nb, 0) = dist.at(node, 0) + len;
        heap.push({dist.at(nb, 0), nb});
      }
    }
  }
  return dist;
}

std::size_t nearest_node(const Grid& grid, const std::vector<double>& x0) {
  std::vector<int> idx(grid.dim());
  for (int a = 0; a < grid.dim(); ++a) {
    double t = (x0[a] - grid.box().lo[a]) / grid.spacing(a);
    idx[a] = std::clamp(int(std::lround(t)), 0, grid.nodes(a) - 1);
  }
  return grid.index(idx);
}

}  // namespace

Field metric_distance_field(const GridGeometry& geo,
                            const std::vector<double>& x0) {
  std::size_t src = nearest_node(*geo.grid, x0);
  if (metric_is_diagonal(geo)) return fmm_distance(geo, src);
  return dijkstra_distance(geo, src);
}

CutoffFunction make_cutoff(const SolitonStructure& S, const GridGeometry& geo,
                           const std::vector<double>& x0, double R,
                           double c_target, BallMode mode) {
  (void)S;
  const Grid& grid = *geo.grid;
  const int m = geo.m;
  CutoffFunction cf;
  cf.center = x0;
  cf.R = R;
  cf.mode = mode;

  if (mode == BallMode::Chart) {
    cf.dist = Field(grid, 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      auto x = grid.coords(i);
      double d2 = 0.0;
      for (int a = 0; a < m; ++a) d2 += (x[a] - x0[a]) * (x[a] - x0[a]);
      cf.dist.at(i, 0) = std::sqrt(d2);
    }
  } else {
    cf.dist = metric_distance_field(geo, x0);
  }

  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!grid.interior(i, 3) && cf.dist.at(i, 0) <= 2.0 * R)
      throw margin_error("make_cutoff: B_{2R}(x0) reaches the grid boundary");

  cf.eta = Field(grid, 1);
  cf.eta2 = Field(grid, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double d = cf.dist.at(i, 0);
    double e = 1.0 - quintic_step((d - R) / R);
    cf.eta.at(i, 0) = e;
    cf.eta2.at(i, 0) = e * e;
  }

  cf.grad_eta2 = Field(grid, m);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.interior(i, geo.stencil.radius())) continue;
    for (int a = 0; a < m; ++a)
      cf.grad_eta2.at(i, a) = geo.stencil.d1(cf.eta2, i, 0, a);
  }
  cf.lap_eta2 = laplacian_scalar(geo, cf.eta2);

  // Measured derivative-bound constants, in the norm matching the ball mode.
  Field hess = hessian_scalar(geo, cf.eta);
  double c1 = 0.0, c2 = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.interior(i, 2)) continue;
    Vec de(m);
    for (int a = 0; a < m; ++a) de[a] = geo.stencil.d1(cf.eta, i, 0, a);
    double n1, n2;
    if (mode == BallMode::Chart) {
      n1 = de.norm();
      Mat d2(m, m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
          d2(a, b) = (a == b) ? geo.stencil.d2(cf.eta, i, 0, a)
                              : geo.stencil.d11(cf.eta, i, 0, a, b);
      n2 = d2.norm();
    } else {
      Mat he(m, m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) he(a, b) = hess.at(i, a * m + b);
      n1 = std::sqrt(std::max(0.0, (geo.ginv[i] * de).dot(de)));
      Mat up = geo.ginv[i] * he * geo.ginv[i];
      n2 = std::sqrt(std::max(0.0, (up.array() * he.array()).sum()));
    }
    c1 = std::max(c1, R * n1);
    c2 = std::max(c2, R * R * n2);
  }
  cf.measured_c1 = c1;
  cf.measured_c2 = c2;
  if (std::max(c1, c2) > c_target)
    throw config_error("make_cutoff: measured derivative constant " +
                       std::to_string(std::max(c1, c2)) + " exceeds target " +
                       std::to_string(c_target));
  return cf;
}

double grad_scal_norm(const SolitonStructure& S,
                      const std::vector<double>& x) {
  const ChartManifold& M = S.M;
  const int m = M.dim();
  const double h = M.fd_step();
  auto scal_at = [&](const std::vector<double>& p) {
    if (M.scalar_curvature_fn()) return M.scalar_curvature_fn()(p);
    return scalar_curvature(M, p);
  };
  Vec ds(m);
  std::vector<double> xp = x, xm = x;
  for (int a = 0; a < m; ++a) {
    xp[a] = x[a] + h;
    xm[a] = x[a] - h;
    ds[a] = (scal_at(xp) - scal_at(xm)) / (2.0 * h);
    xp[a] = x[a];
    xm[a] = x[a];
  }
  Mat ginv = M.metric_inverse(x);
  return std::sqrt(std::max(0.0, (ginv * ds).dot(ds)));
}

ShiReport shi_decay_probe(const SolitonStructure& S, const GridGeometry& geo,
                          const std::vector<double>& x0,
                          const std::vector<double>& R_ladder) {
  const Grid& grid = *geo.grid;
  ShiReport rep;
  for (double R : R_ladder) {
    ShiRow row;
    row.R = R;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!grid.interior(i, 1)) continue;
      auto x = grid.coords(i);
      double d2 = 0.0;
      for (int a = 0; a < geo.m; ++a) d2 += (x[a] - x0[a]) * (x[a] - x0[a]);
      double d = std::sqrt(d2);
      if (d > 2.0 * R) continue;
      double gs = grad_scal_norm(S, x);
      if (d <= R)
        row.sup_ball = std::max(row.sup_ball, gs);
      else
        row.sup_annulus = std::max(row.sup_annulus, gs);
    }
    row.product_ball = R * row.sup_ball;
    row.product_annulus = R * row.sup_annulus;
    rep.rows.push_back(row);
  }
  for (std::size_t k = 1; k < rep.rows.size(); ++k)
    if (rep.rows[k].product_annulus > rep.rows[k - 1].product_annulus * 1.05)
      rep.annulus_product_grows = true;
  return rep;
}

}  // namespace riemap
