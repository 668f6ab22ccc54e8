#include "riemap/geometry.hpp"

#include <cmath>

namespace riemap {

namespace {

std::vector<Mat> christoffel_from(const Mat& ginv, const MetricDeriv1& dg) {
  const int m = int(ginv.rows());
  std::vector<Mat> gam(m, Mat(Mat::Zero(m, m)));
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double s = 0.0;
        for (int l = 0; l < m; ++l)
          s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gam[k](i, j) = 0.5 * s;
        gam[k](j, i) = gam[k](i, j);
      }
  return gam;
}

}  // namespace

std::vector<Mat> christoffel(const ChartManifold& M,
                             const std::vector<double>& x) {
  return christoffel_from(M.metric_inverse(x), M.metric_d1(x));
}

std::vector<std::vector<Mat>> christoffel_d1(const ChartManifold& M,
                                             const std::vector<double>& x) {
  const int m = M.dim();
  std::vector<std::vector<Mat>> dgam(m);
  if (M.has_analytic_derivs()) {
    // d_mu Gamma^k_ij = 1/2 d_mu(g^kl) (...) + 1/2 g^kl d_mu(...).
    Mat ginv = M.metric_inverse(x);
    MetricDeriv1 dg = M.metric_d1(x);
    MetricDeriv2 d2g = M.metric_d2(x);
    for (int mu = 0; mu < m; ++mu) {
      Mat dginv = -ginv * dg[mu] * ginv;
      std::vector<Mat> part(m, Mat(Mat::Zero(m, m)));
      for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
          for (int j = i; j < m; ++j) {
            double s = 0.0;
            for (int l = 0; l < m; ++l) {
              s += dginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
              s += ginv(k, l) *
                   (d2g[mu][i](j, l) + d2g[mu][j](i, l) - d2g[mu][l](i, j));
            }
            part[k](i, j) = 0.5 * s;
            part[k](j, i) = part[k](i, j);
          }
      dgam[mu] = std::move(part);
    }
    return dgam;
  }
  // FD of Gamma with the manifold's own step.
  const double h = M.fd_step();
  std::vector<double> xp = x, xm = x;
  for (int mu = 0; mu < m; ++mu) {
    xp[mu] = x[mu] + h;
    xm[mu] = x[mu] - h;
    auto gp = christoffel(M, xp);
    auto gm = christoffel(M, xm);
    std::vector<Mat> part(m);
    for (int k = 0; k < m; ++k) part[k] = (gp[k] - gm[k]) / (2.0 * h);
    dgam[mu] = std::move(part);
    xp[mu] = x[mu];
    xm[mu] = x[mu];
  }
  return dgam;
}

std::vector<std::vector<Mat>> riemann(const ChartManifold& M,
                                      const std::vector<double>& x) {
  const int m = M.dim();
  auto gam = christoffel(M, x);
  auto dgam = christoffel_d1(M, x);
  // R^r_{s mu nu} = d_mu Gamma^r_{nu s} - d_nu Gamma^r_{mu s}
  //              + Gamma^r_{mu l} Gamma^l_{nu s} - Gamma^r_{nu l} Gamma^l_{mu s}
  std::vector<std::vector<Mat>> R(m, std::vector<Mat>(m, Mat(Mat::Zero(m, m))));
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s)
      for (int mu = 0; mu < m; ++mu)
        for (int nu = 0; nu < m; ++nu) {
          double v = dgam[mu][r](nu, s) - dgam[nu][r](mu, s);
          for (int l = 0; l < m; ++l)
            v += gam[r](mu, l) * gam[l](nu, s) - gam[r](nu, l) * gam[l](mu, s);
          R[r][s](mu, nu) = v;
        }
  return R;
}

Mat ricci(const ChartManifold& M, const std::vector<double>& x) {
  const int m = M.dim();
  auto R = riemann(M, x);
  Mat ric = Mat::Zero(m, m);
  for (int s = 0; s < m; ++s)
    for (int nu = 0; nu < m; ++nu) {
      double v = 0.0;
      for (int mu = 0; mu < m; ++mu) v += R[mu][s](mu, nu);
      ric(s, nu) = v;
    }
  return ric;
}

double scalar_curvature(const ChartManifold& M, const std::vector<double>& x) {
  Mat ginv = M.metric_inverse(x);
  Mat ric = ricci(M, x);
  return (ginv * ric).trace();
}

Vec curvature_operator(const ChartManifold& N, const std::vector<double>& y,
                       const Vec& X, const Vec& Y, const Vec& Z) {
  const int n = N.dim();
  auto R = riemann(N, y);
  Vec out = Vec::Zero(n);
  for (int r = 0; r < n; ++r) {
    double v = 0.0;
    for (int s = 0; s < n; ++s)
      for (int mu = 0; mu < n; ++mu)
        for (int nu = 0; nu < n; ++nu)
          v += R[r][s](mu, nu) * X[mu] * Y[nu] * Z[s];
    out[r] = v;
  }
  return out;
}

GridGeometry build_geometry(const ChartManifold& M, const Grid& grid,
                            bool with_curvature, int fd_order) {
  GridGeometry geo;
  geo.grid = &grid;
  geo.m = M.dim();
  geo.stencil.order = fd_order;
  const std::size_t N = grid.size();
  geo.g.resize(N);
  geo.ginv.resize(N);
  geo.sqrt_det.resize(N);
  geo.gamma.resize(N);
  if (with_curvature) {
    geo.ric.resize(N);
    geo.scal.resize(N);
    geo.has_curvature = true;
  }
  for (std::size_t i = 0; i < N; ++i) {
    auto x = grid.coords(i);
    Mat g = M.metric(x);
    geo.g[i] = g;
    geo.ginv[i] = g.inverse();
    geo.sqrt_det[i] = std::sqrt(g.determinant());
    geo.gamma[i] = christoffel_from(geo.ginv[i], M.metric_d1(x));
    if (with_curvature) {
      geo.ric[i] = ricci(M, x);
      geo.scal[i] = (geo.ginv[i] * geo.ric[i]).trace();
    }
  }
  return geo;
}

GridGeometry build_geometry_from_metric_field(const Field& mf,
                                              const GridGeometry& base,
                                              int margin_width) {
  const Grid& grid = mf.grid();
  const int m = base.m;
  GridGeometry geo;
  geo.grid = &grid;
  geo.m = m;
  geo.stencil = base.stencil;
  const std::size_t N = grid.size();
  geo.g.resize(N);
  geo.ginv.resize(N);
  geo.sqrt_det.resize(N);
  geo.gamma.resize(N);
  const int rad = std::max(margin_width, base.stencil.radius());
  for (std::size_t i = 0; i < N; ++i) {
    Mat g(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) g(a, b) = mf.at(i, a * m + b);
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success)
      throw degenerate_metric_error(
          "sampled metric lost positive definiteness");
    geo.g[i] = g;
    geo.ginv[i] = g.inverse();
    geo.sqrt_det[i] = std::sqrt(g.determinant());
    if (grid.interior(i, rad)) {
      MetricDeriv1 dg(m, Mat(Mat::Zero(m, m)));
      for (int k = 0; k < m; ++k)
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            dg[k](a, b) = base.stencil.d1(mf, i, a * m + b, k);
      geo.gamma[i] = christoffel_from(geo.ginv[i], dg);
    } else {
      geo.gamma[i] = base.gamma[i];
    }
  }
  return geo;
}

Field grad_scalar(const GridGeometry& geo, const Field& f) {
  const Grid& grid = *geo.grid;
  const int m = geo.m, rad = geo.stencil.radius();
  Field out(grid, m);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.interior(i, rad)) continue;
    Vec df(m);
    for (int a = 0; a < m; ++a) df[a] = geo.stencil.d1(f, i, 0, a);
    Vec up = geo.ginv[i] * df;
    for (int a = 0; a < m; ++a) out.at(i, a) = up[a];
  }
  return out;
}

Field hessian_scalar(const GridGeometry& geo, const Field& f) {
  const Grid& grid = *geo.grid;
  const int m = geo.m, rad = geo.stencil.radius();
  Field out(grid, m * m);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!grid.interior(i, rad)) continue;
    Vec df(m);
    for (int a = 0; a < m; ++a) df[a] = geo.stencil.d1(f, i, 0, a);
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) {
        double v = (a == b) ? geo.stencil.d2(f, i, 0, a)
                            : geo.stencil.d11(f, i, 0, a, b);
        for (int k = 0; k < m; ++k) v -= geo.gamma[i][k](a, b) * df[k];
        out.at(i, a * m + b) = v;
        out.at(i, b * m + a) = v;
      }
  }
  return out;
}

Field laplacian_scalar(const GridGeometry& geo, const Field& f) {
  Field hess = hessian_scalar(geo, f);
  const Grid& grid = *geo.grid;
  const int m = geo.m;
  Field out(grid, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = 0.0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        v += geo.ginv[i](a, b) * hess.at(i, a * m + b);
    out.at(i, 0) = v;
  }
  return out;
}

Field div_symtensor(const GridGeometry& geo, const Field& S) {
  const Grid& grid = *geo.grid;
  const int m = geo.m, rad = geo.stencil.radius();
  Field out(grid, m);
  for (std::size_t node = 0; node < grid.size(); ++node) {
    if (!grid.interior(node, rad)) continue;
    const auto& gam = geo.gamma[node];
    for (int j = 0; j < m; ++j) {
      double v = 0.0;
      for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k) {
          double cov = geo.stencil.d1(S, node, k * m + j, i);
          for (int l = 0; l < m; ++l)
            cov -= gam[l](i, k) * S.at(node, l * m + j) +
                   gam[l](i, j) * S.at(node, k * m + l);
          v += geo.ginv[node](i, k) * cov;
        }
      out.at(node, j) = v;
    }
  }
  return out;
}

double tensor_dot(const GridGeometry& geo, std::size_t node, const Field& A,
                  const Field& B) {
  const int m = geo.m;
  const Mat& gi = geo.ginv[node];
  double s = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          s += gi(i, k) * gi(j, l) * A.at(node, i * m + j) *
               B.at(node, k * m + l);
  return s;
}

double tensor_norm(const GridGeometry& geo, std::size_t node, const Field& A) {
  return std::sqrt(std::max(0.0, tensor_dot(geo, node, A, A)));
}

double Quadrature::integrate(const Field& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    double v = f.at(i, 0);
    if (!std::isfinite(v)) throw nan_error("integrate: NaN in field");
    s += weight[i] * v;
  }
  return s;
}

Quadrature build_quadrature(const GridGeometry& geo, QuadratureRule rule) {
  const Grid& grid = *geo.grid;
  Quadrature q;
  q.grid = &grid;
  q.rule = rule;
  q.weight.resize(grid.size());
  double cell = 1.0;
  for (int a = 0; a < grid.dim(); ++a) cell *= grid.spacing(a);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double w = cell * geo.sqrt_det[i];
    if (rule == QuadratureRule::Trapezoid) {
      auto idx = grid.unindex(i);
      for (int a = 0; a < grid.dim(); ++a)
        if (idx[a] == 0 || idx[a] == grid.nodes(a) - 1) w *= 0.5;
    }
    q.weight[i] = w;
  }
  return q;
}

}  // namespace riemap
