#include "riemap/manifold.hpp"

#include <cmath>

#include "riemap/rng.hpp"

namespace riemap {

ChartManifold::ChartManifold(std::string name, int dim, Box domain,
                             MetricFn metric, double fd_step)
    : name_(std::move(name)), dim_(dim), domain_(std::move(domain)),
      metric_(std::move(metric)), fd_step_(fd_step) {}

void ChartManifold::set_analytic_derivs(Deriv1Fn d1, Deriv2Fn d2) {
  d1_ = std::move(d1);
  d2_ = std::move(d2);
}

Mat ChartManifold::metric(const std::vector<double>& x) const {
  Mat g = metric_(x);
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + g.cwiseAbs().maxCoeff()))
    throw degenerate_metric_error(name_ + ": metric not symmetric");
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success)
    throw degenerate_metric_error(name_ + ": metric not positive definite");
  return g;
}

Mat ChartManifold::metric_inverse(const std::vector<double>& x) const {
  Mat g = metric(x);
  return g.inverse();
}

MetricDeriv1 ChartManifold::metric_d1(const std::vector<double>& x) const {
  if (d1_) return d1_(x);
  MetricDeriv1 dg(dim_);
  std::vector<double> xp = x, xm = x;
  for (int k = 0; k < dim_; ++k) {
    xp[k] = x[k] + fd_step_;
    xm[k] = x[k] - fd_step_;
    dg[k] = (metric_(xp) - metric_(xm)) / (2.0 * fd_step_);
    xp[k] = x[k];
    xm[k] = x[k];
  }
  return dg;
}

MetricDeriv2 ChartManifold::metric_d2(const std::vector<double>& x) const {
  if (d2_) return d2_(x);
  MetricDeriv2 d2(dim_, std::vector<Mat>(dim_));
  const double h = fd_step_;
  std::vector<double> xt = x;
  Mat g0 = metric_(x);
  for (int k = 0; k < dim_; ++k) {
    xt[k] = x[k] + h;
    Mat gp = metric_(xt);
    xt[k] = x[k] - h;
    Mat gm = metric_(xt);
    xt[k] = x[k];
    d2[k][k] = (gp - 2.0 * g0 + gm) / (h * h);
    for (int l = k + 1; l < dim_; ++l) {
      xt[k] = x[k] + h; xt[l] = x[l] + h;
      Mat gpp = metric_(xt);
      xt[l] = x[l] - h;
      Mat gpm = metric_(xt);
      xt[k] = x[k] - h; xt[l] = x[l] + h;
      Mat gmp = metric_(xt);
      xt[l] = x[l] - h;
      Mat gmm = metric_(xt);
      xt[k] = x[k]; xt[l] = x[l];
      d2[k][l] = (gpp - gpm - gmp + gmm) / (4.0 * h * h);
      d2[l][k] = d2[k][l];
    }
  }
  return d2;
}

double ChartManifold::derivative_consistency(int probes, unsigned seed) const {
  if (!d1_) return 0.0;
  Rng rng(seed);
  double worst = 0.0;
  const double pad = 0.05 * domain_.extent(0) + 4 * fd_step_;
  for (int t = 0; t < probes; ++t) {
    std::vector<double> x(dim_);
    for (int a = 0; a < dim_; ++a)
      x[a] = rng.uniform(domain_.lo[a] + pad, domain_.hi[a] - pad);
    auto ana = d1_(x);
    // FD of the raw metric callback.
    std::vector<double> xp = x, xm = x;
    for (int k = 0; k < dim_; ++k) {
      xp[k] = x[k] + fd_step_;
      xm[k] = x[k] - fd_step_;
      Mat fd = (metric_(xp) - metric_(xm)) / (2.0 * fd_step_);
      worst = std::max(worst, (ana[k] - fd).cwiseAbs().maxCoeff());
      xp[k] = x[k];
      xm[k] = x[k];
    }
    if (d2_) {
      auto ana2 = d2_(x);
      for (int k = 0; k < dim_; ++k) {
        xp[k] = x[k] + fd_step_;
        xm[k] = x[k] - fd_step_;
        Mat fd = (d1_(xp)[k] - d1_(xm)[k]) / (2.0 * fd_step_);
        worst = std::max(worst, (ana2[k][k] - fd).cwiseAbs().maxCoeff());
        xp[k] = x[k];
        xm[k] = x[k];
      }
    }
  }
  return worst;
}

ChartManifold make_euclidean(int dim, Box domain) {
  ChartManifold m("euclidean", dim, std::move(domain),
                  [dim](const std::vector<double>&) {
                    return Mat(Mat::Identity(dim, dim));
                  });
  m.set_analytic_derivs(
      [dim](const std::vector<double>&) {
        return MetricDeriv1(dim, Mat(Mat::Zero(dim, dim)));
      },
      [dim](const std::vector<double>&) {
        return MetricDeriv2(dim,
                            std::vector<Mat>(dim, Mat(Mat::Zero(dim, dim))));
      });
  m.set_scalar_curvature_fn([](const std::vector<double>&) { return 0.0; });
  return m;
}

ChartManifold make_conformal2d(std::string name, Box domain, ConformalData cd) {
  auto u = cd.u;
  auto du = cd.du;
  auto d2u = cd.d2u;
  ChartManifold m(std::move(name), 2, std::move(domain),
                  [u](const std::vector<double>& x) {
                    double f = std::exp(2.0 * u(x[0], x[1]));
                    Mat g(2, 2);
                    g << f, 0.0, 0.0, f;
                    return g;
                  });
  m.set_analytic_derivs(
      [u, du](const std::vector<double>& x) {
        double f = std::exp(2.0 * u(x[0], x[1]));
        Eigen::Vector2d g1 = du(x[0], x[1]);
        MetricDeriv1 dg(2);
        for (int k = 0; k < 2; ++k) {
          Mat d(2, 2);
          double c = 2.0 * g1[k] * f;
          d << c, 0.0, 0.0, c;
          dg[k] = d;
        }
        return dg;
      },
      [u, du, d2u](const std::vector<double>& x) {
        double f = std::exp(2.0 * u(x[0], x[1]));
        Eigen::Vector2d g1 = du(x[0], x[1]);
        Eigen::Matrix2d g2 = d2u(x[0], x[1]);
        MetricDeriv2 d2(2, std::vector<Mat>(2));
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            double c = (2.0 * g2(k, l) + 4.0 * g1[k] * g1[l]) * f;
            Mat d(2, 2);
            d << c, 0.0, 0.0, c;
            d2[k][l] = d;
          }
        return d2;
      });
  // Scal = -2 exp(-2u) (Laplacian of u) for a 2-D conformal metric.
  m.set_scalar_curvature_fn([u, d2u](const std::vector<double>& x) {
    Eigen::Matrix2d g2 = d2u(x[0], x[1]);
    return -2.0 * std::exp(-2.0 * u(x[0], x[1])) * (g2(0, 0) + g2(1, 1));
  });
  return m;
}

static ChartManifold make_cigar_on(Box b) {
  ConformalData cd;
  cd.u = [](double x, double y) { return -0.5 * std::log(1.0 + x * x + y * y); };
  cd.du = [](double x, double y) {
    double q = 1.0 + x * x + y * y;
    return Eigen::Vector2d(-x / q, -y / q);
  };
  cd.d2u = [](double x, double y) {
    double q = 1.0 + x * x + y * y;
    Eigen::Matrix2d h;
    h(0, 0) = -1.0 / q + 2.0 * x * x / (q * q);
    h(1, 1) = -1.0 / q + 2.0 * y * y / (q * q);
    h(0, 1) = h(1, 0) = 2.0 * x * y / (q * q);
    return h;
  };
  return make_conformal2d("cigar", std::move(b), std::move(cd));
}

ChartManifold make_cigar_manifold(double half_width) {
  return make_cigar_on(Box{{-half_width, -half_width}, {half_width, half_width}});
}

ChartManifold make_hyperbolic_disk(double chart_radius) {
  if (chart_radius * std::sqrt(2.0) >= 0.995)
    throw config_error("hyperbolic chart box must stay inside the unit disk");
  Box b{{-chart_radius, -chart_radius}, {chart_radius, chart_radius}};
  ConformalData cd;
  cd.u = [](double x, double y) {
    return std::log(2.0) - std::log(1.0 - x * x - y * y);
  };
  cd.du = [](double x, double y) {
    double q = 1.0 - x * x - y * y;
    return Eigen::Vector2d(2.0 * x / q, 2.0 * y / q);
  };
  cd.d2u = [](double x, double y) {
    double q = 1.0 - x * x - y * y;
    Eigen::Matrix2d h;
    h(0, 0) = 2.0 / q + 4.0 * x * x / (q * q);
    h(1, 1) = 2.0 / q + 4.0 * y * y / (q * q);
    h(0, 1) = h(1, 0) = 4.0 * x * y / (q * q);
    return h;
  };
  return make_conformal2d("hyperbolic", b, std::move(cd));
}

ChartManifold make_sphere_polar(double radius) {
  // Chart (theta, phi), metric diag(r^2, r^2 sin^2 theta); domain stays away
  // from the poles.
  Box b{{0.3, -3.0}, {M_PI - 0.3, 3.0}};
  const double r2 = radius * radius;
  ChartManifold m("sphere", 2, b, [r2](const std::vector<double>& y) {
    double s = std::sin(y[0]);
    Mat g(2, 2);
    g << r2, 0.0, 0.0, r2 * s * s;
    return g;
  });
  m.set_analytic_derivs(
      [r2](const std::vector<double>& y) {
        MetricDeriv1 dg(2, Mat(Mat::Zero(2, 2)));
        dg[0](1, 1) = r2 * std::sin(2.0 * y[0]);
        return dg;
      },
      [r2](const std::vector<double>& y) {
        MetricDeriv2 d2(2, std::vector<Mat>(2, Mat(Mat::Zero(2, 2))));
        d2[0][0](1, 1) = 2.0 * r2 * std::cos(2.0 * y[0]);
        return d2;
      });
  m.set_scalar_curvature_fn(
      [r2](const std::vector<double>&) { return 2.0 / r2; });
  return m;
}

ChartManifold manifold_preset(const std::string& name, double param,
                              const Box* domain_override) {
  if (name == "euclidean") {
    Box b = domain_override ? *domain_override : Box{{0.0, 0.0}, {1.0, 1.0}};
    return make_euclidean(b.dim(), b);
  }
  if (name == "cigar") {
    if (domain_override) return make_cigar_on(*domain_override);
    return make_cigar_manifold(param > 0 ? param : 4.0);
  }
  if (name == "sphere") return make_sphere_polar(param > 0 ? param : 1.0);
  if (name == "hyperbolic")
    return make_hyperbolic_disk(param > 0 ? param : 0.7);
  throw config_error("unknown manifold preset: " + name);
}

}  // namespace riemap
