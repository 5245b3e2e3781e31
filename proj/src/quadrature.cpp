#include "chimhd/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace chimhd {

namespace {

// Gauss-Legendre on [-1,1] via Newton iteration on the recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    x[i] = t;
    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

}  // namespace

QuadratureRule centroid_rule() {
  QuadratureRule r;
  r.degree = 1;
  r.points = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}};
  r.weights = {0.5};
  return r;
}

QuadratureRule duffy_rule(int n) {
  if (n < 2) throw std::invalid_argument("duffy_rule: need n >= 2");
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  QuadratureRule r;
  r.degree = 2 * n - 2;
  r.points.reserve(n * n);
  r.weights.reserve(n * n);
  // Map [0,1]^2 -> triangle by (u,v) -> (u, v(1-u)), Jacobian (1-u).
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (gx[i] + 1.0);
    const double wu = 0.5 * gw[i];
    for (int j = 0; j < n; ++j) {
      const double v = 0.5 * (gx[j] + 1.0);
      const double wv = 0.5 * gw[j];
      const double px = u;
      const double py = v * (1.0 - u);
      r.points.push_back({1.0 - px - py, px, py});
      r.weights.push_back(wu * wv * (1.0 - u));
    }
  }
  return r;
}

QuadratureRule default_volume_rule() { return duffy_rule(4); }

SegmentRule segment_rule(int n) {
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  SegmentRule r;
  r.points.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    r.points[i] = 0.5 * (gx[i] + 1.0);
    r.weights[i] = 0.5 * gw[i];
  }
  return r;
}

}  // namespace chimhd
