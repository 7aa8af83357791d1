#include "wgstokes/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wgstokes {

double QuadratureRule::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double eps = 1e-15;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence up to degree n.
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < eps) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

QuadratureRule triangle_quadrature(const Vec2& a, const Vec2& b, const Vec2& c,
                                   int exactness) {
  if (exactness < 0) exactness = 0;
  // Collapsed-square Gauss rule: xi = u, eta = v(1-u), Jacobian (1-u).
  // A degree-d integrand becomes degree d+1 in u and d in v.
  const int nu = (exactness + 3) / 2;
  const int nv = (exactness + 2) / 2;
  std::vector<double> xu, wu, xv, wv;
  gauss_legendre(nu, xu, wu);
  gauss_legendre(nv, xv, wv);

  const Vec2 e1 = b - a;
  const Vec2 e2 = c - a;
  const double det = e1.cross(e2);  // = 2 * area for CCW (a,b,c)

  QuadratureRule rule;
  rule.exactness = exactness;
  rule.points.reserve(static_cast<std::size_t>(nu) * nv);
  rule.weights.reserve(static_cast<std::size_t>(nu) * nv);
  for (int i = 0; i < nu; ++i) {
    const double u = 0.5 * (xu[i] + 1.0);
    for (int j = 0; j < nv; ++j) {
      const double v = 0.5 * (xv[j] + 1.0);
      const double xi = u;
      const double eta = v * (1.0 - u);
      rule.points.push_back(a + e1 * xi + e2 * eta);
      rule.weights.push_back(0.25 * wu[i] * wv[j] * (1.0 - u) * det);
    }
  }
  return rule;
}

QuadratureRule element_quadrature(const PolygonalMesh& mesh, const Element& elem,
                                  int exactness) {
  if (!element_is_star_shaped(mesh, elem))
    throw std::runtime_error("element_quadrature: element " + std::to_string(elem.id) +
                             " is not star-shaped w.r.t. its centroid");
  QuadratureRule rule;
  rule.exactness = exactness;
  const std::size_t n = elem.vertex_loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = mesh.vertices[elem.vertex_loop[i]].pos();
    const Vec2 b = mesh.vertices[elem.vertex_loop[(i + 1) % n]].pos();
    QuadratureRule tri = triangle_quadrature(elem.centroid, a, b, exactness);
    rule.points.insert(rule.points.end(), tri.points.begin(), tri.points.end());
    rule.weights.insert(rule.weights.end(), tri.weights.begin(), tri.weights.end());
  }
  return rule;
}

EdgeQuadrature segment_quadrature(const Vec2& p0, const Vec2& p1, int exactness) {
  if (exactness < 0) exactness = 0;
  const int n = (exactness + 2) / 2;  // 2n-1 >= exactness
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  EdgeQuadrature rule;
  rule.exactness = exactness;
  rule.t = x;
  const Vec2 mid = (p0 + p1) * 0.5;
  const Vec2 half = (p1 - p0) * 0.5;
  const double half_len = half.norm();
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.points[i] = mid + half * x[i];
    rule.weights[i] = w[i] * half_len;
  }
  return rule;
}

EdgeQuadrature edge_quadrature(const PolygonalMesh& mesh, const Edge& edge,
                               int exactness) {
  return segment_quadrature(mesh.vertices[edge.v0].pos(), mesh.vertices[edge.v1].pos(),
                            exactness);
}

}  // namespace wgstokes
