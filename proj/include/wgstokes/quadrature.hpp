// Quadrature rules on polygonal elements (fan triangulation from the
// centroid) and on edges (Gauss-Legendre).

#pragma once

#include <vector>

#include "wgstokes/geometry.hpp"
#include "wgstokes/mesh.hpp"

namespace wgstokes {

struct QuadratureRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
  int exactness = 0;

  std::size_t size() const { return points.size(); }
  double total_weight() const;
};

/// 1D rule mapped onto an edge. `t` is the reference coordinate in [-1, 1]
/// measured along the stored edge direction v0 -> v1; weights carry the
/// physical arc-length measure.
struct EdgeQuadrature {
  std::vector<double> t;
  std::vector<Vec2> points;
  std::vector<double> weights;
  int exactness = 0;

  std::size_t size() const { return t.size(); }
};

/// Gauss-Legendre nodes/weights on [-1, 1], exact for degree 2n-1.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Fan-triangulates the element from its centroid and places a collapsed
/// Gauss rule of the requested exactness on each triangle. The element must
/// be star-shaped with respect to its centroid.
QuadratureRule element_quadrature(const PolygonalMesh& mesh, const Element& elem,
                                  int exactness);

/// Rule of the requested exactness on an arbitrary triangle (a, b, c).
QuadratureRule triangle_quadrature(const Vec2& a, const Vec2& b, const Vec2& c,
                                   int exactness);

EdgeQuadrature edge_quadrature(const PolygonalMesh& mesh, const Edge& edge,
                               int exactness);
EdgeQuadrature segment_quadrature(const Vec2& p0, const Vec2& p1, int exactness);

}  // namespace wgstokes
