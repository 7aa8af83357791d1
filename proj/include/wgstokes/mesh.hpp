// Polygonal mesh representation, structured generators, topology
// construction and shape-regularity diagnostics.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wgstokes/geometry.hpp"

namespace wgstokes {

using Index = std::int32_t;
constexpr Index kNoElem = -1;

struct Vertex {
  Index id = 0;
  double x = 0.0;
  double y = 0.0;

  Vec2 pos() const { return {x, y}; }
};

/// Mesh edge. Endpoints are ordered so that `left_elem` traverses the edge
/// v0 -> v1 in its counterclockwise loop; `normal` then points out of
/// left_elem (toward right_elem for interior edges). left_elem is always the
/// incident element of smaller index.
struct Edge {
  Index id = 0;
  Index v0 = 0;
  Index v1 = 0;
  Index left_elem = kNoElem;
  Index right_elem = kNoElem;  // kNoElem on the boundary
  Vec2 normal;                 // unit, outward from left_elem
  double length = 0.0;
  Vec2 midpoint;
  bool on_boundary = false;
};

/// Polygonal element with counterclockwise vertex loop. edge_loop[i] joins
/// vertex_loop[i] to vertex_loop[i+1]; edge_sign[i] is +1 when that
/// traversal matches the stored edge orientation v0 -> v1.
struct Element {
  Index id = 0;
  std::vector<Index> vertex_loop;
  std::vector<Index> edge_loop;
  std::vector<int> edge_sign;
  Vec2 centroid;
  double area = 0.0;
  double diameter = 0.0;  // max pairwise vertex distance

  int edge_count() const { return static_cast<int>(edge_loop.size()); }
};

class PolygonalMesh {
 public:
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Element> elements;
  std::vector<Index> boundary_edge_ids;
  double h = 0.0;  // max element diameter

  Index vertex_count() const { return static_cast<Index>(vertices.size()); }
  Index edge_count() const { return static_cast<Index>(edges.size()); }
  Index element_count() const { return static_cast<Index>(elements.size()); }

  /// Outward unit normal of element `elem` on its local edge `le`.
  Vec2 outward_normal(const Element& elem, int le) const {
    const Edge& e = edges[elem.edge_loop[le]];
    return elem.edge_sign[le] > 0 ? e.normal : Vec2{-e.normal.x, -e.normal.y};
  }

  double total_area() const;
};

/// Builds edges, adjacency, orientation signs and per-element geometry from
/// vertex positions and CCW cell loops. Throws on non-manifold input or
/// cells with nonpositive signed area.
PolygonalMesh build_mesh(std::vector<Vec2> points,
                         std::vector<std::vector<Index>> cells);

PolygonalMesh generate_rectangular(int nx, int ny, const Rect& bounds);

/// n x n squares, each split along the lower-left to upper-right diagonal.
PolygonalMesh generate_triangular(int n, const Rect& bounds);

/// Clipped Voronoi diagram of explicitly given seed points.
PolygonalMesh voronoi_mesh(const std::vector<Vec2>& seeds, const Rect& bounds);

/// Voronoi mesh of quasi-uniform (jittered-grid) seeds. Retries with freshly
/// perturbed seeds if a degenerate cell appears; throws after 10 attempts.
PolygonalMesh generate_polygonal_voronoi(int seed_count, const Rect& bounds,
                                         unsigned rng_seed);

struct ShapeRegularityReport {
  double min_edge_to_diameter = 0.0;  // min over elements of (shortest edge / h_T)
  double max_aspect_ratio = 0.0;      // max over elements of h_T^2 / (2 area)
  bool star_shaped = false;           // all elements star-shaped w.r.t. centroid
};

ShapeRegularityReport check_shape_regularity(const PolygonalMesh& mesh);

/// True when every triangle (centroid, v_i, v_{i+1}) has positive area.
bool element_is_star_shaped(const PolygonalMesh& mesh, const Element& elem);

// ASCII mesh format: header "wgmesh 2d", vertex count, "x y" lines, element
// count, "n v0 ... v(n-1)" lines (0-based, counterclockwise). Topology is
// rebuilt on import.
void write_wgmesh(const PolygonalMesh& mesh, std::ostream& out);
void write_wgmesh(const PolygonalMesh& mesh, const std::string& path);
PolygonalMesh read_wgmesh(std::istream& in);
PolygonalMesh read_wgmesh(const std::string& path);

}  // namespace wgstokes
