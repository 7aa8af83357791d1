#include "wgstokes/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace wgstokes {

namespace {

double polygon_signed_area(const std::vector<Vec2>& pts) {
  double a = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = pts[i];
    const Vec2& q = pts[(i + 1) % n];
    a += p.cross(q);
  }
  return 0.5 * a;
}

Vec2 polygon_centroid(const std::vector<Vec2>& pts, double area) {
  double cx = 0.0, cy = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = pts[i];
    const Vec2& q = pts[(i + 1) % n];
    const double w = p.cross(q);
    cx += (p.x + q.x) * w;
    cy += (p.y + q.y) * w;
  }
  return {cx / (6.0 * area), cy / (6.0 * area)};
}

}  // namespace

double PolygonalMesh::total_area() const {
  double a = 0.0;
  for (const Element& e : elements) a += e.area;
  return a;
}

PolygonalMesh build_mesh(std::vector<Vec2> points,
                         std::vector<std::vector<Index>> cells) {
  PolygonalMesh mesh;
  mesh.vertices.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    mesh.vertices[i] = Vertex{static_cast<Index>(i), points[i].x, points[i].y};
    if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y))
      throw std::runtime_error("build_mesh: non-finite vertex coordinate");
  }

  mesh.elements.resize(cells.size());

  // Edge identification by sorted vertex pair. Tracks, per edge, which
  // elements traverse it and in which direction.
  struct EdgeRecord {
    Index id;
    Index elems[2] = {kNoElem, kNoElem};
    bool forward[2] = {false, false};  // traversal goes lo -> hi vertex
    int count = 0;
  };
  std::map<std::pair<Index, Index>, EdgeRecord> edge_of;

  for (std::size_t c = 0; c < cells.size(); ++c) {
    Element& elem = mesh.elements[c];
    elem.id = static_cast<Index>(c);
    elem.vertex_loop = cells[c];
    const std::size_t n = elem.vertex_loop.size();
    if (n < 3) throw std::runtime_error("build_mesh: cell with fewer than 3 vertices");

    std::vector<Vec2> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Index v = elem.vertex_loop[i];
      if (v < 0 || v >= mesh.vertex_count())
        throw std::runtime_error("build_mesh: vertex index out of range");
      pts[i] = mesh.vertices[v].pos();
    }
    const double area = polygon_signed_area(pts);
    if (!(area > 0.0))
      throw std::runtime_error("build_mesh: cell " + std::to_string(c) +
                               " has nonpositive signed area (loop must be CCW)");
    elem.area = area;
    elem.centroid = polygon_centroid(pts, area);
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        diam = std::max(diam, (pts[i] - pts[j]).norm());
    elem.diameter = diam;

    for (std::size_t i = 0; i < n; ++i) {
      const Index a = elem.vertex_loop[i];
      const Index b = elem.vertex_loop[(i + 1) % n];
      if (a == b) throw std::runtime_error("build_mesh: zero-length edge in cell loop");
      const std::pair<Index, Index> key{std::min(a, b), std::max(a, b)};
      auto [it, inserted] = edge_of.try_emplace(key);
      EdgeRecord& rec = it->second;
      if (inserted) rec.id = static_cast<Index>(edge_of.size() - 1);
      if (rec.count >= 2)
        throw std::runtime_error("build_mesh: edge shared by more than 2 elements");
      rec.elems[rec.count] = elem.id;
      rec.forward[rec.count] = (a == key.first);
      ++rec.count;
    }
  }

  mesh.edges.resize(edge_of.size());
  for (const auto& [key, rec] : edge_of) {
    Edge& e = mesh.edges[rec.id];
    e.id = rec.id;
    // left_elem = incident element of smaller index
    int left_slot = 0;
    if (rec.count == 2) {
      if (rec.forward[0] == rec.forward[1])
        throw std::runtime_error(
            "build_mesh: interior edge traversed in the same direction by both "
            "elements (inconsistent orientation)");
      if (rec.elems[1] < rec.elems[0]) left_slot = 1;
    }
    e.left_elem = rec.elems[left_slot];
    e.right_elem = rec.count == 2 ? rec.elems[1 - left_slot] : kNoElem;
    e.on_boundary = rec.count == 1;
    // Orient endpoints along left_elem's traversal.
    if (rec.forward[left_slot]) {
      e.v0 = key.first;
      e.v1 = key.second;
    } else {
      e.v0 = key.second;
      e.v1 = key.first;
    }
    const Vec2 p0 = mesh.vertices[e.v0].pos();
    const Vec2 p1 = mesh.vertices[e.v1].pos();
    const Vec2 d = p1 - p0;
    e.length = d.norm();
    if (!(e.length > 0.0)) throw std::runtime_error("build_mesh: degenerate edge");
    e.normal = d.perp_cw() / e.length;
    e.midpoint = (p0 + p1) * 0.5;
    if (e.on_boundary) mesh.boundary_edge_ids.push_back(e.id);
  }
  std::sort(mesh.boundary_edge_ids.begin(), mesh.boundary_edge_ids.end());

  // Fill element edge loops with orientation signs.
  for (Element& elem : mesh.elements) {
    const std::size_t n = elem.vertex_loop.size();
    elem.edge_loop.resize(n);
    elem.edge_sign.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Index a = elem.vertex_loop[i];
      const Index b = elem.vertex_loop[(i + 1) % n];
      const std::pair<Index, Index> key{std::min(a, b), std::max(a, b)};
      const EdgeRecord& rec = edge_of.at(key);
      elem.edge_loop[i] = rec.id;
      const Edge& e = mesh.edges[rec.id];
      elem.edge_sign[i] = (e.v0 == a && e.v1 == b) ? 1 : -1;
    }
  }

  mesh.h = 0.0;
  for (const Element& elem : mesh.elements) mesh.h = std::max(mesh.h, elem.diameter);
  return mesh;
}

PolygonalMesh generate_rectangular(int nx, int ny, const Rect& bounds) {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("generate_rectangular: nx, ny must be >= 1");
  const double dx = bounds.width() / nx;
  const double dy = bounds.height() / ny;
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      pts.push_back({bounds.x0 + i * dx, bounds.y0 + j * dy});

  auto vid = [nx](int i, int j) { return static_cast<Index>(j * (nx + 1) + i); };
  std::vector<std::vector<Index>> cells;
  cells.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)});
  return build_mesh(std::move(pts), std::move(cells));
}

PolygonalMesh generate_triangular(int n, const Rect& bounds) {
  if (n < 1) throw std::invalid_argument("generate_triangular: n must be >= 1");
  const double dx = bounds.width() / n;
  const double dy = bounds.height() / n;
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) pts.push_back({bounds.x0 + i * dx, bounds.y0 + j * dy});

  auto vid = [n](int i, int j) { return static_cast<Index>(j * (n + 1) + i); };
  std::vector<std::vector<Index>> cells;
  cells.reserve(2u * n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // Both triangles use the same lower-left to upper-right diagonal.
      cells.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      cells.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  return build_mesh(std::move(pts), std::move(cells));
}

namespace {

// Clips a convex polygon against the half-plane n.(x - p) <= 0.
std::vector<Vec2> clip_halfplane(const std::vector<Vec2>& poly, const Vec2& p,
                                 const Vec2& n) {
  std::vector<Vec2> out;
  const std::size_t m = poly.size();
  out.reserve(m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    const double da = n.dot(a - p);
    const double db = n.dot(b - p);
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const double t = da / (da - db);
      out.push_back(a + (b - a) * t);
    }
  }
  return out;
}

/// Merges coincident vertices of the cell soup into a shared vertex list.
class VertexMerger {
 public:
  explicit VertexMerger(double tol) : tol_(tol) {}

  Index insert(const Vec2& p) {
    const long long ix = llround(p.x / tol_);
    const long long iy = llround(p.y / tol_);
    for (long long dx = -1; dx <= 1; ++dx) {
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find(key(ix + dx, iy + dy));
        if (it == grid_.end()) continue;
        for (Index v : it->second)
          if ((points_[v] - p).norm() <= 2.0 * tol_) return v;
      }
    }
    const Index v = static_cast<Index>(points_.size());
    points_.push_back(p);
    grid_[key(ix, iy)].push_back(v);
    return v;
  }

  std::vector<Vec2> take_points() { return std::move(points_); }

 private:
  static std::uint64_t key(long long ix, long long iy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) ^
           static_cast<std::uint32_t>(iy);
  }
  double tol_;
  std::vector<Vec2> points_;
  std::unordered_map<std::uint64_t, std::vector<Index>> grid_;
};

}  // namespace

PolygonalMesh voronoi_mesh(const std::vector<Vec2>& seeds, const Rect& bounds) {
  const std::size_t n = seeds.size();
  if (n < 1) throw std::invalid_argument("voronoi_mesh: need at least one seed");
  const double scale = std::max(bounds.width(), bounds.height());
  const double tol = 1e-9 * scale;

  const std::vector<Vec2> box = {{bounds.x0, bounds.y0},
                                 {bounds.x1, bounds.y0},
                                 {bounds.x1, bounds.y1},
                                 {bounds.x0, bounds.y1}};

  VertexMerger merger(tol);
  std::vector<std::vector<Index>> cells(n);

  // Per seed: clip the box by the nearest bisectors first; once the cell lies
  // entirely closer than half the distance to the next seed, no farther seed
  // can cut it.
  std::vector<std::pair<double, std::size_t>> by_dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      by_dist[j] = {(seeds[j] - seeds[i]).squared_norm(), j};
    std::sort(by_dist.begin(), by_dist.end());

    std::vector<Vec2> cell = box;
    for (std::size_t r = 1; r < n && !cell.empty(); ++r) {
      const double dist = std::sqrt(by_dist[r].first);
      double max_sq = 0.0;
      for (const Vec2& v : cell) max_sq = std::max(max_sq, (v - seeds[i]).squared_norm());
      if (std::sqrt(max_sq) <= 0.5 * dist) break;
      const Vec2& s = seeds[by_dist[r].second];
      cell = clip_halfplane(cell, (seeds[i] + s) * 0.5, s - seeds[i]);
    }
    if (cell.size() < 3)
      throw std::runtime_error("voronoi_mesh: seed " + std::to_string(i) +
                               " produced an empty cell");

    // Drop near-duplicate consecutive vertices (degenerate edges).
    std::vector<Vec2> cleaned;
    for (const Vec2& v : cell) {
      if (cleaned.empty() || (v - cleaned.back()).norm() > tol) cleaned.push_back(v);
    }
    if (cleaned.size() > 1 && (cleaned.front() - cleaned.back()).norm() <= tol)
      cleaned.pop_back();
    if (cleaned.size() < 3)
      throw std::runtime_error("voronoi_mesh: degenerate cell for seed " +
                               std::to_string(i));

    for (const Vec2& v : cleaned) cells[i].push_back(merger.insert(v));
    // Merging may identify consecutive loop vertices; reject those cells.
    for (std::size_t a = 0; a < cells[i].size(); ++a)
      if (cells[i][a] == cells[i][(a + 1) % cells[i].size()])
        throw std::runtime_error("voronoi_mesh: degenerate edge after merging, seed " +
                                 std::to_string(i));
  }

  PolygonalMesh mesh = build_mesh(merger.take_points(), std::move(cells));
  const double covered = mesh.total_area();
  if (std::abs(covered - bounds.area()) > 1e-10 * bounds.area())
    throw std::runtime_error("voronoi_mesh: cells do not tile the domain");
  return mesh;
}

PolygonalMesh generate_polygonal_voronoi(int seed_count, const Rect& bounds,
                                         unsigned rng_seed) {
  if (seed_count < 4)
    throw std::invalid_argument("generate_polygonal_voronoi: seed_count must be >= 4");
  const int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(seed_count))));
  const double dx = bounds.width() / m;
  const double dy = bounds.height() / m;

  std::string last_error;
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::mt19937 rng(rng_seed + 7919u * static_cast<unsigned>(attempt));
    std::uniform_real_distribution<double> jitter(-0.35, 0.35);
    std::vector<Vec2> seeds;
    seeds.reserve(static_cast<std::size_t>(seed_count));
    for (int j = 0; j < m && static_cast<int>(seeds.size()) < seed_count; ++j) {
      for (int i = 0; i < m && static_cast<int>(seeds.size()) < seed_count; ++i) {
        seeds.push_back({bounds.x0 + (i + 0.5 + jitter(rng)) * dx,
                         bounds.y0 + (j + 0.5 + jitter(rng)) * dy});
      }
    }
    try {
      return voronoi_mesh(seeds, bounds);
    } catch (const std::exception& e) {
      last_error = e.what();
    }
  }
  throw std::runtime_error(
      "generate_polygonal_voronoi: no valid mesh after 10 attempts; last error: " +
      last_error);
}

bool element_is_star_shaped(const PolygonalMesh& mesh, const Element& elem) {
  const std::size_t n = elem.vertex_loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = mesh.vertices[elem.vertex_loop[i]].pos() - elem.centroid;
    const Vec2 b = mesh.vertices[elem.vertex_loop[(i + 1) % n]].pos() - elem.centroid;
    if (a.cross(b) <= 1e-14 * elem.diameter * elem.diameter) return false;
  }
  return true;
}

ShapeRegularityReport check_shape_regularity(const PolygonalMesh& mesh) {
  ShapeRegularityReport report;
  report.min_edge_to_diameter = std::numeric_limits<double>::infinity();
  report.max_aspect_ratio = 0.0;
  report.star_shaped = true;
  for (const Element& elem : mesh.elements) {
    for (Index eid : elem.edge_loop)
      report.min_edge_to_diameter =
          std::min(report.min_edge_to_diameter, mesh.edges[eid].length / elem.diameter);
    report.max_aspect_ratio =
        std::max(report.max_aspect_ratio, elem.diameter * elem.diameter / (2.0 * elem.area));
    if (!element_is_star_shaped(mesh, elem)) report.star_shaped = false;
  }
  return report;
}

void write_wgmesh(const PolygonalMesh& mesh, std::ostream& out) {
  out << "wgmesh 2d\n" << mesh.vertex_count() << "\n";
  out.precision(17);
  for (const Vertex& v : mesh.vertices) out << v.x << " " << v.y << "\n";
  out << mesh.element_count() << "\n";
  for (const Element& e : mesh.elements) {
    out << e.vertex_loop.size();
    for (Index v : e.vertex_loop) out << " " << v;
    out << "\n";
  }
}

void write_wgmesh(const PolygonalMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_wgmesh: cannot open " + path);
  write_wgmesh(mesh, out);
}

PolygonalMesh read_wgmesh(std::istream& in) {
  std::string word, dim;
  in >> word >> dim;
  if (word != "wgmesh" || dim != "2d")
    throw std::runtime_error("read_wgmesh: bad header (expected 'wgmesh 2d')");
  std::size_t nv = 0;
  in >> nv;
  std::vector<Vec2> pts(nv);
  for (auto& p : pts) in >> p.x >> p.y;
  std::size_t ne = 0;
  in >> ne;
  std::vector<std::vector<Index>> cells(ne);
  for (auto& cell : cells) {
    std::size_t n = 0;
    in >> n;
    cell.resize(n);
    for (auto& v : cell) in >> v;
  }
  if (!in) throw std::runtime_error("read_wgmesh: truncated or malformed file");
  return build_mesh(std::move(pts), std::move(cells));
}

PolygonalMesh read_wgmesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_wgmesh: cannot open " + path);
  return read_wgmesh(in);
}

}  // namespace wgstokes
