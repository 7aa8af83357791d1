#include "wgstokes/vtk_io.hpp"

#include <fstream>
#include <stdexcept>

namespace wgstokes {

CellFields cell_averages(const PolygonalMesh& mesh, const std::vector<ElementOps>& ops,
                         const StokesSolution& solution) {
  const int k = solution.u.k;
  const VelocityLayout vlayout(mesh, k);
  const PressureLayout playout(mesh, k);
  const int nk = poly_space_dim(k);
  const int nkm1 = poly_space_dim(k - 1);

  CellFields fields;
  fields.centroids.resize(mesh.element_count());
  fields.velocity.resize(mesh.element_count());
  fields.pressure.resize(mesh.element_count());
  for (const Element& elem : mesh.elements) {
    const ElementOps& eo = ops[elem.id];
    const auto u = solution.u.coeffs.segment(vlayout.element_offset(elem.id), 2 * nk);
    const auto p = solution.p.coeffs.segment(playout.element_offset(elem.id), nkm1);
    fields.centroids[elem.id] = elem.centroid;
    fields.velocity[elem.id] = {eo.interior_integrals_k.dot(u.head(nk)) / elem.area,
                                eo.interior_integrals_k.dot(u.tail(nk)) / elem.area};
    fields.pressure[elem.id] = eo.interior_integrals_km1.dot(p) / elem.area;
  }
  return fields;
}

std::vector<std::string> export_fields(const PolygonalMesh& mesh,
                                       const std::vector<ElementOps>& ops,
                                       const StokesSolution& solution,
                                       const std::string& base_path) {
  const CellFields fields = cell_averages(mesh, ops, solution);

  const std::string vtk_path = base_path + ".vtk";
  std::ofstream vtk(vtk_path);
  if (!vtk) throw std::runtime_error("export_fields: cannot open " + vtk_path);
  vtk.precision(12);
  vtk << "# vtk DataFile Version 3.0\n"
      << "wgstokes cell fields\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  vtk << "POINTS " << mesh.vertex_count() << " double\n";
  for (const Vertex& v : mesh.vertices) vtk << v.x << " " << v.y << " 0\n";
  std::size_t list_size = 0;
  for (const Element& e : mesh.elements) list_size += e.vertex_loop.size() + 1;
  vtk << "CELLS " << mesh.element_count() << " " << list_size << "\n";
  for (const Element& e : mesh.elements) {
    vtk << e.vertex_loop.size();
    for (Index v : e.vertex_loop) vtk << " " << v;
    vtk << "\n";
  }
  vtk << "CELL_TYPES " << mesh.element_count() << "\n";
  for (Index i = 0; i < mesh.element_count(); ++i) vtk << "7\n";  // VTK_POLYGON
  vtk << "CELL_DATA " << mesh.element_count() << "\n";
  vtk << "VECTORS velocity double\n";
  for (const Vec2& u : fields.velocity) vtk << u.x << " " << u.y << " 0\n";
  vtk << "SCALARS pressure double 1\n"
      << "LOOKUP_TABLE default\n";
  for (double p : fields.pressure) vtk << p << "\n";
  vtk.close();

  const std::string csv_path = base_path + ".csv";
  std::ofstream csv(csv_path);
  if (!csv) throw std::runtime_error("export_fields: cannot open " + csv_path);
  csv.precision(12);
  csv << "x,y,u1,u2,p\n";
  for (Index i = 0; i < mesh.element_count(); ++i) {
    csv << fields.centroids[i].x << "," << fields.centroids[i].y << ","
        << fields.velocity[i].x << "," << fields.velocity[i].y << ","
        << fields.pressure[i] << "\n";
  }
  return {vtk_path, csv_path};
}

VtkData read_vtk_fields(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_vtk_fields: cannot open " + path);
  VtkData data;
  std::string token;
  std::size_t n_cells = 0;
  while (in >> token) {
    if (token == "POINTS") {
      std::size_t n = 0;
      in >> n >> token;  // count, type
      data.points.resize(n);
      double z;
      for (auto& p : data.points) in >> p.x >> p.y >> z;
    } else if (token == "CELLS") {
      std::size_t total = 0;
      in >> n_cells >> total;
      data.cells.resize(n_cells);
      for (auto& cell : data.cells) {
        std::size_t m = 0;
        in >> m;
        cell.resize(m);
        for (auto& v : cell) in >> v;
      }
    } else if (token == "VECTORS") {
      std::string name, type;
      in >> name >> type;
      data.velocity.resize(n_cells);
      double z;
      for (auto& u : data.velocity) in >> u.x >> u.y >> z;
    } else if (token == "SCALARS") {
      std::string name, type;
      int comps;
      in >> name >> type >> comps;
      in >> token >> token;  // LOOKUP_TABLE default
      data.pressure.resize(n_cells);
      for (auto& p : data.pressure) in >> p;
    }
  }
  if (data.points.empty() || data.cells.empty())
    throw std::runtime_error("read_vtk_fields: no grid found in " + path);
  return data;
}

}  // namespace wgstokes
