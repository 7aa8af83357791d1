// Legacy-ASCII VTK export of cell-averaged solution fields, a matching
// minimal reader, and a CSV of centroid values for external plotting.

#pragma once

#include <string>
#include <vector>

#include "wgstokes/system.hpp"

namespace wgstokes {

struct CellFields {
  std::vector<Vec2> centroids;
  std::vector<Vec2> velocity;    // cell average of u_0
  std::vector<double> pressure;  // cell average of p_0
};

CellFields cell_averages(const PolygonalMesh& mesh, const std::vector<ElementOps>& ops,
                         const StokesSolution& solution);

/// Writes `<base>.vtk` (DATASET UNSTRUCTURED_GRID with polygon cells and
/// CELL_DATA velocity/pressure) and `<base>.csv` (x,y,u1,u2,p per cell).
/// Returns the two paths written.
std::vector<std::string> export_fields(const PolygonalMesh& mesh,
                                       const std::vector<ElementOps>& ops,
                                       const StokesSolution& solution,
                                       const std::string& base_path);

struct VtkData {
  std::vector<Vec2> points;
  std::vector<std::vector<Index>> cells;
  std::vector<Vec2> velocity;
  std::vector<double> pressure;
};

/// Parses files produced by export_fields.
VtkData read_vtk_fields(const std::string& path);

}  // namespace wgstokes
