// Convergence studies: assemble/solve/measure over a refinement sequence.

#pragma once

#include "wgstokes/errors.hpp"
#include "wgstokes/problems.hpp"

namespace wgstokes {

enum class MeshFamily { triangular, rectangular, voronoi };

MeshFamily mesh_family_from_string(const std::string& s);
std::string to_string(MeshFamily family);

/// Mesh of resolution n for the family (n x n cells; n^2 Voronoi seeds).
PolygonalMesh make_family_mesh(MeshFamily family, int n, const Rect& bounds,
                               unsigned rng_seed);

struct StudyOptions {
  SolveOptions solve;
  ParallelPolicy policy = ParallelPolicy::openmp;
  unsigned rng_seed = 1;
  double viscosity = 1.0;
};

/// Requires a problem with an exact solution and strictly increasing levels.
/// Orders are reported between consecutive rows whose mesh size halves.
ConvergenceTable convergence_study(const StokesProblem& problem, int k,
                                   const std::vector<int>& levels, MeshFamily family,
                                   const StudyOptions& options = {});

}  // namespace wgstokes
