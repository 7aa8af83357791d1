#include "wgstokes/study.hpp"

#include <stdexcept>

namespace wgstokes {

MeshFamily mesh_family_from_string(const std::string& s) {
  if (s == "triangular") return MeshFamily::triangular;
  if (s == "rectangular") return MeshFamily::rectangular;
  if (s == "voronoi") return MeshFamily::voronoi;
  throw std::invalid_argument(
      "mesh family must be triangular, rectangular or voronoi (got '" + s + "')");
}

std::string to_string(MeshFamily family) {
  switch (family) {
    case MeshFamily::triangular: return "triangular";
    case MeshFamily::rectangular: return "rectangular";
    case MeshFamily::voronoi: return "voronoi";
  }
  return "?";
}

PolygonalMesh make_family_mesh(MeshFamily family, int n, const Rect& bounds,
                               unsigned rng_seed) {
  switch (family) {
    case MeshFamily::triangular: return generate_triangular(n, bounds);
    case MeshFamily::rectangular: return generate_rectangular(n, n, bounds);
    case MeshFamily::voronoi:
      return generate_polygonal_voronoi(n * n, bounds, rng_seed);
  }
  throw std::invalid_argument("make_family_mesh: unknown family");
}

ConvergenceTable convergence_study(const StokesProblem& problem, int k,
                                   const std::vector<int>& levels, MeshFamily family,
                                   const StudyOptions& options) {
  if (!problem.has_exact())
    throw std::invalid_argument("convergence_study: problem has no exact solution");
  if (levels.empty()) throw std::invalid_argument("convergence_study: empty levels");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] <= levels[i - 1])
      throw std::invalid_argument("convergence_study: levels must be strictly increasing");

  ConvergenceTable table;
  for (int n : levels) {
    try {
      const PolygonalMesh mesh =
          make_family_mesh(family, n, problem.domain, options.rng_seed);
      const auto ops = build_element_ops(mesh, k, options.policy);
      AssemblyOptions aopt;
      aopt.policy = options.policy;
      aopt.viscosity = options.viscosity;
      const SaddleSystem sys = assemble(mesh, ops, problem.f, problem.g, aopt);
      const StokesSolution sol = solve(mesh, sys, options.solve);
      ConvergenceRow row;
      row.n = n;
      row.errors =
          compute_errors(mesh, ops, sol, problem.exact_u, problem.exact_p, options.policy);
      table.rows.push_back(row);
    } catch (const SolverError& e) {
      throw SolverError("convergence_study: level n=" + std::to_string(n) + ": " +
                            e.what(),
                        e.residual_history);
    }
  }
  fill_orders(table);
  return table;
}

}  // namespace wgstokes
