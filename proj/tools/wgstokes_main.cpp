// Command-line driver. Exit codes: 0 success, 2 configuration error,
// 3 solver failure.

#include <CLI11.hpp>
#include <iostream>

#include "wgstokes/runner.hpp"
#include "wgstokes/vtk_io.hpp"

namespace {

int run_command(const wgstokes::RunConfig& cfg) {
  try {
    return wgstokes::run(cfg, std::cout);
  } catch (const wgstokes::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const wgstokes::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    if (!e.residual_history.empty()) {
      std::cerr << "residual history (last 5):";
      const std::size_t n = e.residual_history.size();
      for (std::size_t i = n > 5 ? n - 5 : 0; i < n; ++i)
        std::cerr << " " << e.residual_history[i];
      std::cerr << "\n";
    }
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

int mesh_command(const std::string& family, int n, unsigned seed,
                 const std::string& out_path, const std::string& in_path) {
  try {
    wgstokes::PolygonalMesh mesh;
    if (!in_path.empty()) {
      mesh = wgstokes::read_wgmesh(in_path);
    } else {
      mesh = wgstokes::make_family_mesh(wgstokes::mesh_family_from_string(family), n,
                                        wgstokes::Rect::unit_square(), seed);
    }
    const auto report = wgstokes::check_shape_regularity(mesh);
    std::cout << "elements " << mesh.element_count() << ", edges " << mesh.edge_count()
              << ", vertices " << mesh.vertex_count() << ", boundary edges "
              << mesh.boundary_edge_ids.size() << "\n"
              << "h " << mesh.h << ", total area " << mesh.total_area() << "\n"
              << "min edge/h_T " << report.min_edge_to_diameter << ", max aspect "
              << report.max_aspect_ratio << ", star-shaped "
              << (report.star_shaped ? "yes" : "no") << "\n";
    if (!out_path.empty()) {
      wgstokes::write_wgmesh(mesh, out_path);
      std::cout << "wrote " << out_path << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "mesh error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak Galerkin finite element solver for the 2D Stokes equations"};
  app.require_subcommand(1);

  wgstokes::RunConfig cfg;
  // A config file provides defaults; explicit flags override it.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        cfg = wgstokes::load_config_file(argv[i + 1]);
      } catch (const wgstokes::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
      }
    }
  }

  auto* run_cmd = app.add_subcommand("run", "run a study, the cavity, or a custom solve");
  std::string config_path;
  run_cmd->add_option("--config", config_path, "flat key-value config file");
  run_cmd->add_option("--problem", cfg.problem, "example71 | example72 | cavity | custom");
  run_cmd->add_option("--k", cfg.k, "polynomial degree (1..3)");
  run_cmd->add_option("--mesh", cfg.mesh, "triangular | rectangular | voronoi");
  run_cmd->add_option("--levels", cfg.levels, "refinement levels, e.g. 4,8,16,32")
      ->delimiter(',');
  run_cmd->add_option("--solver", cfg.solver, "direct | minres");
  run_cmd->add_flag("--condense", cfg.condense, "static condensation of interior DOFs");
  run_cmd->add_option("--out", cfg.output_dir, "output directory");
  run_cmd->add_option("--seed", cfg.rng_seed, "RNG seed for voronoi meshes");
  run_cmd->add_option("--lid-side", cfg.lid_side, "cavity moving wall: x0|x1|y0|y1");
  run_cmd->add_option("--lid-speed", cfg.lid_speed, "cavity wall speed");
  run_cmd->add_option("--viscosity", cfg.viscosity, "kinematic viscosity");
  run_cmd->add_option("--mesh-file", cfg.mesh_file, "wgmesh file for the custom problem");

  auto* mesh_cmd = app.add_subcommand("mesh", "generate or inspect a mesh");
  std::string family = "triangular", mesh_out, mesh_in;
  int n = 8;
  unsigned seed = 1;
  mesh_cmd->add_option("--family", family, "triangular | rectangular | voronoi");
  mesh_cmd->add_option("--n", n, "resolution");
  mesh_cmd->add_option("--seed", seed, "RNG seed");
  mesh_cmd->add_option("--out", mesh_out, "write wgmesh file");
  mesh_cmd->add_option("--in", mesh_in, "inspect an existing wgmesh file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (run_cmd->parsed()) return run_command(cfg);
  return mesh_command(family, n, seed, mesh_out, mesh_in);
}
