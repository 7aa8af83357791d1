#include "wgstokes/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "wgstokes/vtk_io.hpp"

namespace wgstokes {

namespace {

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("expected a boolean, got '" + v + "'");
}

std::vector<int> parse_levels(const std::string& v) {
  std::vector<int> levels;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) levels.push_back(std::stoi(item));
  }
  return levels;
}

}  // namespace

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string key, value;
    std::stringstream ss(line);
    ss >> key;
    if (key.empty()) continue;
    std::getline(ss, value);
    // strip '=' and surrounding whitespace
    value.erase(std::remove(value.begin(), value.end(), '='), value.end());
    const auto b = value.find_first_not_of(" \t");
    const auto e = value.find_last_not_of(" \t\r");
    value = b == std::string::npos ? std::string() : value.substr(b, e - b + 1);
    try {
      if (key == "problem") cfg.problem = value;
      else if (key == "k") cfg.k = std::stoi(value);
      else if (key == "mesh") cfg.mesh = value;
      else if (key == "levels") cfg.levels = parse_levels(value);
      else if (key == "solver") cfg.solver = value;
      else if (key == "condense") cfg.condense = parse_bool(value);
      else if (key == "out") cfg.output_dir = value;
      else if (key == "seed") cfg.rng_seed = static_cast<unsigned>(std::stoul(value));
      else if (key == "lid-side") cfg.lid_side = value;
      else if (key == "lid-speed") cfg.lid_speed = std::stod(value);
      else if (key == "viscosity") cfg.viscosity = std::stod(value);
      else if (key == "mesh-file") cfg.mesh_file = value;
      else
        throw ConfigError("unknown key '" + key + "' in " + path + ":" +
                          std::to_string(lineno));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("bad value for '" + key + "' in " + path + ":" +
                        std::to_string(lineno));
    }
  }
  return cfg;
}

void validate(RunConfig& cfg) {
  if (cfg.problem != "example71" && cfg.problem != "example72" &&
      cfg.problem != "cavity" && cfg.problem != "custom")
    throw ConfigError("problem must be example71, example72, cavity or custom (got '" +
                      cfg.problem + "')");
  if (cfg.k < 1)
    throw ConfigError("k must be >= 1: the WG space uses degree-k velocities and "
                      "degree-(k-1) pressures, so k=0 is not a valid space");
  if (cfg.k > 3)
    throw ConfigError("k must be at most 3 (higher degrees are untested)");
  try {
    mesh_family_from_string(cfg.mesh);
    if (cfg.problem == "cavity") lid_side_from_string(cfg.lid_side);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.solver != "direct" && cfg.solver != "minres")
    throw ConfigError("solver must be direct or minres (got '" + cfg.solver + "')");
  if (cfg.condense && cfg.solver != "direct")
    throw ConfigError("--condense requires the direct solver");

  if (cfg.levels.empty()) {
    if (cfg.problem == "cavity")
      cfg.levels = {32};
    else
      cfg.levels = {4, 8, 16, 32};
  }
  for (int n : cfg.levels)
    if (n < 1) throw ConfigError("levels must be positive");
  for (std::size_t i = 1; i < cfg.levels.size(); ++i) {
    if (cfg.levels[i] <= cfg.levels[i - 1])
      throw ConfigError("levels must be strictly increasing");
    const int ratio = cfg.levels[i] / cfg.levels[0];
    if (cfg.levels[i] != cfg.levels[0] * ratio || (ratio & (ratio - 1)) != 0)
      throw ConfigError(
          "levels must be power-of-two multiples of the first level (e.g. 4,8,16,32); got " +
          std::to_string(cfg.levels[i]) + " with first level " +
          std::to_string(cfg.levels[0]));
  }
  if (!(cfg.viscosity > 0.0)) throw ConfigError("viscosity must be positive");
}

namespace {

int run_study(const RunConfig& cfg, const StokesProblem& problem, std::ostream& out) {
  StudyOptions opts;
  opts.solve.method = cfg.solver == "minres" ? SolverMethod::minres : SolverMethod::direct;
  opts.solve.condense = cfg.condense;
  opts.rng_seed = cfg.rng_seed;
  opts.viscosity = cfg.viscosity;
  const MeshFamily family = mesh_family_from_string(cfg.mesh);

  const ConvergenceTable table = convergence_study(problem, cfg.k, cfg.levels, family, opts);
  out << problem.name << ", k=" << cfg.k << ", " << cfg.mesh << " mesh\n";
  if (cfg.k == 3) out << "(k=3 is experimental: orders beyond k=2 are not validated)\n";
  print_table(table, out);

  const std::string csv = cfg.output_dir + "/" + problem.name + "_k" +
                          std::to_string(cfg.k) + "_" + cfg.mesh + ".csv";
  write_csv(table, csv);
  out << "wrote " << csv << "\n";
  return 0;
}

int run_cavity(const RunConfig& cfg, std::ostream& out) {
  const StokesProblem problem =
      builtin_cavity(lid_side_from_string(cfg.lid_side), cfg.lid_speed);
  const int n = cfg.levels.front();
  const MeshFamily family = mesh_family_from_string(cfg.mesh);
  const PolygonalMesh mesh = make_family_mesh(family, n, problem.domain, cfg.rng_seed);
  const auto ops = build_element_ops(mesh, cfg.k);

  AssemblyOptions aopt;
  aopt.viscosity = cfg.viscosity;
  const SaddleSystem sys = assemble(mesh, ops, problem.f, problem.g, aopt);
  SolveOptions sopt;
  sopt.method = cfg.solver == "minres" ? SolverMethod::minres : SolverMethod::direct;
  sopt.condense = cfg.condense;
  const StokesSolution sol = solve(mesh, sys, sopt);

  const double mean_p = sys.m.dot(sol.p.coeffs);
  out << "cavity, k=" << cfg.k << ", n=" << n << ", lid side " << cfg.lid_side
      << ", lid speed " << cfg.lid_speed << "\n"
      << "solver " << sol.stats.method << ", unknowns " << sol.stats.solved_unknowns
      << ", residual " << sol.stats.residual << ", pressure mean " << mean_p << "\n";

  const std::string base = cfg.output_dir + "/cavity_k" + std::to_string(cfg.k);
  for (const std::string& path : export_fields(mesh, ops, sol, base))
    out << "wrote " << path << "\n";
  return 0;
}

int run_custom(const RunConfig& cfg, std::ostream& out) {
  PolygonalMesh mesh;
  if (!cfg.mesh_file.empty()) {
    mesh = read_wgmesh(cfg.mesh_file);
    out << "custom run on imported mesh " << cfg.mesh_file << " (" << mesh.element_count()
        << " elements)\n";
  } else {
    mesh = make_family_mesh(mesh_family_from_string(cfg.mesh), cfg.levels.front(),
                            Rect::unit_square(), cfg.rng_seed);
  }
  const auto ops = build_element_ops(mesh, cfg.k);
  const auto zero = [](Vec2) { return Vec2{0.0, 0.0}; };
  AssemblyOptions aopt;
  aopt.viscosity = cfg.viscosity;
  const SaddleSystem sys = assemble(mesh, ops, zero, zero, aopt);
  SolveOptions sopt;
  sopt.method = cfg.solver == "minres" ? SolverMethod::minres : SolverMethod::direct;
  sopt.condense = cfg.condense;
  const StokesSolution sol = solve(mesh, sys, sopt);
  out << "custom (f=0, g=0): |u| = " << sol.u.coeffs.norm() << ", |p| = "
      << sol.p.coeffs.norm() << ", residual " << sol.stats.residual << "\n";
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  RunConfig cfg = config;
  validate(cfg);
  apply_thread_cap_from_env();
  std::filesystem::create_directories(cfg.output_dir);

  if (cfg.problem == "example71") return run_study(cfg, builtin_example71(), out);
  if (cfg.problem == "example72") return run_study(cfg, builtin_example72(), out);
  if (cfg.problem == "cavity") return run_cavity(cfg, out);
  return run_custom(cfg, out);
}

}  // namespace wgstokes
