// Benchmark of the element-parallel kernels against the serial reference:
// element operator construction, local form assembly and error norms.

#include <chrono>
#include <cstdio>
#include <string>

#include "wgstokes/errors.hpp"
#include "wgstokes/problems.hpp"
#include "wgstokes/study.hpp"

using namespace wgstokes;

namespace {

template <typename F>
double time_best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 64;
  int k = 2;
  int reps = 3;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--n") n = std::atoi(argv[i + 1]);
    else if (flag == "--k") k = std::atoi(argv[i + 1]);
    else if (flag == "--reps") reps = std::atoi(argv[i + 1]);
  }
  apply_thread_cap_from_env();

  const StokesProblem problem = builtin_example71();
  const PolygonalMesh mesh = generate_triangular(n, problem.domain);
  std::printf("triangular n=%d (%d elements), k=%d, threads=%d\n", n,
              mesh.element_count(), k, max_threads());

  std::vector<ElementOps> ops_serial, ops_parallel;
  const double t_ops_s = time_best_of(reps, [&] {
    ops_serial = build_element_ops(mesh, k, ParallelPolicy::serial);
  });
  const double t_ops_p = time_best_of(reps, [&] {
    ops_parallel = build_element_ops(mesh, k, ParallelPolicy::openmp);
  });

  std::vector<LocalForms> forms_serial, forms_parallel;
  const double t_forms_s = time_best_of(reps, [&] {
    forms_serial = build_all_local_forms(mesh, ops_serial, ParallelPolicy::serial);
  });
  const double t_forms_p = time_best_of(reps, [&] {
    forms_parallel = build_all_local_forms(mesh, ops_parallel, ParallelPolicy::openmp);
  });

  double max_diff = 0.0;
  for (Index i = 0; i < mesh.element_count(); ++i) {
    max_diff = std::max(max_diff,
                        (forms_serial[i].A - forms_parallel[i].A).cwiseAbs().maxCoeff());
    max_diff = std::max(max_diff,
                        (forms_serial[i].B - forms_parallel[i].B).cwiseAbs().maxCoeff());
    max_diff = std::max(max_diff,
                        (forms_serial[i].C - forms_parallel[i].C).cwiseAbs().maxCoeff());
  }

  AssemblyOptions aopt;
  const SaddleSystem sys = assemble(mesh, ops_parallel, problem.f, problem.g, aopt);
  const StokesSolution sol = solve(mesh, sys, SolveOptions{});
  ErrorReport err_serial, err_parallel;
  const double t_err_s = time_best_of(reps, [&] {
    err_serial = compute_errors(mesh, ops_parallel, sol, problem.exact_u,
                                problem.exact_p, ParallelPolicy::serial);
  });
  const double t_err_p = time_best_of(reps, [&] {
    err_parallel = compute_errors(mesh, ops_parallel, sol, problem.exact_u,
                                  problem.exact_p, ParallelPolicy::openmp);
  });

  std::printf("%-22s %10s %10s %8s\n", "kernel", "serial[s]", "openmp[s]", "speedup");
  std::printf("%-22s %10.4f %10.4f %8.2fx\n", "element operators", t_ops_s, t_ops_p,
              t_ops_s / t_ops_p);
  std::printf("%-22s %10.4f %10.4f %8.2fx\n", "local forms", t_forms_s, t_forms_p,
              t_forms_s / t_forms_p);
  std::printf("%-22s %10.4f %10.4f %8.2fx\n", "error norms", t_err_s, t_err_p,
              t_err_s / t_err_p);
  std::printf("serial/parallel max form difference: %.3e\n", max_diff);
  std::printf("serial/parallel energy error difference: %.3e\n",
              std::abs(err_serial.energy_u - err_parallel.energy_u));
  return max_diff == 0.0 ? 0 : 1;
}
