// Global DOF management, saddle-point assembly with Dirichlet lift and
// mean-zero pressure constraint, and the sparse solvers for the scheme
//   a(u_h, v) + b(v, p_h) = (f, v_0),
//   b(u_h, q) - c(p_h, q) = 0,
// with u_b = Q_b g on boundary edges.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <stdexcept>
#include <string>
#include <vector>

#include "wgstokes/local_forms.hpp"
#include "wgstokes/projections.hpp"

namespace wgstokes {

struct DofMap {
  int k = 1;
  VelocityLayout velocity;
  PressureLayout pressure;
  std::vector<char> velocity_on_boundary;  // per velocity DOF

  std::int64_t n_u() const { return velocity.total(); }
  std::int64_t n_p() const { return pressure.total(); }

  /// Global velocity DOF indices of one element, in local ordering.
  std::vector<std::int64_t> element_velocity_dofs(const Element& elem) const;
  std::vector<std::int64_t> element_pressure_dofs(const Element& elem) const;
};

DofMap build_dof_map(const PolygonalMesh& mesh, int k);

/// Assembled saddle-point blocks over the full (uneliminated) DOF sets.
/// The solve works on [[A, B], [B^T, -C]] with the mean-zero pressure
/// constraint m^T p = 0 appended as a Lagrange multiplier row/column and
/// boundary velocity columns moved to the right-hand side.
struct SaddleSystem {
  int k = 1;
  double viscosity = 1.0;
  DofMap dofs;
  Eigen::SparseMatrix<double> A;  // n_u x n_u, symmetric
  Eigen::SparseMatrix<double> B;  // n_u x n_p
  Eigen::SparseMatrix<double> C;  // n_p x n_p, symmetric
  Eigen::VectorXd F;              // load (f, v_0)
  Eigen::VectorXd m;              // constraint: m_j = int_T (pressure basis j)
  Eigen::VectorXd u_dirichlet;    // Q_b g on boundary edges, 0 elsewhere
  Eigen::VectorXd pressure_mass_diag;  // MINRES preconditioner block
  std::vector<LocalForms> local;  // kept for condensation and diagnostics
};

struct AssemblyOptions {
  ParallelPolicy policy = ParallelPolicy::openmp;
  double viscosity = 1.0;
  /// Relative tolerance of the boundary-data compatibility check
  /// (violations are reported to stderr, never fatal).
  double compatibility_tol = 1e-8;
};

SaddleSystem assemble(const PolygonalMesh& mesh, const std::vector<ElementOps>& ops,
                      const VectorField& f, const VectorField& g,
                      const AssemblyOptions& options = {});

/// Convenience overload building the element caches internally.
SaddleSystem assemble(const PolygonalMesh& mesh, int k, const VectorField& f,
                      const VectorField& g, const AssemblyOptions& options = {});

enum class SolverMethod { direct, minres };

struct SolveOptions {
  SolverMethod method = SolverMethod::direct;
  bool condense = false;  // element-local Schur elimination of interior DOFs
  double tolerance = 1e-10;
  int max_iterations = 200000;
};

struct SolverStats {
  std::string method;
  int iterations = 0;           // 0 for direct
  double residual = 0.0;        // relative residual of the full system
  std::int64_t solved_unknowns = 0;
  double multiplier = 0.0;      // Lagrange multiplier of the mean constraint
  std::vector<double> residual_history;  // MINRES only
};

struct StokesSolution {
  WeakVelocity u;
  WeakPressure p;
  SolverStats stats;
};

/// Thrown on factorization breakdown or Krylov non-convergence.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& msg, std::vector<double> history = {})
      : std::runtime_error(msg), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

StokesSolution solve(const PolygonalMesh& mesh, const SaddleSystem& system,
                     const SolveOptions& options = {});

/// Relative residual of the full constrained system at (u, p, lambda).
double full_residual(const SaddleSystem& system, const Eigen::VectorXd& u,
                     const Eigen::VectorXd& p, double lambda);

/// Reduced system over edge DOFs after element-local elimination of the
/// interior velocity and pressure unknowns.
struct CondensedSystem {
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd rhs;
  std::int64_t n_edge_unknowns = 0;  // excludes the multiplier
  // Recovery data, per element.
  std::vector<Eigen::PartialPivLU<Eigen::MatrixXd>> interior_factor;
  std::vector<Eigen::MatrixXd> interior_to_edge;  // K_IE
  std::vector<Eigen::VectorXd> interior_rhs;      // b_I
};

CondensedSystem static_condensation(const PolygonalMesh& mesh,
                                    const SaddleSystem& system);

}  // namespace wgstokes
