// Error norms against the projected exact solution, and convergence tables.
//
// With e_h = Q_h u - u_h and eps_h = Qt_h p - p_h:
//   energy_u^2    = sum_T ( int_T |grad_w e_h|^2 + h_T^{-1} int_dT |e_0 - e_b|^2 )
//   l2_u^2        = sum_T int_T |e_0|^2
//   seminorm_p^2  = c(eps_h, eps_h)
//   wg_p^2        = sum_T ( int_T |eps_0|^2 + h_T int_dT |eps_0 - eps_b|^2 )
//   l2_p^2        = sum_T int_T |eps_0|^2

#pragma once

#include <iosfwd>
#include <vector>

#include "wgstokes/system.hpp"

namespace wgstokes {

struct ErrorReport {
  double h = 0.0;
  double energy_u = 0.0;
  double l2_u = 0.0;
  double wg_p = 0.0;
  double seminorm_p = 0.0;
  double l2_p = 0.0;
};

ErrorReport compute_errors(const PolygonalMesh& mesh,
                           const std::vector<ElementOps>& ops,
                           const StokesSolution& solution, const VectorField& exact_u,
                           const ScalarField& exact_p,
                           ParallelPolicy policy = ParallelPolicy::openmp);

/// Coefficient-difference norms for an explicit pair (useful in tests).
ErrorReport weak_function_norms(const PolygonalMesh& mesh,
                                const std::vector<ElementOps>& ops,
                                const WeakVelocity& ev, const WeakPressure& ep,
                                ParallelPolicy policy = ParallelPolicy::openmp);

struct ConvergenceRow {
  int n = 0;  // generator resolution
  ErrorReport errors;
  // log2 ratios against the previous row; NaN on the first row or when the
  // mesh sizes are not an exact halving.
  double order_energy_u = 0.0;
  double order_l2_u = 0.0;
  double order_wg_p = 0.0;
  double order_l2_p = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;

  /// Least-squares slope of log(error) against log(h).
  double slope_energy_u() const;
  double slope_l2_u() const;
  double slope_wg_p() const;
  double slope_l2_p() const;
};

void fill_orders(ConvergenceTable& table);

/// Paper-style table (h | error | order ...) on `out`.
void print_table(const ConvergenceTable& table, std::ostream& out);

/// CSV with header h,energy_u,order,l2_u,order,wg_p,order,l2_p,order.
void write_csv(const ConvergenceTable& table, const std::string& path);

}  // namespace wgstokes
