// Per-element operator cache: bases, quadrature, Gram matrices and the
// discrete weak gradient representation matrices.
//
// The velocity weak gradient of v = {v_0, v_b} is the tensor field
// G in [P_{k-1}(T)]^{2x2} with
//   (G, tau)_T = (grad v_0, tau)_T - <v_0 - v_b, tau.n>_{dT}
// for all tau in [P_{k-1}(T)]^{2x2}; the pressure weak gradient of
// q = {q_0, q_b} is the field in [P_k(T)]^2 with
//   (G, w)_T = (grad q_0, w)_T - <q_0 - q_b, w.n>_{dT}.
// Both equal the duality form -(v_0, div tau)_T + <v_b, tau.n>_{dT} for
// polynomial data; build_weak_gradient_*_definition assembles that second
// form so the equivalence can be verified directly.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wgstokes/basis.hpp"
#include "wgstokes/parallel.hpp"
#include "wgstokes/spaces.hpp"

namespace wgstokes {

/// Tensor component ordering for the velocity weak gradient: row-major
/// (i,j) = (0,0), (0,1), (1,0), (1,1), where component (i,j) represents
/// d_j v_i. Each component holds poly_space_dim(k-1) coefficients.
struct ElementOps {
  Index element_id = 0;
  int k = 1;
  LocalDofs local;

  ElementBasis basis_k;    // degree k (velocity interior, pressure gradient target)
  ElementBasis basis_km1;  // degree k-1 (pressure interior, velocity gradient target)
  QuadratureRule quad;     // element rule, exactness 2k+2
  std::vector<EdgeQuadrature> edge_quads;  // per local edge, exactness 2k+2
  std::vector<EdgeBasis> edge_bases;       // degree k, per local edge

  Eigen::MatrixXd mass_k;    // Gram of basis_k
  Eigen::MatrixXd mass_km1;  // Gram of basis_km1
  Eigen::LLT<Eigen::MatrixXd> chol_k;
  Eigen::LLT<Eigen::MatrixXd> chol_km1;

  /// (4*nkm1) x n_velocity: local velocity coefficients -> weak gradient.
  Eigen::MatrixXd grad_v;
  /// (2*nk) x n_pressure: local pressure coefficients -> weak gradient.
  Eigen::MatrixXd grad_p;

  /// Integrals of the degree-(k-1) basis over T (mean-zero constraint row).
  Eigen::VectorXd interior_integrals_km1;
  /// Integrals of the degree-k basis over T (cell averages for export).
  Eigen::VectorXd interior_integrals_k;
};

/// Builds the cache for one element. Throws if the element mass matrix is
/// not SPD (degenerate geometry), naming the element.
ElementOps make_element_ops(const PolygonalMesh& mesh, const Element& elem, int k,
                            int exactness);

/// Caches for every element; exactness defaults to 2k+2.
std::vector<ElementOps> build_element_ops(const PolygonalMesh& mesh, int k,
                                          ParallelPolicy policy = ParallelPolicy::openmp,
                                          int exactness = -1);

Eigen::MatrixXd build_weak_gradient_velocity_definition(const PolygonalMesh& mesh,
                                                        const Element& elem,
                                                        const ElementOps& ops);
Eigen::MatrixXd build_weak_gradient_pressure_definition(const PolygonalMesh& mesh,
                                                        const Element& elem,
                                                        const ElementOps& ops);

/// Applies the weak gradient map; returns 4*nkm1 tensor coefficients.
Eigen::VectorXd weak_gradient_velocity(const ElementOps& ops,
                                       const Eigen::VectorXd& local_velocity);
/// Applies the pressure weak gradient map; returns 2*nk vector coefficients.
Eigen::VectorXd weak_gradient_pressure(const ElementOps& ops,
                                       const Eigen::VectorXd& local_pressure);

}  // namespace wgstokes
