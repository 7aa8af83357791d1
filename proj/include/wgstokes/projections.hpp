// Local L2 projections onto the weak Galerkin spaces: interior projections
// Q_0 (degree k) and its degree-(k-1) pressure analogue, the edge projection
// Q_b (Legendre, diagonal solve), their combinations Q_h onto V_h and W_h,
// and the componentwise tensor projection onto [P_{k-1}(T)]^{2x2}.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "wgstokes/element_ops.hpp"
#include "wgstokes/spaces.hpp"

namespace wgstokes {

using ScalarField = std::function<double(Vec2)>;
using VectorField = std::function<Vec2(Vec2)>;
using TensorField = std::function<Eigen::Matrix2d(Vec2)>;  // (i,j) = d_j u_i

/// L2 projection of f onto P_degree(T); degree must be k or k-1 of ops.
Eigen::VectorXd project_interior(const ElementOps& ops, const ScalarField& f,
                                 int degree);

/// L2 projection of f onto P_degree(e); exact diagonal Legendre solve.
Eigen::VectorXd project_edge(const PolygonalMesh& mesh, const Edge& edge,
                             const ScalarField& f, int degree);

/// Q_h u = {Q_0 u, Q_b u} into V_h.
WeakVelocity project_Qh(const PolygonalMesh& mesh, const std::vector<ElementOps>& ops,
                        const VectorField& u);

/// Pressure projection {interior degree k-1, edge degree k} into W_h.
WeakPressure project_Qh_pressure(const PolygonalMesh& mesh,
                                 const std::vector<ElementOps>& ops,
                                 const ScalarField& p);

/// Componentwise projection onto [P_{k-1}(T)]^{2x2}; component order matches
/// the weak gradient ((0,0), (0,1), (1,0), (1,1)).
Eigen::VectorXd project_tensor(const ElementOps& ops, const TensorField& g);

}  // namespace wgstokes
