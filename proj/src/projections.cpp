#include "wgstokes/projections.hpp"

#include <stdexcept>

namespace wgstokes {

Eigen::VectorXd project_interior(const ElementOps& ops, const ScalarField& f,
                                 int degree) {
  const bool full = degree == ops.k;
  if (!full && degree != ops.k - 1)
    throw std::invalid_argument("project_interior: degree must be k or k-1");
  const ElementBasis& basis = full ? ops.basis_k : ops.basis_km1;

  Eigen::VectorXd fvals(ops.quad.size());
  for (std::size_t q = 0; q < ops.quad.size(); ++q)
    fvals(static_cast<Eigen::Index>(q)) = ops.quad.weights[q] * f(ops.quad.points[q]);
  const Eigen::VectorXd rhs = basis.values(ops.quad.points).transpose() * fvals;
  return full ? ops.chol_k.solve(rhs) : ops.chol_km1.solve(rhs);
}

Eigen::VectorXd project_edge(const PolygonalMesh& mesh, const Edge& edge,
                             const ScalarField& f, int degree) {
  // Use enough points for the projected polynomial plus smooth data margin.
  const EdgeQuadrature eq = edge_quadrature(mesh, edge, 2 * degree + 2);
  const EdgeBasis basis(edge.id, degree, edge.length);
  const Eigen::MatrixXd leg = basis.values(eq.t);
  Eigen::VectorXd fvals(eq.size());
  for (std::size_t q = 0; q < eq.size(); ++q)
    fvals(static_cast<Eigen::Index>(q)) = eq.weights[q] * f(eq.points[q]);
  const Eigen::VectorXd rhs = leg.transpose() * fvals;
  return rhs.array() / basis.mass_diagonal().array();
}

WeakVelocity project_Qh(const PolygonalMesh& mesh, const std::vector<ElementOps>& ops,
                        const VectorField& u) {
  const int k = ops.front().k;
  const VelocityLayout layout(mesh, k);
  WeakVelocity out = WeakVelocity::zero(layout);
  const int nk = poly_space_dim(k);
  for (const Element& elem : mesh.elements) {
    const ElementOps& eo = ops[elem.id];
    const auto ux = [&](Vec2 p) { return u(p).x; };
    const auto uy = [&](Vec2 p) { return u(p).y; };
    out.coeffs.segment(layout.element_offset(elem.id), nk) =
        project_interior(eo, ux, k);
    out.coeffs.segment(layout.element_offset(elem.id) + nk, nk) =
        project_interior(eo, uy, k);
  }
  for (const Edge& edge : mesh.edges) {
    const auto ux = [&](Vec2 p) { return u(p).x; };
    const auto uy = [&](Vec2 p) { return u(p).y; };
    out.coeffs.segment(layout.edge_offset(edge.id), k + 1) =
        project_edge(mesh, edge, ux, k);
    out.coeffs.segment(layout.edge_offset(edge.id) + k + 1, k + 1) =
        project_edge(mesh, edge, uy, k);
  }
  return out;
}

WeakPressure project_Qh_pressure(const PolygonalMesh& mesh,
                                 const std::vector<ElementOps>& ops,
                                 const ScalarField& p) {
  const int k = ops.front().k;
  const PressureLayout layout(mesh, k);
  WeakPressure out = WeakPressure::zero(layout);
  for (const Element& elem : mesh.elements) {
    out.coeffs.segment(layout.element_offset(elem.id), layout.interior_block()) =
        project_interior(ops[elem.id], p, k - 1);
  }
  for (const Edge& edge : mesh.edges) {
    out.coeffs.segment(layout.edge_offset(edge.id), k + 1) =
        project_edge(mesh, edge, p, k);
  }
  return out;
}

Eigen::VectorXd project_tensor(const ElementOps& ops, const TensorField& g) {
  const int nkm1 = ops.local.nkm1();
  Eigen::VectorXd out(4 * nkm1);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto comp = [&](Vec2 p) { return g(p)(i, j); };
      out.segment((2 * i + j) * nkm1, nkm1) = project_interior(ops, comp, ops.k - 1);
    }
  }
  return out;
}

}  // namespace wgstokes
