#include "wgstokes/element_ops.hpp"

#include <stdexcept>
#include <string>

namespace wgstokes {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vec(const std::vector<double>& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

}  // namespace

ElementOps make_element_ops(const PolygonalMesh& mesh, const Element& elem, int k,
                            int exactness) {
  if (k < 1) throw std::invalid_argument("make_element_ops: k must be >= 1");
  ElementOps ops;
  ops.element_id = elem.id;
  ops.k = k;
  ops.local = LocalDofs{k, elem.edge_count()};
  ops.basis_k = make_element_basis(elem, k);
  ops.basis_km1 = make_element_basis(elem, k - 1);
  ops.quad = element_quadrature(mesh, elem, exactness);

  const int ne = elem.edge_count();
  ops.edge_quads.reserve(ne);
  ops.edge_bases.reserve(ne);
  for (int le = 0; le < ne; ++le) {
    const Edge& edge = mesh.edges[elem.edge_loop[le]];
    ops.edge_quads.push_back(edge_quadrature(mesh, edge, exactness));
    ops.edge_bases.push_back(make_edge_basis(edge, k));
  }

  ops.mass_k = element_mass_matrix(ops.basis_k, ops.quad);
  ops.mass_km1 = element_mass_matrix(ops.basis_km1, ops.quad);
  ops.chol_k.compute(ops.mass_k);
  ops.chol_km1.compute(ops.mass_km1);
  if (ops.chol_k.info() != Eigen::Success || ops.chol_km1.info() != Eigen::Success)
    throw std::runtime_error("make_element_ops: mass matrix not SPD on element " +
                             std::to_string(elem.id) + " (degenerate geometry)");

  const int nk = ops.local.nk();
  const int nkm1 = ops.local.nkm1();
  const int ed = ops.local.edge_dim();
  const Eigen::Map<const Eigen::VectorXd> w = as_vec(ops.quad.weights);

  const Eigen::MatrixXd vk = ops.basis_k.values(ops.quad.points);
  const Eigen::MatrixXd vkm1 = ops.basis_km1.values(ops.quad.points);
  Eigen::MatrixXd gkx, gky, gk1x, gk1y;
  ops.basis_k.gradients(ops.quad.points, gkx, gky);
  ops.basis_km1.gradients(ops.quad.points, gk1x, gk1y);

  ops.interior_integrals_km1 = vkm1.transpose() * w;
  ops.interior_integrals_k = vk.transpose() * w;

  // Volume moments for the integration-by-parts forms:
  //   D_j(b, a)  = int_T m^{k-1}_b d_j m^k_a     (velocity gradient)
  //   Dt_l(b, a) = int_T m^k_b d_l m^{k-1}_a     (pressure gradient)
  const Eigen::MatrixXd d_x = vkm1.transpose() * w.asDiagonal() * gkx;
  const Eigen::MatrixXd d_y = vkm1.transpose() * w.asDiagonal() * gky;
  const Eigen::MatrixXd dt_x = vk.transpose() * w.asDiagonal() * gk1x;
  const Eigen::MatrixXd dt_y = vk.transpose() * w.asDiagonal() * gk1y;

  // Right-hand sides of the weak gradient systems, before the mass solve.
  Eigen::MatrixXd rv = Eigen::MatrixXd::Zero(4 * nkm1, ops.local.n_velocity());
  Eigen::MatrixXd rp = Eigen::MatrixXd::Zero(2 * nk, ops.local.n_pressure());

  for (int comp = 0; comp < 2; ++comp) {
    // Tensor components (comp, 0) and (comp, 1) take the x/y moments of the
    // comp-th velocity component.
    rv.block(2 * comp * nkm1, comp * nk, nkm1, nk) = d_x;
    rv.block((2 * comp + 1) * nkm1, comp * nk, nkm1, nk) = d_y;
  }
  rp.block(0, 0, nk, nkm1) = dt_x;
  rp.block(nk, 0, nk, nkm1) = dt_y;

  for (int le = 0; le < ne; ++le) {
    const EdgeQuadrature& eq = ops.edge_quads[le];
    const Vec2 n = mesh.outward_normal(elem, le);
    const Eigen::Map<const Eigen::VectorXd> we = as_vec(eq.weights);
    Eigen::MatrixXd trace_k = ops.basis_k.values(eq.points);
    Eigen::MatrixXd trace_km1 = ops.basis_km1.values(eq.points);
    // t follows the stored edge direction, so both incident elements see the
    // same (single-valued) edge basis.
    Eigen::MatrixXd leg = ops.edge_bases[le].values(eq.t);

    const Eigen::MatrixXd c_int_v = trace_km1.transpose() * we.asDiagonal() * trace_k;
    const Eigen::MatrixXd c_edge_v = trace_km1.transpose() * we.asDiagonal() * leg;
    const Eigen::MatrixXd c_int_p = trace_k.transpose() * we.asDiagonal() * trace_km1;
    const Eigen::MatrixXd c_edge_p = trace_k.transpose() * we.asDiagonal() * leg;

    const double nj[2] = {n.x, n.y};
    for (int comp = 0; comp < 2; ++comp) {
      for (int j = 0; j < 2; ++j) {
        const int row = (2 * comp + j) * nkm1;
        rv.block(row, comp * nk, nkm1, nk) -= nj[j] * c_int_v;
        rv.block(row, ops.local.v_edge(le, comp, 0), nkm1, ed) += nj[j] * c_edge_v;
      }
    }
    for (int l = 0; l < 2; ++l) {
      rp.block(l * nk, 0, nk, nkm1) -= nj[l] * c_int_p;
      rp.block(l * nk, ops.local.p_edge(le, 0), nk, ed) += nj[l] * c_edge_p;
    }
  }

  ops.grad_v.resize(4 * nkm1, ops.local.n_velocity());
  for (int c = 0; c < 4; ++c)
    ops.grad_v.middleRows(c * nkm1, nkm1) =
        ops.chol_km1.solve(rv.middleRows(c * nkm1, nkm1));
  ops.grad_p.resize(2 * nk, ops.local.n_pressure());
  for (int c = 0; c < 2; ++c)
    ops.grad_p.middleRows(c * nk, nk) = ops.chol_k.solve(rp.middleRows(c * nk, nk));

  return ops;
}

std::vector<ElementOps> build_element_ops(const PolygonalMesh& mesh, int k,
                                          ParallelPolicy policy, int exactness) {
  if (exactness < 0) exactness = 2 * k + 2;
  std::vector<ElementOps> table(mesh.element_count());
  std::exception_ptr error;
  parallel_for(mesh.element_count(), policy, [&](std::int64_t i) {
    try {
      table[i] = make_element_ops(mesh, mesh.elements[i], k, exactness);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      error = std::current_exception();
    }
  });
  if (error) std::rethrow_exception(error);
  return table;
}

Eigen::MatrixXd build_weak_gradient_velocity_definition(const PolygonalMesh& mesh,
                                                        const Element& elem,
                                                        const ElementOps& ops) {
  const int nk = ops.local.nk();
  const int nkm1 = ops.local.nkm1();
  const int ed = ops.local.edge_dim();
  const Eigen::Map<const Eigen::VectorXd> w = as_vec(ops.quad.weights);

  const Eigen::MatrixXd vk = ops.basis_k.values(ops.quad.points);
  Eigen::MatrixXd gk1x, gk1y;
  ops.basis_km1.gradients(ops.quad.points, gk1x, gk1y);
  // -(v_0, div tau)_T with tau = m_b e_ij: div tau = d_j m_b e_i.
  const Eigen::MatrixXd dvol_x = gk1x.transpose() * w.asDiagonal() * vk;
  const Eigen::MatrixXd dvol_y = gk1y.transpose() * w.asDiagonal() * vk;

  Eigen::MatrixXd rv = Eigen::MatrixXd::Zero(4 * nkm1, ops.local.n_velocity());
  for (int comp = 0; comp < 2; ++comp) {
    rv.block(2 * comp * nkm1, comp * nk, nkm1, nk) = -dvol_x;
    rv.block((2 * comp + 1) * nkm1, comp * nk, nkm1, nk) = -dvol_y;
  }
  for (int le = 0; le < elem.edge_count(); ++le) {
    const EdgeQuadrature& eq = ops.edge_quads[le];
    const Vec2 n = mesh.outward_normal(elem, le);
    const Eigen::Map<const Eigen::VectorXd> we = as_vec(eq.weights);
    const Eigen::MatrixXd trace_km1 = ops.basis_km1.values(eq.points);
    const Eigen::MatrixXd leg = ops.edge_bases[le].values(eq.t);
    const Eigen::MatrixXd c_edge = trace_km1.transpose() * we.asDiagonal() * leg;
    const double nj[2] = {n.x, n.y};
    for (int comp = 0; comp < 2; ++comp)
      for (int j = 0; j < 2; ++j)
        rv.block((2 * comp + j) * nkm1, ops.local.v_edge(le, comp, 0), nkm1, ed) +=
            nj[j] * c_edge;
  }
  Eigen::MatrixXd g(4 * nkm1, ops.local.n_velocity());
  for (int c = 0; c < 4; ++c)
    g.middleRows(c * nkm1, nkm1) = ops.chol_km1.solve(rv.middleRows(c * nkm1, nkm1));
  return g;
}

Eigen::MatrixXd build_weak_gradient_pressure_definition(const PolygonalMesh& mesh,
                                                        const Element& elem,
                                                        const ElementOps& ops) {
  const int nk = ops.local.nk();
  const int nkm1 = ops.local.nkm1();
  const int ed = ops.local.edge_dim();
  const Eigen::Map<const Eigen::VectorXd> w = as_vec(ops.quad.weights);

  const Eigen::MatrixXd vkm1 = ops.basis_km1.values(ops.quad.points);
  Eigen::MatrixXd gkx, gky;
  ops.basis_k.gradients(ops.quad.points, gkx, gky);
  // -(q_0, div w)_T with w = m_b e_l: div w = d_l m_b.
  const Eigen::MatrixXd dvol_x = gkx.transpose() * w.asDiagonal() * vkm1;
  const Eigen::MatrixXd dvol_y = gky.transpose() * w.asDiagonal() * vkm1;

  Eigen::MatrixXd rp = Eigen::MatrixXd::Zero(2 * nk, ops.local.n_pressure());
  rp.block(0, 0, nk, nkm1) = -dvol_x;
  rp.block(nk, 0, nk, nkm1) = -dvol_y;
  for (int le = 0; le < elem.edge_count(); ++le) {
    const EdgeQuadrature& eq = ops.edge_quads[le];
    const Vec2 n = mesh.outward_normal(elem, le);
    const Eigen::Map<const Eigen::VectorXd> we = as_vec(eq.weights);
    const Eigen::MatrixXd trace_k = ops.basis_k.values(eq.points);
    const Eigen::MatrixXd leg = ops.edge_bases[le].values(eq.t);
    const Eigen::MatrixXd c_edge = trace_k.transpose() * we.asDiagonal() * leg;
    const double nl[2] = {n.x, n.y};
    for (int l = 0; l < 2; ++l)
      rp.block(l * nk, ops.local.p_edge(le, 0), nk, ed) += nl[l] * c_edge;
  }
  Eigen::MatrixXd g(2 * nk, ops.local.n_pressure());
  for (int c = 0; c < 2; ++c)
    g.middleRows(c * nk, nk) = ops.chol_k.solve(rp.middleRows(c * nk, nk));
  return g;
}

Eigen::VectorXd weak_gradient_velocity(const ElementOps& ops,
                                       const Eigen::VectorXd& local_velocity) {
  return ops.grad_v * local_velocity;
}

Eigen::VectorXd weak_gradient_pressure(const ElementOps& ops,
                                       const Eigen::VectorXd& local_pressure) {
  return ops.grad_p * local_pressure;
}

}  // namespace wgstokes
