#include "wgstokes/local_forms.hpp"

#include <stdexcept>

namespace wgstokes {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vec(const std::vector<double>& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

// Jump Gram matrix on one edge for a scalar pair: rows/cols ordered
// [interior basis | edge basis], with jump = interior trace - edge value.
Eigen::MatrixXd edge_jump_gram(const ElementBasis& interior, const EdgeBasis& edge,
                               const EdgeQuadrature& eq) {
  const int ni = interior.dim();
  const int nb = edge.dim();
  Eigen::MatrixXd jump(eq.size(), ni + nb);
  jump.leftCols(ni) = interior.values(eq.points);
  jump.rightCols(nb) = -edge.values(eq.t);
  const Eigen::Map<const Eigen::VectorXd> we = as_vec(eq.weights);
  return jump.transpose() * we.asDiagonal() * jump;
}

}  // namespace

Eigen::MatrixXd local_stabilizer_s(const Element& elem, const ElementOps& ops) {
  const LocalDofs& loc = ops.local;
  const int nk = loc.nk();
  const int ed = loc.edge_dim();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(loc.n_velocity(), loc.n_velocity());
  const double inv_h = 1.0 / elem.diameter;

  for (int le = 0; le < elem.edge_count(); ++le) {
    const Eigen::MatrixXd g =
        inv_h * edge_jump_gram(ops.basis_k, ops.edge_bases[le], ops.edge_quads[le]);
    // Same scalar block for the x and y components.
    for (int comp = 0; comp < 2; ++comp) {
      const int i0 = loc.v_int(comp, 0);
      const int e0 = loc.v_edge(le, comp, 0);
      s.block(i0, i0, nk, nk) += g.topLeftCorner(nk, nk);
      s.block(i0, e0, nk, ed) += g.topRightCorner(nk, ed);
      s.block(e0, i0, ed, nk) += g.bottomLeftCorner(ed, nk);
      s.block(e0, e0, ed, ed) += g.bottomRightCorner(ed, ed);
    }
  }
  return s;
}

Eigen::MatrixXd local_grad_a(const ElementOps& ops,
                             const Eigen::MatrixXd& stabilizer) {
  const int nkm1 = ops.local.nkm1();
  Eigen::MatrixXd a = stabilizer;
  for (int c = 0; c < 4; ++c) {
    const auto gc = ops.grad_v.middleRows(c * nkm1, nkm1);
    a.noalias() += gc.transpose() * ops.mass_km1 * gc;
  }
  return 0.5 * (a + a.transpose()).eval();
}

Eigen::MatrixXd local_b(const ElementOps& ops) {
  const LocalDofs& loc = ops.local;
  const int nk = loc.nk();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(loc.n_velocity(), loc.n_pressure());
  for (int comp = 0; comp < 2; ++comp)
    b.middleRows(loc.v_int(comp, 0), nk) = ops.mass_k * ops.grad_p.middleRows(comp * nk, nk);
  return b;
}

Eigen::MatrixXd local_c(const Element& elem, const ElementOps& ops) {
  const LocalDofs& loc = ops.local;
  const int nkm1 = loc.nkm1();
  const int ed = loc.edge_dim();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(loc.n_pressure(), loc.n_pressure());
  for (int le = 0; le < elem.edge_count(); ++le) {
    const Eigen::MatrixXd g =
        elem.diameter *
        edge_jump_gram(ops.basis_km1, ops.edge_bases[le], ops.edge_quads[le]);
    const int e0 = loc.p_edge(le, 0);
    c.block(0, 0, nkm1, nkm1) += g.topLeftCorner(nkm1, nkm1);
    c.block(0, e0, nkm1, ed) += g.topRightCorner(nkm1, ed);
    c.block(e0, 0, ed, nkm1) += g.bottomLeftCorner(ed, nkm1);
    c.block(e0, e0, ed, ed) += g.bottomRightCorner(ed, ed);
  }
  return c;
}

LocalForms build_local_forms(const Element& elem, const ElementOps& ops) {
  LocalForms f;
  f.S = local_stabilizer_s(elem, ops);
  f.A = local_grad_a(ops, f.S);
  f.B = local_b(ops);
  f.C = local_c(elem, ops);
  return f;
}

std::vector<LocalForms> build_all_local_forms(const PolygonalMesh& mesh,
                                              const std::vector<ElementOps>& ops,
                                              ParallelPolicy policy) {
  std::vector<LocalForms> table(mesh.element_count());
  parallel_for(mesh.element_count(), policy, [&](std::int64_t i) {
    table[i] = build_local_forms(mesh.elements[i], ops[i]);
  });
  return table;
}

}  // namespace wgstokes
