#include "wgstokes/system.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace wgstokes {

std::vector<std::int64_t> DofMap::element_velocity_dofs(const Element& elem) const {
  const LocalDofs loc{k, elem.edge_count()};
  std::vector<std::int64_t> dofs(loc.n_velocity());
  const std::int64_t base = velocity.element_offset(elem.id);
  for (int i = 0; i < velocity.interior_block(); ++i) dofs[i] = base + i;
  for (int le = 0; le < elem.edge_count(); ++le) {
    const std::int64_t ebase = velocity.edge_offset(elem.edge_loop[le]);
    for (int i = 0; i < velocity.edge_block(); ++i)
      dofs[loc.v_edge(le, 0, 0) + i] = ebase + i;
  }
  return dofs;
}

std::vector<std::int64_t> DofMap::element_pressure_dofs(const Element& elem) const {
  const LocalDofs loc{k, elem.edge_count()};
  std::vector<std::int64_t> dofs(loc.n_pressure());
  const std::int64_t base = pressure.element_offset(elem.id);
  for (int i = 0; i < pressure.interior_block(); ++i) dofs[i] = base + i;
  for (int le = 0; le < elem.edge_count(); ++le) {
    const std::int64_t ebase = pressure.edge_offset(elem.edge_loop[le]);
    for (int i = 0; i < pressure.edge_block(); ++i)
      dofs[loc.p_edge(le, 0) + i] = ebase + i;
  }
  return dofs;
}

DofMap build_dof_map(const PolygonalMesh& mesh, int k) {
  DofMap map;
  map.k = k;
  map.velocity = VelocityLayout(mesh, k);
  map.pressure = PressureLayout(mesh, k);
  map.velocity_on_boundary.assign(map.n_u(), 0);
  for (Index eid : mesh.boundary_edge_ids) {
    const std::int64_t base = map.velocity.edge_offset(eid);
    for (int i = 0; i < map.velocity.edge_block(); ++i)
      map.velocity_on_boundary[base + i] = 1;
  }
  return map;
}

namespace {

Eigen::VectorXd pressure_mass_diagonal(const PolygonalMesh& mesh,
                                       const std::vector<ElementOps>& ops,
                                       const DofMap& dofs) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(dofs.n_p());
  for (const Element& elem : mesh.elements) {
    d.segment(dofs.pressure.element_offset(elem.id), dofs.pressure.interior_block()) =
        ops[elem.id].mass_km1.diagonal();
  }
  for (const Edge& edge : mesh.edges) {
    const EdgeBasis basis(edge.id, dofs.k, edge.length);
    d.segment(dofs.pressure.edge_offset(edge.id), dofs.pressure.edge_block()) =
        basis.mass_diagonal();
  }
  return d;
}

}  // namespace

SaddleSystem assemble(const PolygonalMesh& mesh, const std::vector<ElementOps>& ops,
                      const VectorField& f, const VectorField& g,
                      const AssemblyOptions& options) {
  if (ops.size() != static_cast<std::size_t>(mesh.element_count()))
    throw std::runtime_error("assemble: element cache does not match mesh");
  const int k = ops.front().k;

  SaddleSystem sys;
  sys.k = k;
  sys.viscosity = options.viscosity;
  sys.dofs = build_dof_map(mesh, k);
  sys.local = build_all_local_forms(mesh, ops, options.policy);

  const std::int64_t n_u = sys.dofs.n_u();
  const std::int64_t n_p = sys.dofs.n_p();

  // Load vector (f, v_0): per-element slots, filled in parallel.
  const int nk = poly_space_dim(k);
  std::vector<Eigen::VectorXd> load(mesh.element_count());
  parallel_for(mesh.element_count(), options.policy, [&](std::int64_t i) {
    const ElementOps& eo = ops[i];
    Eigen::VectorXd fx(eo.quad.size()), fy(eo.quad.size());
    for (std::size_t q = 0; q < eo.quad.size(); ++q) {
      const Vec2 fv = f(eo.quad.points[q]);
      fx(static_cast<Eigen::Index>(q)) = eo.quad.weights[q] * fv.x;
      fy(static_cast<Eigen::Index>(q)) = eo.quad.weights[q] * fv.y;
    }
    const Eigen::MatrixXd vk = eo.basis_k.values(eo.quad.points);
    Eigen::VectorXd slot(2 * nk);
    slot.head(nk) = vk.transpose() * fx;
    slot.tail(nk) = vk.transpose() * fy;
    load[i] = std::move(slot);
  });

  sys.F = Eigen::VectorXd::Zero(n_u);
  sys.m = Eigen::VectorXd::Zero(n_p);

  std::vector<Eigen::Triplet<double>> ta, tb, tc;
  for (const Element& elem : mesh.elements) {
    const LocalForms& lf = sys.local[elem.id];
    const auto vdofs = sys.dofs.element_velocity_dofs(elem);
    const auto pdofs = sys.dofs.element_pressure_dofs(elem);
    const int nv = static_cast<int>(vdofs.size());
    const int np = static_cast<int>(pdofs.size());
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j)
        ta.emplace_back(vdofs[i], vdofs[j], options.viscosity * lf.A(i, j));
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < np; ++j)
        if (lf.B(i, j) != 0.0) tb.emplace_back(vdofs[i], pdofs[j], lf.B(i, j));
    for (int i = 0; i < np; ++i)
      for (int j = 0; j < np; ++j) tc.emplace_back(pdofs[i], pdofs[j], lf.C(i, j));

    sys.F.segment(sys.dofs.velocity.element_offset(elem.id), 2 * nk) += load[elem.id];
    sys.m.segment(sys.dofs.pressure.element_offset(elem.id),
                  sys.dofs.pressure.interior_block()) =
        ops[elem.id].interior_integrals_km1;
  }
  sys.A.resize(n_u, n_u);
  sys.A.setFromTriplets(ta.begin(), ta.end());
  sys.B.resize(n_u, n_p);
  sys.B.setFromTriplets(tb.begin(), tb.end());
  sys.C.resize(n_p, n_p);
  sys.C.setFromTriplets(tc.begin(), tc.end());

  // Dirichlet lift u_b = Q_b g on boundary edges.
  sys.u_dirichlet = Eigen::VectorXd::Zero(n_u);
  double flux = 0.0;
  double g_norm_sq = 0.0;
  for (Index eid : mesh.boundary_edge_ids) {
    const Edge& edge = mesh.edges[eid];
    const auto gx = [&](Vec2 p) { return g(p).x; };
    const auto gy = [&](Vec2 p) { return g(p).y; };
    const std::int64_t base = sys.dofs.velocity.edge_offset(eid);
    sys.u_dirichlet.segment(base, k + 1) = project_edge(mesh, edge, gx, k);
    sys.u_dirichlet.segment(base + k + 1, k + 1) = project_edge(mesh, edge, gy, k);

    // Boundary edges have their only incident element on the left, so the
    // stored normal is the domain-outward one.
    const EdgeQuadrature eq = edge_quadrature(mesh, edge, 2 * k + 2);
    for (std::size_t q = 0; q < eq.size(); ++q) {
      const Vec2 gv = g(eq.points[q]);
      flux += eq.weights[q] * gv.dot(edge.normal);
      g_norm_sq += eq.weights[q] * gv.squared_norm();
    }
  }
  sys.pressure_mass_diag = pressure_mass_diagonal(mesh, ops, sys.dofs);

  const double g_norm = std::sqrt(g_norm_sq);
  if (std::abs(flux) > options.compatibility_tol * std::max(g_norm, 1.0)) {
    std::cerr << "wgstokes: warning: boundary data violates the compatibility "
                 "condition, net flux = "
              << flux << "\n";
  }
  return sys;
}

SaddleSystem assemble(const PolygonalMesh& mesh, int k, const VectorField& f,
                      const VectorField& g, const AssemblyOptions& options) {
  const auto ops = build_element_ops(mesh, k, options.policy);
  return assemble(mesh, ops, f, g, options);
}

namespace {

struct ReducedMaps {
  std::vector<std::int64_t> reduced_of_velocity;  // -1 for boundary DOFs
  std::int64_t n_free_u = 0;
  std::int64_t total = 0;  // n_free_u + n_p + 1
};

ReducedMaps build_maps(const DofMap& dofs) {
  ReducedMaps maps;
  maps.reduced_of_velocity.assign(dofs.n_u(), -1);
  std::int64_t next = 0;
  for (std::int64_t i = 0; i < dofs.n_u(); ++i)
    if (!dofs.velocity_on_boundary[i]) maps.reduced_of_velocity[i] = next++;
  maps.n_free_u = next;
  maps.total = next + dofs.n_p() + 1;
  return maps;
}

/// Bordered symmetric system [[A, B, 0], [B^T, -C, m], [0, m^T, 0]] on the
/// free DOFs, with Dirichlet columns moved to the right-hand side.
void build_reduced(const SaddleSystem& sys, const ReducedMaps& maps,
                   Eigen::SparseMatrix<double>& K, Eigen::VectorXd& rhs) {
  const std::int64_t nfu = maps.n_free_u;
  const std::int64_t n_p = sys.dofs.n_p();
  rhs = Eigen::VectorXd::Zero(maps.total);
  for (std::int64_t i = 0; i < sys.dofs.n_u(); ++i) {
    const std::int64_t r = maps.reduced_of_velocity[i];
    if (r >= 0) rhs(r) = sys.F(i);
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(sys.A.nonZeros() + 2 * sys.B.nonZeros() +
                                        sys.C.nonZeros() + 2 * n_p));
  for (int col = 0; col < sys.A.outerSize(); ++col) {
    const std::int64_t cj = maps.reduced_of_velocity[col];
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.A, col); it; ++it) {
      const std::int64_t ri = maps.reduced_of_velocity[it.row()];
      if (ri < 0) continue;  // boundary row dropped
      if (cj >= 0)
        trip.emplace_back(ri, cj, it.value());
      else
        rhs(ri) -= it.value() * sys.u_dirichlet(col);
    }
  }
  for (int col = 0; col < sys.B.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.B, col); it; ++it) {
      const std::int64_t ri = maps.reduced_of_velocity[it.row()];
      const std::int64_t cj = nfu + col;
      if (ri >= 0) {
        trip.emplace_back(ri, cj, it.value());
        trip.emplace_back(cj, ri, it.value());
      } else {
        rhs(cj) -= it.value() * sys.u_dirichlet(it.row());
      }
    }
  }
  for (int col = 0; col < sys.C.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.C, col); it; ++it)
      trip.emplace_back(nfu + it.row(), nfu + col, -it.value());
  for (std::int64_t j = 0; j < n_p; ++j) {
    if (sys.m(j) == 0.0) continue;
    trip.emplace_back(nfu + j, maps.total - 1, sys.m(j));
    trip.emplace_back(maps.total - 1, nfu + j, sys.m(j));
  }
  K.resize(maps.total, maps.total);
  K.setFromTriplets(trip.begin(), trip.end());
}

StokesSolution unpack(const SaddleSystem& sys, const ReducedMaps& maps,
                      const Eigen::VectorXd& x, SolverStats stats) {
  StokesSolution sol;
  sol.u.k = sys.k;
  sol.p.k = sys.k;
  sol.u.coeffs = sys.u_dirichlet;
  for (std::int64_t i = 0; i < sys.dofs.n_u(); ++i) {
    const std::int64_t r = maps.reduced_of_velocity[i];
    if (r >= 0) sol.u.coeffs(i) = x(r);
  }
  sol.p.coeffs = x.segment(maps.n_free_u, sys.dofs.n_p());
  stats.multiplier = x(maps.total - 1);
  stats.residual = full_residual(sys, sol.u.coeffs, sol.p.coeffs, stats.multiplier);
  sol.stats = std::move(stats);
  return sol;
}

/// Preconditioned MINRES (Paige & Saunders) with a positive diagonal
/// preconditioner. Returns the iteration count; appends the preconditioned
/// residual norm of every iteration to `history`.
int minres_solve(const Eigen::SparseMatrix<double>& K, const Eigen::VectorXd& b,
                 const Eigen::VectorXd& precond_diag, double tol, int max_iter,
                 Eigen::VectorXd& x, std::vector<double>& history) {
  const auto apply_minv = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return v.array() / precond_diag.array();
  };
  const std::int64_t n = K.rows();
  x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd r1 = b;
  Eigen::VectorXd y = apply_minv(r1);
  double beta1 = r1.dot(y);
  if (beta1 < 0.0) throw SolverError("minres: preconditioner is not positive");
  if (beta1 == 0.0) return 0;
  beta1 = std::sqrt(beta1);

  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0;
  double phibar = beta1, cs = -1.0, sn = 0.0;
  Eigen::VectorXd r2 = r1;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w2 = Eigen::VectorXd::Zero(n);

  int it = 0;
  for (it = 1; it <= max_iter; ++it) {
    const Eigen::VectorXd v = y / beta;
    y = K * v;
    if (it >= 2) y -= (beta / oldb) * r1;
    const double alfa = v.dot(y);
    y -= (alfa / beta) * r2;
    r1 = r2;
    r2 = y;
    y = apply_minv(r2);
    oldb = beta;
    beta = r2.dot(y);
    if (beta < 0.0) throw SolverError("minres: preconditioner is not positive", history);
    beta = std::sqrt(beta);

    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    double gamma = std::hypot(gbar, beta);
    gamma = std::max(gamma, 1e-300);
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    const Eigen::VectorXd w1 = w2;
    w2 = w;
    w = (v - oldeps * w1 - delta * w2) / gamma;
    x += phi * w;

    history.push_back(phibar / beta1);
    if (phibar <= 0.1 * tol * beta1) break;
  }
  return std::min(it, max_iter);
}

}  // namespace

double full_residual(const SaddleSystem& sys, const Eigen::VectorXd& u,
                     const Eigen::VectorXd& p, double lambda) {
  Eigen::VectorXd ru = sys.A * u + sys.B * p - sys.F;
  Eigen::VectorXd rp = sys.B.transpose() * u - sys.C * p + lambda * sys.m;
  const double rl = sys.m.dot(p);

  Eigen::VectorXd bu = sys.F - sys.A * sys.u_dirichlet;
  const Eigen::VectorXd bp = -(sys.B.transpose() * sys.u_dirichlet);
  double r2 = rl * rl, b2 = 0.0;
  for (std::int64_t i = 0; i < sys.dofs.n_u(); ++i) {
    if (sys.dofs.velocity_on_boundary[i]) continue;
    r2 += ru(i) * ru(i);
    b2 += bu(i) * bu(i);
  }
  r2 += rp.squaredNorm();
  b2 += bp.squaredNorm();
  const double denom = std::sqrt(b2);
  return denom > 0.0 ? std::sqrt(r2) / denom : std::sqrt(r2);
}

CondensedSystem static_condensation(const PolygonalMesh& mesh,
                                    const SaddleSystem& sys) {
  const DofMap& dofs = sys.dofs;
  const int k = sys.k;
  const int nk = poly_space_dim(k);
  const int nkm1 = poly_space_dim(k - 1);
  const std::int64_t n_int_u = static_cast<std::int64_t>(mesh.element_count()) * 2 * nk;
  const std::int64_t n_int_p =
      static_cast<std::int64_t>(mesh.element_count()) * nkm1;

  // Reduced unknowns: free velocity edge DOFs, then pressure edge DOFs,
  // then the mean-zero multiplier.
  std::vector<std::int64_t> reduced_of_vedge(dofs.n_u(), -1);
  std::int64_t next = 0;
  for (std::int64_t i = n_int_u; i < dofs.n_u(); ++i)
    if (!dofs.velocity_on_boundary[i]) reduced_of_vedge[i] = next++;
  const std::int64_t n_vedge_free = next;
  const std::int64_t n_pedge = dofs.n_p() - n_int_p;
  const std::int64_t total = n_vedge_free + n_pedge + 1;

  CondensedSystem red;
  red.n_edge_unknowns = total - 1;
  red.rhs = Eigen::VectorXd::Zero(total);
  red.interior_factor.resize(mesh.element_count());
  red.interior_to_edge.resize(mesh.element_count());
  red.interior_rhs.resize(mesh.element_count());

  std::vector<Eigen::Triplet<double>> trip;

  for (const Element& elem : mesh.elements) {
    const LocalForms& lf = sys.local[elem.id];
    const auto vdofs = dofs.element_velocity_dofs(elem);
    const auto pdofs = dofs.element_pressure_dofs(elem);
    const int nv = static_cast<int>(vdofs.size());
    const int np = static_cast<int>(pdofs.size());
    const int nloc = nv + np;
    const int n_int = 2 * nk + nkm1;

    // Local saddle matrix over [velocity | pressure] in interior-first order:
    // rows 0..2nk: velocity interior, then pressure interior, then the edge
    // blocks. Build index lists into the natural local ordering first.
    Eigen::MatrixXd kt = Eigen::MatrixXd::Zero(nloc, nloc);
    kt.topLeftCorner(nv, nv) = sys.viscosity * lf.A;
    kt.topRightCorner(nv, np) = lf.B;
    kt.bottomLeftCorner(np, nv) = lf.B.transpose();
    kt.bottomRightCorner(np, np) = -lf.C;

    Eigen::VectorXd bt = Eigen::VectorXd::Zero(nloc);
    bt.head(2 * nk) = sys.F.segment(dofs.velocity.element_offset(elem.id), 2 * nk);

    // Local column categories: interior, reduced edge, Dirichlet.
    std::vector<int> interior_idx, edge_idx;
    std::vector<std::int64_t> edge_reduced;
    interior_idx.reserve(n_int);
    for (int i = 0; i < 2 * nk; ++i) interior_idx.push_back(i);
    for (int i = 0; i < nkm1; ++i) interior_idx.push_back(nv + i);
    for (int i = 2 * nk; i < nv; ++i) {
      const std::int64_t gd = vdofs[i];
      if (dofs.velocity_on_boundary[gd]) {
        bt -= kt.col(i) * sys.u_dirichlet(gd);
      } else {
        edge_idx.push_back(i);
        edge_reduced.push_back(reduced_of_vedge[gd]);
      }
    }
    for (int i = nkm1; i < np; ++i) {
      edge_idx.push_back(nv + i);
      edge_reduced.push_back(n_vedge_free + (pdofs[i] - n_int_p));
    }
    // The multiplier column couples to the interior pressure block.
    const int ne_loc = static_cast<int>(edge_idx.size()) + 1;
    edge_reduced.push_back(total - 1);

    Eigen::MatrixXd k_ii(n_int, n_int), k_ie(n_int, ne_loc);
    Eigen::MatrixXd k_ee = Eigen::MatrixXd::Zero(ne_loc, ne_loc);
    Eigen::VectorXd b_i(n_int), b_e = Eigen::VectorXd::Zero(ne_loc);
    for (int a = 0; a < n_int; ++a) {
      b_i(a) = bt(interior_idx[a]);
      for (int b = 0; b < n_int; ++b) k_ii(a, b) = kt(interior_idx[a], interior_idx[b]);
      for (int b = 0; b + 1 < ne_loc; ++b) k_ie(a, b) = kt(interior_idx[a], edge_idx[b]);
    }
    for (int a = 0; a < nkm1; ++a)
      k_ie(2 * nk + a, ne_loc - 1) =
          sys.m(dofs.pressure.element_offset(elem.id) + a);
    for (int a = 0; a + 1 < ne_loc; ++a) {
      b_e(a) = bt(edge_idx[a]);
      for (int b = 0; b + 1 < ne_loc; ++b) k_ee(a, b) = kt(edge_idx[a], edge_idx[b]);
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(k_ii);
    const Eigen::MatrixXd x_ie = lu.solve(k_ie);
    if (!x_ie.allFinite() ||
        (k_ii * x_ie - k_ie).norm() > 1e-8 * std::max(k_ie.norm(), 1.0))
      throw SolverError("static_condensation: interior elimination failed on element " +
                        std::to_string(elem.id));
    const Eigen::MatrixXd schur = k_ee - k_ie.transpose() * x_ie;
    const Eigen::VectorXd g = b_e - k_ie.transpose() * lu.solve(b_i);

    for (int a = 0; a < ne_loc; ++a) {
      red.rhs(edge_reduced[a]) += g(a);
      for (int b = 0; b < ne_loc; ++b)
        trip.emplace_back(edge_reduced[a], edge_reduced[b], schur(a, b));
    }
    red.interior_factor[elem.id] = std::move(lu);
    red.interior_to_edge[elem.id] = k_ie;
    red.interior_rhs[elem.id] = b_i;
  }

  red.K.resize(total, total);
  red.K.setFromTriplets(trip.begin(), trip.end());
  return red;
}

namespace {

StokesSolution solve_condensed(const PolygonalMesh& mesh, const SaddleSystem& sys) {
  CondensedSystem red = static_condensation(mesh, sys);

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(red.K);
  if (lu.info() != Eigen::Success)
    throw SolverError("solve: condensed factorization failed");
  const Eigen::VectorXd xe = lu.solve(red.rhs);

  // Map reduced edge values back, then recover interiors per element.
  const DofMap& dofs = sys.dofs;
  const int k = sys.k;
  const int nk = poly_space_dim(k);
  const int nkm1 = poly_space_dim(k - 1);
  const std::int64_t n_int_u = static_cast<std::int64_t>(mesh.element_count()) * 2 * nk;
  const std::int64_t n_int_p =
      static_cast<std::int64_t>(mesh.element_count()) * nkm1;

  StokesSolution sol;
  sol.u.k = k;
  sol.p.k = k;
  sol.u.coeffs = sys.u_dirichlet;
  sol.p.coeffs = Eigen::VectorXd::Zero(dofs.n_p());

  std::vector<std::int64_t> reduced_of_vedge(dofs.n_u(), -1);
  std::int64_t next = 0;
  for (std::int64_t i = n_int_u; i < dofs.n_u(); ++i)
    if (!dofs.velocity_on_boundary[i]) reduced_of_vedge[i] = next++;
  const std::int64_t n_vedge_free = next;
  for (std::int64_t i = n_int_u; i < dofs.n_u(); ++i)
    if (reduced_of_vedge[i] >= 0) sol.u.coeffs(i) = xe(reduced_of_vedge[i]);
  for (std::int64_t j = n_int_p; j < dofs.n_p(); ++j)
    sol.p.coeffs(j) = xe(n_vedge_free + (j - n_int_p));
  const double lambda = xe(xe.size() - 1);

  for (const Element& elem : mesh.elements) {
    const auto vdofs = dofs.element_velocity_dofs(elem);
    const auto pdofs = dofs.element_pressure_dofs(elem);
    const int nv = static_cast<int>(vdofs.size());
    const int np = static_cast<int>(pdofs.size());
    const int ne_loc = static_cast<int>(red.interior_to_edge[elem.id].cols());
    Eigen::VectorXd xe_loc(ne_loc);
    int slot = 0;
    for (int i = 2 * nk; i < nv; ++i)
      if (!dofs.velocity_on_boundary[vdofs[i]]) xe_loc(slot++) = sol.u.coeffs(vdofs[i]);
    for (int i = nkm1; i < np; ++i) xe_loc(slot++) = sol.p.coeffs(pdofs[i]);
    xe_loc(slot) = lambda;

    const Eigen::VectorXd xi = red.interior_factor[elem.id].solve(
        red.interior_rhs[elem.id] - red.interior_to_edge[elem.id] * xe_loc);
    sol.u.coeffs.segment(dofs.velocity.element_offset(elem.id), 2 * nk) = xi.head(2 * nk);
    sol.p.coeffs.segment(dofs.pressure.element_offset(elem.id), nkm1) = xi.tail(nkm1);
  }

  sol.stats.method = "direct+condensed";
  sol.stats.solved_unknowns = red.K.rows();
  sol.stats.multiplier = lambda;
  sol.stats.residual = full_residual(sys, sol.u.coeffs, sol.p.coeffs, lambda);
  return sol;
}

}  // namespace

StokesSolution solve(const PolygonalMesh& mesh, const SaddleSystem& sys,
                     const SolveOptions& options) {
  if (options.condense) {
    if (options.method != SolverMethod::direct)
      throw SolverError("solve: condensation is only available with the direct solver");
    return solve_condensed(mesh, sys);
  }

  const ReducedMaps maps = build_maps(sys.dofs);
  Eigen::SparseMatrix<double> K;
  Eigen::VectorXd rhs;
  build_reduced(sys, maps, K, rhs);

  if (options.method == SolverMethod::direct) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(K);
    if (lu.info() != Eigen::Success)
      throw SolverError("solve: sparse LU factorization failed");
    const Eigen::VectorXd x = lu.solve(rhs);
    SolverStats stats;
    stats.method = "direct";
    stats.solved_unknowns = K.rows();
    return unpack(sys, maps, x, std::move(stats));
  }

  // MINRES with the block-diagonal preconditioner: diag(A) on velocity,
  // the pressure mass diagonal on pressure, |m| on the multiplier.
  Eigen::VectorXd precond(maps.total);
  for (std::int64_t i = 0; i < sys.dofs.n_u(); ++i) {
    const std::int64_t r = maps.reduced_of_velocity[i];
    if (r >= 0) precond(r) = sys.A.coeff(i, i);
  }
  precond.segment(maps.n_free_u, sys.dofs.n_p()) = sys.pressure_mass_diag;
  precond(maps.total - 1) = std::max(sys.m.norm(), 1e-300);
  for (std::int64_t i = 0; i < maps.total; ++i)
    if (!(precond(i) > 0.0)) precond(i) = 1.0;

  Eigen::VectorXd x;
  std::vector<double> history;
  const int iters =
      minres_solve(K, rhs, precond, options.tolerance, options.max_iterations, x, history);
  SolverStats stats;
  stats.method = "minres";
  stats.iterations = iters;
  stats.solved_unknowns = K.rows();
  stats.residual_history = history;
  StokesSolution sol = unpack(sys, maps, x, std::move(stats));
  if (sol.stats.residual > options.tolerance) {
    throw SolverError("solve: MINRES did not reach tolerance " +
                          std::to_string(options.tolerance) + " after " +
                          std::to_string(iters) + " iterations (residual " +
                          std::to_string(sol.stats.residual) + ")",
                      std::move(sol.stats.residual_history));
  }
  return sol;
}

}  // namespace wgstokes
