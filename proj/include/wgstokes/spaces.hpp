// Coefficient layouts for the weak Galerkin spaces V_h and W_h, and the
// local degree-of-freedom ordering used by every element matrix.
//
// Velocity {v_0, v_b}: per element [P_k(T)]^2 (all x-coefficients, then all
// y-coefficients), then per edge [P_k(e)]^2 (x then y). Pressure {q_0, q_b}:
// per element P_{k-1}(T), then per edge P_k(e). Global vectors store all
// element blocks first, then all edge blocks.

#pragma once

#include <Eigen/Dense>

#include "wgstokes/basis.hpp"
#include "wgstokes/mesh.hpp"

namespace wgstokes {

struct VelocityLayout {
  int k = 1;
  Index n_elements = 0;
  Index n_edges = 0;

  VelocityLayout() = default;
  VelocityLayout(const PolygonalMesh& mesh, int k_)
      : k(k_), n_elements(mesh.element_count()), n_edges(mesh.edge_count()) {}

  int interior_block() const { return 2 * poly_space_dim(k); }
  int edge_block() const { return 2 * (k + 1); }
  std::int64_t element_offset(Index e) const {
    return static_cast<std::int64_t>(e) * interior_block();
  }
  std::int64_t edge_offset(Index eid) const {
    return static_cast<std::int64_t>(n_elements) * interior_block() +
           static_cast<std::int64_t>(eid) * edge_block();
  }
  std::int64_t total() const { return edge_offset(n_edges); }
};

struct PressureLayout {
  int k = 1;
  Index n_elements = 0;
  Index n_edges = 0;

  PressureLayout() = default;
  PressureLayout(const PolygonalMesh& mesh, int k_)
      : k(k_), n_elements(mesh.element_count()), n_edges(mesh.edge_count()) {}

  int interior_block() const { return poly_space_dim(k - 1); }
  int edge_block() const { return k + 1; }
  std::int64_t element_offset(Index e) const {
    return static_cast<std::int64_t>(e) * interior_block();
  }
  std::int64_t edge_offset(Index eid) const {
    return static_cast<std::int64_t>(n_elements) * interior_block() +
           static_cast<std::int64_t>(eid) * edge_block();
  }
  std::int64_t total() const { return edge_offset(n_edges); }
};

/// Coefficients of a weak velocity {v_0, v_b} over the whole mesh.
struct WeakVelocity {
  int k = 1;
  Eigen::VectorXd coeffs;

  static WeakVelocity zero(const VelocityLayout& layout) {
    return {layout.k, Eigen::VectorXd::Zero(layout.total())};
  }
};

/// Coefficients of a weak pressure {q_0, q_b} over the whole mesh.
struct WeakPressure {
  int k = 1;
  Eigen::VectorXd coeffs;

  static WeakPressure zero(const PressureLayout& layout) {
    return {layout.k, Eigen::VectorXd::Zero(layout.total())};
  }
};

/// Local DOF ordering on one element with ne edges.
struct LocalDofs {
  int k = 1;
  int n_edges = 0;

  int nk() const { return poly_space_dim(k); }
  int nkm1() const { return poly_space_dim(k - 1); }
  int edge_dim() const { return k + 1; }

  int n_velocity() const { return 2 * nk() + n_edges * 2 * edge_dim(); }
  int n_pressure() const { return nkm1() + n_edges * edge_dim(); }

  // comp: 0 = x, 1 = y.
  int v_int(int comp, int a) const { return comp * nk() + a; }
  int v_edge(int local_edge, int comp, int j) const {
    return 2 * nk() + local_edge * 2 * edge_dim() + comp * edge_dim() + j;
  }
  int p_int(int a) const { return a; }
  int p_edge(int local_edge, int j) const {
    return nkm1() + local_edge * edge_dim() + j;
  }
};

/// Gathers the local velocity coefficient vector of one element.
Eigen::VectorXd gather_velocity_local(const VelocityLayout& layout,
                                      const Element& elem,
                                      const Eigen::VectorXd& global);

Eigen::VectorXd gather_pressure_local(const PressureLayout& layout,
                                      const Element& elem,
                                      const Eigen::VectorXd& global);

}  // namespace wgstokes
