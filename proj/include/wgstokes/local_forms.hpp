// Per-element matrices of the four bilinear forms:
//   s(w,v) = h_T^{-1} <w_0 - w_b, v_0 - v_b>_{dT}      (stabilizer)
//   a(w,v) = (grad_w w, grad_w v)_T + s(w,v)
//   b(w,q) = (w_0, grad_w q)_T
//   c(r,q) = h_T <r_0 - r_b, q_0 - q_b>_{dT}

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wgstokes/element_ops.hpp"

namespace wgstokes {

struct LocalForms {
  Eigen::MatrixXd A;  // n_velocity x n_velocity, symmetric PSD
  Eigen::MatrixXd B;  // n_velocity x n_pressure (nonzero on interior velocity rows)
  Eigen::MatrixXd C;  // n_pressure x n_pressure, symmetric PSD
  Eigen::MatrixXd S;  // stabilizer part of A, kept for diagnostics
};

Eigen::MatrixXd local_stabilizer_s(const Element& elem, const ElementOps& ops);
Eigen::MatrixXd local_grad_a(const ElementOps& ops, const Eigen::MatrixXd& stabilizer);
Eigen::MatrixXd local_b(const ElementOps& ops);
Eigen::MatrixXd local_c(const Element& elem, const ElementOps& ops);

LocalForms build_local_forms(const Element& elem, const ElementOps& ops);

std::vector<LocalForms> build_all_local_forms(
    const PolygonalMesh& mesh, const std::vector<ElementOps>& ops,
    ParallelPolicy policy = ParallelPolicy::openmp);

}  // namespace wgstokes
