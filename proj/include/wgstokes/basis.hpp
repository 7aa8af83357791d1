// Scaled monomial bases on elements and Legendre bases on edges.

#pragma once

#include <Eigen/Dense>

#include "wgstokes/mesh.hpp"
#include "wgstokes/quadrature.hpp"

namespace wgstokes {

inline int poly_space_dim(int degree) { return (degree + 1) * (degree + 2) / 2; }

/// Scaled monomials m_a(x) = ((x-x_T)/h_T)^ax ((y-y_T)/h_T)^ay, |a| <= k,
/// ordered by total degree, then by descending x-exponent within a degree
/// (1, xh, yh, xh^2, xh*yh, yh^2, ...).
class ElementBasis {
 public:
  ElementBasis() = default;
  ElementBasis(Index element_id, int degree, const Vec2& center, double diameter);

  Index element_id() const { return element_id_; }
  int degree() const { return degree_; }
  int dim() const { return poly_space_dim(degree_); }
  const Vec2& center() const { return center_; }
  double scale() const { return scale_; }

  /// Values at the given points; (npts x dim).
  Eigen::MatrixXd values(const std::vector<Vec2>& points) const;
  /// Gradient components at the given points; each (npts x dim).
  void gradients(const std::vector<Vec2>& points, Eigen::MatrixXd& gx,
                 Eigen::MatrixXd& gy) const;

  double value_at(int a, const Vec2& p) const;

 private:
  Index element_id_ = 0;
  int degree_ = 0;
  Vec2 center_;
  double scale_ = 1.0;
  std::vector<std::pair<int, int>> exponents_;
};

/// Legendre polynomials in the reference coordinate t in [-1, 1] (signed
/// arc length from the edge midpoint over half the length, following the
/// stored edge direction v0 -> v1). Orthogonal, so the edge mass matrix is
/// diagonal with entries length/(2n+1).
class EdgeBasis {
 public:
  EdgeBasis() = default;
  EdgeBasis(Index edge_id, int degree, double length)
      : edge_id_(edge_id), degree_(degree), length_(length) {}

  Index edge_id() const { return edge_id_; }
  int degree() const { return degree_; }
  int dim() const { return degree_ + 1; }
  double length() const { return length_; }

  /// Values at reference coordinates; (npts x dim).
  Eigen::MatrixXd values(const std::vector<double>& t) const;
  /// Diagonal of the (exactly known) edge mass matrix.
  Eigen::VectorXd mass_diagonal() const;

 private:
  Index edge_id_ = 0;
  int degree_ = 0;
  double length_ = 0.0;
};

ElementBasis make_element_basis(const Element& elem, int degree);
EdgeBasis make_edge_basis(const Edge& edge, int degree);

/// Gram matrix int_T m_i m_j via the given rule (exactness >= 2k needed).
Eigen::MatrixXd element_mass_matrix(const ElementBasis& basis,
                                    const QuadratureRule& quad);

}  // namespace wgstokes
