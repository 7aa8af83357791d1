#include "wgstokes/basis.hpp"

#include <cmath>

namespace wgstokes {

ElementBasis::ElementBasis(Index element_id, int degree, const Vec2& center,
                           double diameter)
    : element_id_(element_id), degree_(degree), center_(center), scale_(diameter) {
  exponents_.reserve(static_cast<std::size_t>(dim()));
  for (int d = 0; d <= degree; ++d)
    for (int ax = d; ax >= 0; --ax) exponents_.emplace_back(ax, d - ax);
}

namespace {

inline double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

}  // namespace

Eigen::MatrixXd ElementBasis::values(const std::vector<Vec2>& points) const {
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd v(n, dim());
  for (int p = 0; p < n; ++p) {
    const double xh = (points[p].x - center_.x) / scale_;
    const double yh = (points[p].y - center_.y) / scale_;
    for (int a = 0; a < dim(); ++a)
      v(p, a) = ipow(xh, exponents_[a].first) * ipow(yh, exponents_[a].second);
  }
  return v;
}

void ElementBasis::gradients(const std::vector<Vec2>& points, Eigen::MatrixXd& gx,
                             Eigen::MatrixXd& gy) const {
  const int n = static_cast<int>(points.size());
  gx.resize(n, dim());
  gy.resize(n, dim());
  for (int p = 0; p < n; ++p) {
    const double xh = (points[p].x - center_.x) / scale_;
    const double yh = (points[p].y - center_.y) / scale_;
    for (int a = 0; a < dim(); ++a) {
      const int ax = exponents_[a].first;
      const int ay = exponents_[a].second;
      gx(p, a) = ax == 0 ? 0.0 : ax / scale_ * ipow(xh, ax - 1) * ipow(yh, ay);
      gy(p, a) = ay == 0 ? 0.0 : ay / scale_ * ipow(xh, ax) * ipow(yh, ay - 1);
    }
  }
}

double ElementBasis::value_at(int a, const Vec2& p) const {
  const double xh = (p.x - center_.x) / scale_;
  const double yh = (p.y - center_.y) / scale_;
  return ipow(xh, exponents_[a].first) * ipow(yh, exponents_[a].second);
}

Eigen::MatrixXd EdgeBasis::values(const std::vector<double>& t) const {
  const int n = static_cast<int>(t.size());
  Eigen::MatrixXd v(n, dim());
  for (int p = 0; p < n; ++p) {
    v(p, 0) = 1.0;
    if (degree_ >= 1) v(p, 1) = t[p];
    for (int j = 2; j <= degree_; ++j)
      v(p, j) = ((2.0 * j - 1.0) * t[p] * v(p, j - 1) - (j - 1.0) * v(p, j - 2)) / j;
  }
  return v;
}

Eigen::VectorXd EdgeBasis::mass_diagonal() const {
  Eigen::VectorXd d(dim());
  for (int j = 0; j <= degree_; ++j) d(j) = length_ / (2.0 * j + 1.0);
  return d;
}

ElementBasis make_element_basis(const Element& elem, int degree) {
  return ElementBasis(elem.id, degree, elem.centroid, elem.diameter);
}

EdgeBasis make_edge_basis(const Edge& edge, int degree) {
  return EdgeBasis(edge.id, degree, edge.length);
}

Eigen::MatrixXd element_mass_matrix(const ElementBasis& basis,
                                    const QuadratureRule& quad) {
  const Eigen::MatrixXd v = basis.values(quad.points);
  const Eigen::Map<const Eigen::VectorXd> w(quad.weights.data(),
                                            static_cast<Eigen::Index>(quad.weights.size()));
  Eigen::MatrixXd m = v.transpose() * w.asDiagonal() * v;
  // Symmetrize away roundoff.
  m = 0.5 * (m + m.transpose()).eval();
  return m;
}

}  // namespace wgstokes
