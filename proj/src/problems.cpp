#include "wgstokes/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace wgstokes {

namespace {
constexpr double pi = M_PI;
}

StokesProblem builtin_example71() {
  StokesProblem prob;
  prob.name = "example71";
  prob.exact_u = [](Vec2 p) {
    return Vec2{std::sin(pi * p.x) * std::sin(pi * p.y),
                std::cos(pi * p.x) * std::cos(pi * p.y)};
  };
  prob.exact_p = [](Vec2 p) { return 2.0 * std::cos(pi * p.x) * std::sin(pi * p.y); };
  // f = -laplace(u) + grad(p) with laplace(u) = -2 pi^2 u here.
  prob.f = [](Vec2 p) {
    const double sx = std::sin(pi * p.x), sy = std::sin(pi * p.y);
    const double cx = std::cos(pi * p.x), cy = std::cos(pi * p.y);
    return Vec2{2.0 * pi * pi * sx * sy - 2.0 * pi * sx * sy,
                2.0 * pi * pi * cx * cy + 2.0 * pi * cx * cy};
  };
  prob.g = prob.exact_u;
  return prob;
}

StokesProblem builtin_example72() {
  StokesProblem prob;
  prob.name = "example72";
  prob.exact_u = [](Vec2 p) {
    const double sx = std::sin(pi * p.x), sy = std::sin(pi * p.y);
    const double cx = std::cos(pi * p.x), cy = std::cos(pi * p.y);
    return Vec2{2.0 * pi * sx * sx * cy * sy, -2.0 * pi * sx * cx * sy * sy};
  };
  prob.exact_p = [](Vec2 p) { return std::cos(pi * p.x) * std::cos(pi * p.y); };
  // With u1 = pi sin^2(pi x) sin(2 pi y) and u2 = -pi sin(2 pi x) sin^2(pi y):
  prob.f = [](Vec2 p) {
    const double pi3 = pi * pi * pi;
    const double s2x = std::sin(2.0 * pi * p.x), c2x = std::cos(2.0 * pi * p.x);
    const double s2y = std::sin(2.0 * pi * p.y), c2y = std::cos(2.0 * pi * p.y);
    const double sx = std::sin(pi * p.x), sy = std::sin(pi * p.y);
    const double cx = std::cos(pi * p.x), cy = std::cos(pi * p.y);
    return Vec2{4.0 * pi3 * sx * sx * s2y - 2.0 * pi3 * c2x * s2y - pi * sx * cy,
                -4.0 * pi3 * s2x * sy * sy + 2.0 * pi3 * s2x * c2y - pi * cx * sy};
  };
  prob.g = prob.exact_u;
  return prob;
}

LidSide lid_side_from_string(const std::string& s) {
  if (s == "x0") return LidSide::x0;
  if (s == "x1") return LidSide::x1;
  if (s == "y0") return LidSide::y0;
  if (s == "y1") return LidSide::y1;
  throw std::invalid_argument("lid side must be one of x0, x1, y0, y1 (got '" + s + "')");
}

std::string to_string(LidSide side) {
  switch (side) {
    case LidSide::x0: return "x0";
    case LidSide::x1: return "x1";
    case LidSide::y0: return "y0";
    case LidSide::y1: return "y1";
  }
  return "?";
}

StokesProblem builtin_cavity(LidSide side, double lid_speed) {
  StokesProblem prob;
  prob.name = "cavity";
  prob.f = [](Vec2) { return Vec2{0.0, 0.0}; };
  const Rect box = prob.domain;
  // Boundary data is evaluated edgewise at quadrature points, which are
  // interior to each edge, so the corner discontinuities are never sampled.
  prob.g = [side, lid_speed, box](Vec2 p) {
    const double tol = 1e-12;
    switch (side) {
      case LidSide::x0:
        return std::abs(p.x - box.x0) < tol ? Vec2{0.0, lid_speed} : Vec2{0.0, 0.0};
      case LidSide::x1:
        return std::abs(p.x - box.x1) < tol ? Vec2{0.0, lid_speed} : Vec2{0.0, 0.0};
      case LidSide::y0:
        return std::abs(p.y - box.y0) < tol ? Vec2{lid_speed, 0.0} : Vec2{0.0, 0.0};
      case LidSide::y1:
        return std::abs(p.y - box.y1) < tol ? Vec2{lid_speed, 0.0} : Vec2{0.0, 0.0};
    }
    return Vec2{0.0, 0.0};
  };
  return prob;
}

}  // namespace wgstokes
