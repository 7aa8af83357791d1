// Built-in Stokes problems on the unit square: two manufactured solutions
// with closed-form body force f = -laplace(u) + grad(p), and the lid-driven
// cavity (f = 0, piecewise boundary data, no exact solution).

#pragma once

#include <string>

#include "wgstokes/projections.hpp"

namespace wgstokes {

struct StokesProblem {
  std::string name;
  VectorField f;
  VectorField g;        // Dirichlet boundary velocity (trace of u when exact)
  VectorField exact_u;  // empty when the solution is unknown
  ScalarField exact_p;
  Rect domain = Rect::unit_square();

  bool has_exact() const { return static_cast<bool>(exact_u); }
};

/// u = (sin(pi x) sin(pi y), cos(pi x) cos(pi y)), p = 2 cos(pi x) sin(pi y).
StokesProblem builtin_example71();

/// u = (2 pi sin^2(pi x) cos(pi y) sin(pi y),
///      -2 pi sin(pi x) cos(pi x) sin^2(pi y)), p = cos(pi x) cos(pi y).
StokesProblem builtin_example72();

enum class LidSide { x0, x1, y0, y1 };

LidSide lid_side_from_string(const std::string& s);
std::string to_string(LidSide side);

/// Lid-driven cavity: f = 0 and a moving wall on one side of the unit
/// square. The wall moves tangentially (+y on vertical sides, +x on
/// horizontal ones) with the given speed, so the compatibility condition
/// holds; the data is discontinuous at the wall's two corners.
StokesProblem builtin_cavity(LidSide side = LidSide::x1, double lid_speed = 1.0);

}  // namespace wgstokes
