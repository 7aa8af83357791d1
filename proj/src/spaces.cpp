#include "wgstokes/spaces.hpp"

namespace wgstokes {

Eigen::VectorXd gather_velocity_local(const VelocityLayout& layout,
                                      const Element& elem,
                                      const Eigen::VectorXd& global) {
  const LocalDofs loc{layout.k, elem.edge_count()};
  Eigen::VectorXd out(loc.n_velocity());
  out.head(layout.interior_block()) =
      global.segment(layout.element_offset(elem.id), layout.interior_block());
  for (int le = 0; le < elem.edge_count(); ++le) {
    out.segment(loc.v_edge(le, 0, 0), layout.edge_block()) =
        global.segment(layout.edge_offset(elem.edge_loop[le]), layout.edge_block());
  }
  return out;
}

Eigen::VectorXd gather_pressure_local(const PressureLayout& layout,
                                      const Element& elem,
                                      const Eigen::VectorXd& global) {
  const LocalDofs loc{layout.k, elem.edge_count()};
  Eigen::VectorXd out(loc.n_pressure());
  out.head(layout.interior_block()) =
      global.segment(layout.element_offset(elem.id), layout.interior_block());
  for (int le = 0; le < elem.edge_count(); ++le) {
    out.segment(loc.p_edge(le, 0), layout.edge_block()) =
        global.segment(layout.edge_offset(elem.edge_loop[le]), layout.edge_block());
  }
  return out;
}

}  // namespace wgstokes
