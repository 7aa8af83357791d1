#include "wgstokes/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>

namespace wgstokes {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vec(const std::vector<double>& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

struct ElementTerms {
  double grad = 0.0;       // int_T |grad_w e|^2
  double jump_u = 0.0;     // h_T^{-1} int_dT |e_0 - e_b|^2
  double l2_u = 0.0;       // int_T |e_0|^2
  double l2_p = 0.0;       // int_T |eps_0|^2
  double jump_p = 0.0;     // h_T int_dT |eps_0 - eps_b|^2
  double wg_p = 0.0;       // own-quadrature evaluation of the wg norm terms
};

}  // namespace

ErrorReport weak_function_norms(const PolygonalMesh& mesh,
                                const std::vector<ElementOps>& ops,
                                const WeakVelocity& ev, const WeakPressure& ep,
                                ParallelPolicy policy) {
  const int k = ops.front().k;
  const VelocityLayout vlayout(mesh, k);
  const PressureLayout playout(mesh, k);

  std::vector<ElementTerms> terms(mesh.element_count());
  parallel_for(mesh.element_count(), policy, [&](std::int64_t i) {
    const Element& elem = mesh.elements[i];
    const ElementOps& eo = ops[i];
    const int nk = eo.local.nk();
    const int nkm1 = eo.local.nkm1();
    ElementTerms t;

    const Eigen::VectorXd ve = gather_velocity_local(vlayout, elem, ev.coeffs);
    const Eigen::VectorXd pe = gather_pressure_local(playout, elem, ep.coeffs);

    const Eigen::VectorXd g = eo.grad_v * ve;
    for (int c = 0; c < 4; ++c) {
      const auto gc = g.segment(c * nkm1, nkm1);
      t.grad += gc.dot(eo.mass_km1 * gc);
    }
    for (int comp = 0; comp < 2; ++comp) {
      const auto e0 = ve.segment(comp * nk, nk);
      t.l2_u += e0.dot(eo.mass_k * e0);
    }
    t.l2_p = pe.head(nkm1).dot(eo.mass_km1 * pe.head(nkm1));

    // wg_p interior part evaluated by quadrature, independent of the mass
    // matrix route above.
    {
      const Eigen::MatrixXd vkm1 = eo.basis_km1.values(eo.quad.points);
      const Eigen::VectorXd vals = vkm1 * pe.head(nkm1);
      t.wg_p += vals.array().square().matrix().dot(as_vec(eo.quad.weights));
    }

    for (int le = 0; le < elem.edge_count(); ++le) {
      const EdgeQuadrature& eq = eo.edge_quads[le];
      const Eigen::Map<const Eigen::VectorXd> we = as_vec(eq.weights);
      const Eigen::MatrixXd trace_k = eo.basis_k.values(eq.points);
      const Eigen::MatrixXd trace_km1 = eo.basis_km1.values(eq.points);
      const Eigen::MatrixXd leg = eo.edge_bases[le].values(eq.t);

      for (int comp = 0; comp < 2; ++comp) {
        const Eigen::VectorXd jump =
            trace_k * ve.segment(comp * nk, nk) -
            leg * ve.segment(eo.local.v_edge(le, comp, 0), eo.local.edge_dim());
        t.jump_u += jump.array().square().matrix().dot(we) / elem.diameter;
      }
      const Eigen::VectorXd jump_p =
          trace_km1 * pe.head(nkm1) -
          leg * pe.segment(eo.local.p_edge(le, 0), eo.local.edge_dim());
      const double c_term = jump_p.array().square().matrix().dot(we) * elem.diameter;
      t.jump_p += c_term;
      t.wg_p += c_term;
    }
    terms[i] = t;
  });

  // Deterministic serial reduction in element order.
  double grad = 0, jump_u = 0, l2_u = 0, l2_p = 0, jump_p = 0, wg_p = 0;
  for (const ElementTerms& t : terms) {
    grad += t.grad;
    jump_u += t.jump_u;
    l2_u += t.l2_u;
    l2_p += t.l2_p;
    jump_p += t.jump_p;
    wg_p += t.wg_p;
  }

  ErrorReport report;
  report.h = mesh.h;
  report.energy_u = std::sqrt(grad + jump_u);
  report.l2_u = std::sqrt(l2_u);
  report.l2_p = std::sqrt(l2_p);
  report.seminorm_p = std::sqrt(jump_p);
  report.wg_p = std::sqrt(wg_p);
  return report;
}

ErrorReport compute_errors(const PolygonalMesh& mesh,
                           const std::vector<ElementOps>& ops,
                           const StokesSolution& solution, const VectorField& exact_u,
                           const ScalarField& exact_p, ParallelPolicy policy) {
  WeakVelocity ev = project_Qh(mesh, ops, exact_u);
  ev.coeffs -= solution.u.coeffs;
  WeakPressure ep = project_Qh_pressure(mesh, ops, exact_p);
  ep.coeffs -= solution.p.coeffs;
  return weak_function_norms(mesh, ops, ev, ep, policy);
}

namespace {

double ls_slope(const std::vector<double>& h, const std::vector<double>& e) {
  // slope of log(e) vs log(h)
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(e[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double table_slope(const ConvergenceTable& t, double ErrorReport::* field) {
  std::vector<double> h, e;
  for (const ConvergenceRow& row : t.rows) {
    h.push_back(row.errors.h);
    e.push_back(row.errors.*field);
  }
  return ls_slope(h, e);
}

}  // namespace

double ConvergenceTable::slope_energy_u() const {
  return table_slope(*this, &ErrorReport::energy_u);
}
double ConvergenceTable::slope_l2_u() const {
  return table_slope(*this, &ErrorReport::l2_u);
}
double ConvergenceTable::slope_wg_p() const {
  return table_slope(*this, &ErrorReport::wg_p);
}
double ConvergenceTable::slope_l2_p() const {
  return table_slope(*this, &ErrorReport::l2_p);
}

void fill_orders(ConvergenceTable& table) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    ConvergenceRow& row = table.rows[i];
    if (i == 0) {
      row.order_energy_u = row.order_l2_u = row.order_wg_p = row.order_l2_p = nan;
      continue;
    }
    const ErrorReport& prev = table.rows[i - 1].errors;
    const ErrorReport& cur = row.errors;
    const double ratio = prev.h / cur.h;
    if (std::abs(ratio - 2.0) > 1e-9) {
      row.order_energy_u = row.order_l2_u = row.order_wg_p = row.order_l2_p = nan;
      continue;
    }
    row.order_energy_u = std::log2(prev.energy_u / cur.energy_u);
    row.order_l2_u = std::log2(prev.l2_u / cur.l2_u);
    row.order_wg_p = std::log2(prev.wg_p / cur.wg_p);
    row.order_l2_p = std::log2(prev.l2_p / cur.l2_p);
  }
}

void print_table(const ConvergenceTable& table, std::ostream& out) {
  const auto fmt_order = [](double o) {
    char buf[16];
    if (std::isnan(o)) return std::string("   --  ");
    std::snprintf(buf, sizeof(buf), "%7.4f", o);
    return std::string(buf);
  };
  out << "   1/h   |  |||e_h|||  |  order  |   ||e_h||   |  order  |"
         "  |||eps|||_0 |  order  |   ||eps||   |  order\n";
  for (const ConvergenceRow& row : table.rows) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%8.2f | %11.4e | %s | %11.4e | %s | %11.4e | %s | %11.4e | %s\n",
                  1.0 / row.errors.h, row.errors.energy_u,
                  fmt_order(row.order_energy_u).c_str(), row.errors.l2_u,
                  fmt_order(row.order_l2_u).c_str(), row.errors.wg_p,
                  fmt_order(row.order_wg_p).c_str(), row.errors.l2_p,
                  fmt_order(row.order_l2_p).c_str());
    out << buf;
  }
}

void write_csv(const ConvergenceTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << "h,energy_u,order,l2_u,order,wg_p,order,l2_p,order\n";
  out.precision(12);
  for (const ConvergenceRow& row : table.rows) {
    const auto ord = [&](double o) { return std::isnan(o) ? std::string() : std::to_string(o); };
    out << row.errors.h << "," << row.errors.energy_u << "," << ord(row.order_energy_u)
        << "," << row.errors.l2_u << "," << ord(row.order_l2_u) << "," << row.errors.wg_p
        << "," << ord(row.order_wg_p) << "," << row.errors.l2_p << ","
        << ord(row.order_l2_p) << "\n";
  }
}

}  // namespace wgstokes
