#include "biofilm/solver.hpp"

namespace biofilm {

BlockTridiagonalMatrix assemble_jacobian(const State& x, std::span<const double> u_bar,
                                         const Grid& grid, double dt, const SchemeConfig& cfg,
                                         TimeFormula formula) {
  const int n = grid.n_cells();
  if (x.size() != static_cast<std::size_t>(n) || u_bar.size() != x.size()) {
    throw std::invalid_argument("jacobian: array sizes do not match the grid");
  }
  const ScaledParams& p = cfg.params;
  const double dx = grid.dx();
  const double a0 = time_weights(formula).a0 * dx / dt;
  const bool implicit = cfg.treatment == CoefficientTreatment::Implicit;
  const bool wz = cfg.model == Model::WangZhang;
  const std::span<const double> coef_u = implicit ? std::span<const double>(x.u) : u_bar;
  const double gamma1 = cfg.gradient_weight();

  BlockTridiagonalMatrix jac(n);

  // Reaction and time-derivative terms.
  for (int i = 0; i < n; ++i) {
    Block3& b = jac.diag(i);
    const double u = x.u[i];
    const double v = x.v[i];
    const double monod = p.Rp0 * v / (p.K + v);
    const double monod_dv = p.Rp0 * p.K / ((p.K + v) * (p.K + v));
    if (wz) {
      const double kt = p.K_tilde + v;
      b(kV, kV) = a0 * (1.0 - u) + dx * u * p.Rc0 * p.K_tilde / (kt * kt);
      b(kV, kU) = -a0 * v + dx * p.Rc0 * v / kt;
      b(kU, kU) = a0 - dx * monod;
      b(kU, kV) = -dx * u * monod_dv;
    } else {
      b(kV, kV) = a0 + dx * p.Rc0 * u;
      b(kV, kU) = dx * p.Rc0 * v;
      b(kU, kU) = a0 - dx * (1.0 - 2.0 * u) * monod;
      b(kU, kV) = -dx * u * (1.0 - u) * monod_dv;
    }
    b(kMu, kMu) = -dx;
  }

  // Face fluxes: flux q through face (i, j = i+1) enters row i with + and row j with -.
  for (int i = 0; i + 1 < n; ++i) {
    const int j = i + 1;
    Block3& ii = jac.diag(i);
    Block3& jj = jac.diag(j);
    Block3& ij = jac.upper(i);
    Block3& ji = jac.lower(i);

    const double uf = face_average(coef_u[i], coef_u[j]);

    // G = -D0 D_+(uf) (v_j - v_i) / dx
    const double g_coef = p.D0 * truncated_diffusivity(uf) / dx;
    ii(kV, kV) += g_coef;
    ij(kV, kV) -= g_coef;
    ji(kV, kV) -= g_coef;
    jj(kV, kV) += g_coef;

    // F = -M0 m(uf) (mu_j - mu_i) / dx
    const double m = wz ? uf : mobility(uf);
    const double f_coef = p.M0 * m / dx;
    ii(kU, kMu) += f_coef;
    ij(kU, kMu) -= f_coef;
    ji(kU, kMu) -= f_coef;
    jj(kU, kMu) += f_coef;

    // H = -gamma1 (u_j - u_i) / dx
    const double h_coef = gamma1 / dx;
    ii(kMu, kU) += h_coef;
    ij(kMu, kU) -= h_coef;
    ji(kMu, kU) -= h_coef;
    jj(kMu, kU) += h_coef;

    if (implicit) {
      // d(flux)/du_i = d(flux)/du_j through the face average.
      const double dg = -p.D0 * truncated_diffusivity_d1(uf) * 0.5 * (x.v[j] - x.v[i]) / dx;
      const double dm = wz ? 1.0 : mobility_d1(uf);
      const double df = -p.M0 * dm * 0.5 * (x.mu[j] - x.mu[i]) / dx;
      ii(kV, kU) += dg;
      ij(kV, kU) += dg;
      ji(kV, kU) -= dg;
      jj(kV, kU) -= dg;
      ii(kU, kU) += df;
      ij(kU, kU) += df;
      ji(kU, kU) -= df;
      jj(kU, kU) -= df;
    }
  }
  return jac;
}

BlockTridiagonalMatrix assemble_jacobian(const State& candidate, const History& history,
                                         std::span<const double> u_bar, const Grid& grid,
                                         double dt, const SchemeConfig& cfg) {
  const TimeFormula formula =
      history.step_index < 2 ? TimeFormula::ImplicitEuler : TimeFormula::Bdf2;
  return assemble_jacobian(candidate, u_bar, grid, dt, cfg, formula);
}

}  // namespace biofilm
