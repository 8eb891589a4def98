#include "biofilm/scheme.hpp"

#include <cmath>

namespace biofilm {

Grid::Grid(int n_cells) : n_(n_cells), dx_(0.0) {
  if (n_cells < 1) throw std::invalid_argument("grid needs at least one cell");
  dx_ = 1.0 / n_cells;
}

std::vector<double> Grid::centers() const {
  std::vector<double> x(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) x[i] = center(i);
  return x;
}

std::vector<double> pack(const State& s) {
  std::vector<double> x(kFieldsPerCell * s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    x[kFieldsPerCell * i + kV] = s.v[i];
    x[kFieldsPerCell * i + kU] = s.u[i];
    x[kFieldsPerCell * i + kMu] = s.mu[i];
  }
  return x;
}

State unpack(std::span<const double> x) {
  if (x.size() % kFieldsPerCell != 0) {
    throw std::invalid_argument("packed state length is not a multiple of 3");
  }
  State s(x.size() / kFieldsPerCell);
  for (std::size_t i = 0; i < s.size(); ++i) {
    s.v[i] = x[kFieldsPerCell * i + kV];
    s.u[i] = x[kFieldsPerCell * i + kU];
    s.mu[i] = x[kFieldsPerCell * i + kMu];
  }
  return s;
}

void SchemeConfig::validate() const {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::invalid_argument("delta must lie in (0, 1/2)");
  }
  params.validate();
}

std::string to_string(Model m) {
  return m == Model::VolumeFilling ? "this-paper" : "wang-zhang";
}

std::string to_string(CoefficientTreatment t) {
  return t == CoefficientTreatment::Extrapolated ? "extrapolated" : "implicit";
}

std::vector<double> extrapolate(const History& history) {
  const auto& a = history.prev.u;
  if (history.step_index < 2) return a;
  const auto& b = history.prev2.u;
  if (a.size() != b.size()) throw std::invalid_argument("history levels differ in size");
  std::vector<double> u_bar(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) u_bar[i] = 2.0 * a[i] - b[i];
  return u_bar;
}

std::vector<double> chemical_potential(std::span<const double> u, const Grid& grid,
                                       const SchemeConfig& cfg) {
  const int n = grid.n_cells();
  const double dx = grid.dx();
  const PotentialParams pot = cfg.potential();
  std::vector<double> mu(u.size());
  for (int i = 0; i < n; ++i) {
    const double h_right = i + 1 < n ? flux_H(u[i], u[i + 1], dx, cfg) : 0.0;
    const double h_left = i > 0 ? flux_H(u[i - 1], u[i], dx, cfg) : 0.0;
    mu[i] = (h_right - h_left) / dx + cfg.potential_weight() * truncated_potential_d1(u[i], pot);
  }
  return mu;
}

void assemble_residual(const State& x, const State& prev, const State& prev2,
                       std::span<const double> u_bar, const Grid& grid, double dt,
                       const SchemeConfig& cfg, TimeFormula formula, std::span<double> out) {
  const int n = grid.n_cells();
  const auto nn = static_cast<std::size_t>(n);
  if (!x.consistent() || x.size() != nn || prev.size() != nn || u_bar.size() != nn ||
      out.size() != kFieldsPerCell * nn) {
    throw std::invalid_argument("residual: array sizes do not match the grid");
  }
  const bool bdf2 = formula == TimeFormula::Bdf2;
  if (bdf2 && prev2.size() != nn) throw std::invalid_argument("residual: missing level k-2");

  const ScaledParams& p = cfg.params;
  const TimeWeights w = time_weights(formula);
  const double dx = grid.dx();
  const double mass = dx / dt;
  const bool implicit = cfg.treatment == CoefficientTreatment::Implicit;
  const bool wz = cfg.model == Model::WangZhang;
  const std::span<const double> coef_u = implicit ? std::span<const double>(x.u) : u_bar;
  const PotentialParams pot = cfg.potential();
  const double gamma2 = cfg.potential_weight();

  auto time_term = [&](const std::vector<double>& now, const std::vector<double>& k1,
                       const std::vector<double>& k2, int i) {
    double d = w.a0 * now[i] + w.a1 * k1[i];
    if (bdf2) d += w.a2 * k2[i];
    return mass * d;
  };

  // Flux through the left face of cell i carried over from the previous iteration.
  double g_left = 0.0, f_left = 0.0, h_left = 0.0;
  for (int i = 0; i < n; ++i) {
    double g_right = 0.0, f_right = 0.0, h_right = 0.0;
    if (i + 1 < n) {
      const double uf = face_average(coef_u[i], coef_u[i + 1]);
      g_right = flux_G(uf, x.v[i], x.v[i + 1], dx, p);
      f_right = wz ? flux_F_wang_zhang(uf, x.mu[i], x.mu[i + 1], dx, p)
                   : flux_F(uf, x.mu[i], x.mu[i + 1], dx, p);
      h_right = flux_H(x.u[i], x.u[i + 1], dx, cfg);
    }

    const double u = x.u[i];
    const double v = x.v[i];
    const double production = p.Rp0 * v / (p.K + v);

    double rv, ru;
    if (wz) {
      double dw = w.a0 * (1.0 - u) * v + w.a1 * (1.0 - prev.u[i]) * prev.v[i];
      if (bdf2) dw += w.a2 * (1.0 - prev2.u[i]) * prev2.v[i];
      rv = mass * dw + g_right - g_left + dx * u * p.Rc0 * v / (p.K_tilde + v);
      ru = time_term(x.u, prev.u, prev2.u, i) + f_right - f_left - dx * u * production;
    } else {
      rv = time_term(x.v, prev.v, prev2.v, i) + g_right - g_left + dx * p.Rc0 * u * v;
      ru = time_term(x.u, prev.u, prev2.u, i) + f_right - f_left -
           dx * u * (1.0 - u) * production;
    }
    const double rmu = h_right - h_left + dx * gamma2 * truncated_potential_d1(u_bar[i], pot) -
                       dx * x.mu[i];

    if (!std::isfinite(rv) || !std::isfinite(ru) || !std::isfinite(rmu)) {
      throw SchemeError("non-finite residual", i);
    }
    out[kFieldsPerCell * i + kV] = rv;
    out[kFieldsPerCell * i + kU] = ru;
    out[kFieldsPerCell * i + kMu] = rmu;

    g_left = g_right;
    f_left = f_right;
    h_left = h_right;
  }
}

std::vector<double> residual_bdf2(const State& candidate, const History& history,
                                  std::span<const double> u_bar, const Grid& grid, double dt,
                                  const SchemeConfig& cfg) {
  std::vector<double> r(kFieldsPerCell * candidate.size());
  assemble_residual(candidate, history.prev, history.prev2, u_bar, grid, dt, cfg,
                    TimeFormula::Bdf2, r);
  return r;
}

std::vector<double> residual_first_step(const State& candidate, const State& initial,
                                        const Grid& grid, double dt, const SchemeConfig& cfg) {
  std::vector<double> r(kFieldsPerCell * candidate.size());
  assemble_residual(candidate, initial, initial, initial.u, grid, dt, cfg,
                    TimeFormula::ImplicitEuler, r);
  return r;
}

std::vector<double> residual(const State& candidate, const History& history,
                             std::span<const double> u_bar, const Grid& grid, double dt,
                             const SchemeConfig& cfg) {
  if (history.step_index < 2) {
    std::vector<double> r(kFieldsPerCell * candidate.size());
    assemble_residual(candidate, history.prev, history.prev, u_bar, grid, dt, cfg,
                      TimeFormula::ImplicitEuler, r);
    return r;
  }
  return residual_bdf2(candidate, history, u_bar, grid, dt, cfg);
}

}  // namespace biofilm
