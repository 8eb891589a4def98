#include "biofilm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace biofilm {

double mass(std::span<const double> values, const Grid& grid) {
  double s = 0.0;
  for (double x : values) s += x;
  return s * grid.dx();
}

double discrete_energy(const State& state, const Grid& grid, const ScaledParams& params,
                       double delta) {
  const int n = grid.n_cells();
  const double dx = grid.dx();
  const PotentialParams pot{params.N, params.lambda, delta};
  double gradient = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double slope = (state.u[i + 1] - state.u[i]) / dx;
    gradient += slope * slope;
  }
  double bulk = 0.0;
  for (int i = 0; i < n; ++i) bulk += truncated_potential(state.u[i], pot);
  return dx * (0.5 * params.Gamma1_0 * gradient + params.Gamma2_0 * bulk);
}

double discrete_entropy(const State& state, const Grid& grid, double delta) {
  double s = 0.0;
  for (double u : state.u) s += delta > 0.0 ? truncated_entropy(u, delta) : entropy_density(u);
  return s * grid.dx();
}

double l2_distance(std::span<const double> a, std::span<const double> b, double dx) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("l2_distance: length mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(dx * s);
}

FieldBounds linf_bounds(const State& state) {
  const auto [umin, umax] = std::minmax_element(state.u.begin(), state.u.end());
  const auto [vmin, vmax] = std::minmax_element(state.v.begin(), state.v.end());
  return {*umin, *umax, *vmin, *vmax};
}

std::vector<double> restrict_to(std::span<const double> fine, int coarse_cells) {
  if (coarse_cells < 1 || fine.size() % static_cast<std::size_t>(coarse_cells) != 0) {
    throw std::invalid_argument("restrict: " + std::to_string(coarse_cells) +
                                " cells do not nest in " + std::to_string(fine.size()));
  }
  const std::size_t ratio = fine.size() / static_cast<std::size_t>(coarse_cells);
  std::vector<double> coarse(static_cast<std::size_t>(coarse_cells));
  for (std::size_t c = 0; c < coarse.size(); ++c) {
    double s = 0.0;
    for (std::size_t k = 0; k < ratio; ++k) s += fine[c * ratio + k];
    coarse[c] = s / static_cast<double>(ratio);
  }
  return coarse;
}

DiagnosticsRecord make_record(double t, const State& state, const Grid& grid,
                              const SchemeConfig& cfg, int newton_iters) {
  const FieldBounds b = linf_bounds(state);
  DiagnosticsRecord r;
  r.t = t;
  r.mass_u = mass(state.u, grid);
  r.mass_v = mass(state.v, grid);
  r.energy = discrete_energy(state, grid, cfg.params, cfg.delta);
  r.entropy = discrete_entropy(state, grid, cfg.delta);
  r.min_u = b.min_u;
  r.max_u = b.max_u;
  r.min_v = b.min_v;
  r.max_v = b.max_v;
  r.newton_iters = newton_iters;
  return r;
}

}  // namespace biofilm
