#pragma once

#include <span>
#include <vector>

#include "biofilm/scheme.hpp"

namespace biofilm {

struct DiagnosticsRecord {
  double t = 0.0;
  double mass_u = 0.0;
  double mass_v = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  double min_v = 0.0;
  double max_v = 0.0;
  int newton_iters = 0;
};

struct FieldBounds {
  double min_u, max_u, min_v, max_v;
};

/// dx * sum of the cell values.
double mass(std::span<const double> values, const Grid& grid);

/// Gradient energy over interior faces plus Gamma2 * f_delta summed over cells.
double discrete_energy(const State& state, const Grid& grid, const ScaledParams& params,
                       double delta);

/// dx * sum Phi_delta(u_i). delta <= 0 selects the untruncated Phi (u must lie in [0,1]).
double discrete_entropy(const State& state, const Grid& grid, double delta);

/// sqrt(dx * sum (a_i - b_i)^2).
double l2_distance(std::span<const double> a, std::span<const double> b, double dx);

FieldBounds linf_bounds(const State& state);

/// Averages each group of fine children onto a nested coarse mesh.
std::vector<double> restrict_to(std::span<const double> fine, int coarse_cells);

DiagnosticsRecord make_record(double t, const State& state, const Grid& grid,
                              const SchemeConfig& cfg, int newton_iters);

}  // namespace biofilm
