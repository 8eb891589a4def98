#include "biofilm/potential_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biofilm/potential.hpp"

namespace biofilm {

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[i] = a + (b - a) * i / (n - 1);
  return xs;
}

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

double entropy_check_step(double u) {
  return 1e-3 * std::clamp(std::min(std::abs(u), std::abs(1.0 - u)), 1e-2, 1.0);
}

std::vector<PropertyCheck> check_potentials(std::span<const double> deltas,
                                            std::span<const double> polymerization) {
  double matching = 0.0;
  double convexity = 0.0;  // largest negative part of f1_delta''
  double dominance = 0.0;  // largest amount by which M exceeds M_delta
  double ode = 0.0;
  double product = 0.0;

  for (double delta : deltas) {
    for (double N : polymerization) {
      const PotentialParams p{N, 0.0, delta};
      const auto breaks = truncation_breakpoints(delta);
      for (std::size_t k = 0; k < breaks.size(); ++k) {
        const auto left = static_cast<SingularBranch>(k);
        const auto right = static_cast<SingularBranch>(k + 1);
        for (int order = 0; order <= 2; ++order) {
          matching = std::max(matching, relative_gap(singular_branch_value(left, order, breaks[k], p),
                                                     singular_branch_value(right, order, breaks[k], p)));
        }
      }
      for (double u : linspace(-5.0, 6.0, 4401)) {
        convexity = std::max(convexity, -truncated_singular_d2(u, p));
      }
    }

    for (double u : linspace(-2.0, 3.0, 2001)) {
      dominance = std::max(dominance, mobility(u) - truncated_mobility(u, delta));
    }

    for (double u : linspace(-2.0, 3.0, 501)) {
      const double gap = std::min({std::abs(u), std::abs(1.0 - u), std::abs(u - delta),
                                   std::abs(u - (1.0 - delta))});
      if (gap < 1e-2) continue;
      const double h = entropy_check_step(u);
      const double second = (truncated_entropy(u + h, delta) - 2.0 * truncated_entropy(u, delta) +
                             truncated_entropy(u - h, delta)) /
                            (h * h);
      ode = std::max(ode, relative_gap(second, 1.0 / truncated_mobility(u, delta)));
    }

    for (double u : linspace(-2.0, 3.0, 50001)) {
      const double w = std::clamp(u, 0.0, 1.0) * std::clamp(1.0 - u, 0.0, 1.0);
      product = std::max(product, std::abs(w * truncated_entropy_d1(u, delta)));
    }
  }

  return {
      {"f1_delta C2 matching at breakpoints (relative)", matching, 1e-9, matching <= 1e-9},
      {"f1_delta'' >= 0 on [-5, 6] (max negative part)", convexity, 0.0, convexity <= 0.0},
      {"M_delta >= M on [-2, 3] (max deficit)", dominance, 0.0, dominance <= 0.0},
      {"Phi_delta'' = 1/M_delta (relative, second differences)", ode, 1e-6, ode <= 1e-6},
      {"|[u] [1-u] Phi_delta'(u)| on [-2, 3]", product, 2.0, product <= 2.0},
  };
}

}  // namespace biofilm
