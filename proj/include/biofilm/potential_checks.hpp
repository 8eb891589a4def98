#pragma once

#include <span>
#include <string>
#include <vector>

namespace biofilm {

struct PropertyCheck {
  std::string name;
  double worst;      ///< worst observed value of the checked quantity
  double tolerance;  ///< pass when worst <= tolerance
  bool passed;
};

/// Sampled structural checks of the truncated potential family:
/// C^2 matching of f1_delta at its breakpoints, convexity of f1_delta,
/// M_delta >= M, Phi_delta'' = 1/M_delta, and the bound on u(1-u) Phi_delta'.
std::vector<PropertyCheck> check_potentials(std::span<const double> deltas,
                                            std::span<const double> polymerization);

/// Second central difference step for the Phi_delta'' = 1/M_delta check at u.
double entropy_check_step(double u);

}  // namespace biofilm
