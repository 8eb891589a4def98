#pragma once

#include <array>

// Flory-Huggins free energy
//
//   f(u) = (1/N) u log u + (1-u) log(1-u) + lambda u (1-u),
//
// its delta-truncated family, the degenerate mobility u(1-u), the truncated
// diffusivity [1-u]_+^1 and the entropy density Phi with Phi'' = 1/M.
//
// The truncated singular part f1_delta agrees with f1 on (delta, 1-delta),
// continues by second-order Taylor polynomials up to -1 and 2, then by cubics
// that ramp f'' linearly to zero on [-2,-1] and [2,3], and is affine outside
// [-2,3]. The result is C^2, convex and has bounded first derivative.

namespace biofilm {

struct PotentialParams {
  double N = 1.0;
  double lambda = 0.0;
  double delta = 1e-8;

  void validate() const;
};

/// Breakpoints of the truncated singular part, in increasing order.
std::array<double, 6> truncation_breakpoints(double delta);

/// Pieces of f1_delta from left to right; breakpoint k separates piece k and k+1.
enum class SingularBranch {
  LinearLow,      ///< u <= -2
  CubicLow,       ///< -2 <= u <= -1
  QuadraticLow,   ///< -1 <= u <= delta
  Core,           ///< delta < u < 1 - delta (the untruncated f1)
  QuadraticHigh,  ///< 1 - delta <= u <= 2
  CubicHigh,      ///< 2 <= u <= 3
  LinearHigh,     ///< u >= 3
};

SingularBranch singular_branch(double u, double delta);

/// Closed form of one piece (order 0, 1 or 2), evaluated at any u.
double singular_branch_value(SingularBranch branch, int order, double u,
                             const PotentialParams& p);

// Unregularized potential; throws std::domain_error unless 0 < u < 1.
double flory_huggins(double u, double N, double lambda);
double flory_huggins_d1(double u, double N, double lambda);
double flory_huggins_d2(double u, double N, double lambda);

// Truncated singular part f1_delta. Total functions on the real line.
double truncated_singular(double u, const PotentialParams& p);
double truncated_singular_d1(double u, const PotentialParams& p);
double truncated_singular_d2(double u, const PotentialParams& p);

// Bounded extension of lambda u (1-u): held constant outside [-1, 2].
double mixing_part(double u, double lambda);
double mixing_part_d1(double u, double lambda);
double mixing_part_d2(double u, double lambda);

// f_delta = f1_delta + mixing_part.
double truncated_potential(double u, const PotentialParams& p);
double truncated_potential_d1(double u, const PotentialParams& p);
double truncated_potential_d2(double u, const PotentialParams& p);

double mobility(double u);
double mobility_d1(double u);
/// M(delta) below delta, M(1-delta) above 1-delta, M(u) in between.
double truncated_mobility(double u, double delta);
/// [1-u]_+^1, clamped to [0, 1].
double truncated_diffusivity(double u);
/// Derivative of truncated_diffusivity (zero on the clamped branches).
double truncated_diffusivity_d1(double u);

/// u log u + (1-u) log(1-u) + log 2 on [0,1] with 0 log 0 = 0.
double entropy_density(double u);
/// Phi_delta with Phi_delta'' = 1/M_delta and Phi_delta(1/2) = Phi_delta'(1/2) = 0.
double truncated_entropy(double u, double delta);
double truncated_entropy_d1(double u, double delta);

}  // namespace biofilm
