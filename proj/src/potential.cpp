#include "biofilm/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace biofilm {

namespace {

void require_open_unit(double u, const char* what) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error(std::string(what) + ": argument " + std::to_string(u) +
                            " outside (0, 1)");
  }
}

// x log x with the continuous extension 0 log 0 = 0.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double f1(double u, double N) { return xlogx(u) / N + xlogx(1.0 - u); }
double f1_d1(double u, double N) { return (std::log(u) + 1.0) / N - std::log1p(-u) - 1.0; }
double f1_d2(double u, double N) { return 1.0 / (N * u) + 1.0 / (1.0 - u); }

// Taylor data of f1 at the two truncation points.
struct Anchor {
  double f, d1, d2;
};

Anchor anchor(double x, double N) { return {f1(x, N), f1_d1(x, N), f1_d2(x, N)}; }

struct Constants {
  Anchor lo;  // at delta
  Anchor hi;  // at 1 - delta
  double c1, c2, c3, c4;
};

Constants constants(const PotentialParams& p) {
  const double d = p.delta;
  Constants c{anchor(d, p.N), anchor(1.0 - d, p.N), 0.0, 0.0, 0.0, 0.0};
  c.c2 = c.lo.f - c.lo.d1 * d + 0.5 * c.lo.d2 * ((1.0 + d) * (1.0 + d) - 2.0 * d - 2.0 / 3.0);
  c.c1 = c.c2 - 4.0 / 3.0 * c.lo.d2;
  c.c3 = c.hi.f + c.hi.d1 * (d - 1.0) +
         c.hi.d2 * (0.5 * (d + 1.0) * (d + 1.0) - 2.0 * d + 4.0 / 3.0);
  c.c4 = c.c3 - 4.5 * c.hi.d2;
  return c;
}

}  // namespace

void PotentialParams::validate() const {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::invalid_argument("delta must lie in (0, 1/2), got " + std::to_string(delta));
  }
  if (!(N > 0.0) || !std::isfinite(N)) throw std::invalid_argument("N must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("lambda must be nonnegative");
  }
}

std::array<double, 6> truncation_breakpoints(double delta) {
  return {-2.0, -1.0, delta, 1.0 - delta, 2.0, 3.0};
}

double flory_huggins(double u, double N, double lambda) {
  require_open_unit(u, "flory_huggins");
  return f1(u, N) + lambda * u * (1.0 - u);
}

double flory_huggins_d1(double u, double N, double lambda) {
  require_open_unit(u, "flory_huggins_d1");
  return f1_d1(u, N) + lambda * (1.0 - 2.0 * u);
}

double flory_huggins_d2(double u, double N, double lambda) {
  require_open_unit(u, "flory_huggins_d2");
  return f1_d2(u, N) - 2.0 * lambda;
}

SingularBranch singular_branch(double u, double delta) {
  if (u > delta && u < 1.0 - delta) return SingularBranch::Core;
  if (u <= -2.0) return SingularBranch::LinearLow;
  if (u <= -1.0) return SingularBranch::CubicLow;
  if (u <= delta) return SingularBranch::QuadraticLow;
  if (u <= 2.0) return SingularBranch::QuadraticHigh;
  if (u <= 3.0) return SingularBranch::CubicHigh;
  return SingularBranch::LinearHigh;
}

double singular_branch_value(SingularBranch branch, int order, double u,
                             const PotentialParams& p) {
  if (order < 0 || order > 2) throw std::invalid_argument("derivative order must be 0, 1 or 2");
  const double d = p.delta;
  const double a = 1.0 - d;
  switch (branch) {
    case SingularBranch::Core:
      return order == 0 ? f1(u, p.N) : order == 1 ? f1_d1(u, p.N) : f1_d2(u, p.N);
    case SingularBranch::QuadraticLow:
    case SingularBranch::QuadraticHigh: {
      const Anchor x = anchor(branch == SingularBranch::QuadraticLow ? d : a, p.N);
      const double h = u - (branch == SingularBranch::QuadraticLow ? d : a);
      if (order == 0) return x.f + x.d1 * h + 0.5 * x.d2 * h * h;
      if (order == 1) return x.d1 + x.d2 * h;
      return x.d2;
    }
    case SingularBranch::CubicLow: {
      const Anchor lo = anchor(d, p.N);
      if (order == 0) {
        return lo.d2 * (u * u * u / 6.0 + u * u + (0.5 - d) * u) + lo.d1 * u + constants(p).c2;
      }
      if (order == 1) return lo.d2 * (0.5 * u * u + 2.0 * u + 0.5 - d) + lo.d1;
      return lo.d2 * (u + 2.0);
    }
    case SingularBranch::CubicHigh: {
      const Anchor hi = anchor(a, p.N);
      if (order == 0) {
        return hi.d2 * (-u * u * u / 6.0 + 1.5 * u * u - (2.0 + a) * u) + hi.d1 * u +
               constants(p).c3;
      }
      if (order == 1) return hi.d2 * (-0.5 * u * u + 3.0 * u - (2.0 + a)) + hi.d1;
      return hi.d2 * (3.0 - u);
    }
    case SingularBranch::LinearLow: {
      const Anchor lo = anchor(d, p.N);
      if (order == 0) return (-lo.d2 * (1.5 + d) + lo.d1) * u + constants(p).c1;
      if (order == 1) return -lo.d2 * (1.5 + d) + lo.d1;
      return 0.0;
    }
    case SingularBranch::LinearHigh: {
      const Anchor hi = anchor(a, p.N);
      if (order == 0) return ((2.5 - a) * hi.d2 + hi.d1) * u + constants(p).c4;
      if (order == 1) return (2.5 - a) * hi.d2 + hi.d1;
      return 0.0;
    }
  }
  return 0.0;
}

double truncated_singular(double u, const PotentialParams& p) {
  return singular_branch_value(singular_branch(u, p.delta), 0, u, p);
}

double truncated_singular_d1(double u, const PotentialParams& p) {
  if (u > p.delta && u < 1.0 - p.delta) return f1_d1(u, p.N);
  return singular_branch_value(singular_branch(u, p.delta), 1, u, p);
}

double truncated_singular_d2(double u, const PotentialParams& p) {
  return singular_branch_value(singular_branch(u, p.delta), 2, u, p);
}

double mixing_part(double u, double lambda) {
  const double w = std::clamp(u, -1.0, 2.0);
  return lambda * w * (1.0 - w);
}

double mixing_part_d1(double u, double lambda) {
  if (u < -1.0 || u > 2.0) return 0.0;
  return lambda * (1.0 - 2.0 * u);
}

double mixing_part_d2(double u, double lambda) {
  if (u < -1.0 || u > 2.0) return 0.0;
  return -2.0 * lambda;
}

double truncated_potential(double u, const PotentialParams& p) {
  return truncated_singular(u, p) + mixing_part(u, p.lambda);
}

double truncated_potential_d1(double u, const PotentialParams& p) {
  return truncated_singular_d1(u, p) + mixing_part_d1(u, p.lambda);
}

double truncated_potential_d2(double u, const PotentialParams& p) {
  return truncated_singular_d2(u, p) + mixing_part_d2(u, p.lambda);
}

double mobility(double u) { return u * (1.0 - u); }

double mobility_d1(double u) { return 1.0 - 2.0 * u; }

double truncated_mobility(double u, double delta) {
  return mobility(std::clamp(u, delta, 1.0 - delta));
}

double truncated_diffusivity(double u) { return std::clamp(1.0 - u, 0.0, 1.0); }

double truncated_diffusivity_d1(double u) { return (u > 0.0 && u < 1.0) ? -1.0 : 0.0; }

double entropy_density(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw std::domain_error("entropy_density: argument " + std::to_string(u) +
                            " outside [0, 1]");
  }
  return xlogx(u) + xlogx(1.0 - u) + std::numbers::ln2;
}

double truncated_entropy(double u, double delta) {
  const double a = 1.0 - delta;
  if (u >= delta && u <= a) return entropy_density(u);
  const double x = u < delta ? delta : a;
  const double slope = std::log(x) - std::log1p(-x);
  const double h = u - x;
  return entropy_density(x) + slope * h + 0.5 * h * h / mobility(x);
}

double truncated_entropy_d1(double u, double delta) {
  const double a = 1.0 - delta;
  if (u >= delta && u <= a) return std::log(u) - std::log1p(-u);
  const double x = u < delta ? delta : a;
  return std::log(x) - std::log1p(-x) + (u - x) / mobility(x);
}

}  // namespace biofilm
