#include "biofilm/params.hpp"

#include <cmath>

namespace biofilm {

namespace {

void require_positive(const char* name, double value) {
  if (!std::isfinite(value) || !(value > 0.0)) {
    throw ParameterError(name, "must be finite and strictly positive");
  }
}

void require_nonnegative(const char* name, double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ParameterError(name, "must be finite and nonnegative");
  }
}

}  // namespace

void PhysicalParams::validate() const {
  require_positive("D", D);
  require_positive("M_prime", M_prime);
  require_positive("R_c", R_c);
  require_positive("R_p", R_p);
  require_positive("K_v", K_v);
  require_positive("Gamma1", Gamma1);
  require_positive("Gamma2", Gamma2);
  require_positive("N", N);
  require_positive("lambda", lambda);
  require_positive("x0", x0);
  require_positive("t0", t0);
  require_positive("v0", v0);
  require_positive("kBT", kBT);
  require_positive("K_tilde", K_tilde);
  if (N < 1.0) throw ParameterError("N", "polymerization index must be >= 1");
}

void ScaledParams::validate() const {
  require_positive("D0", D0);
  require_positive("M0", M0);
  // Rates, energy weights and lambda may vanish: switched-off reactions and
  // pure-diffusion setups are valid scheme inputs.
  require_nonnegative("Rc0", Rc0);
  require_nonnegative("Rp0", Rp0);
  require_positive("K", K);
  require_nonnegative("Gamma1_0", Gamma1_0);
  require_nonnegative("Gamma2_0", Gamma2_0);
  require_positive("N", N);
  require_nonnegative("lambda", lambda);
  require_positive("K_tilde", K_tilde);
}

double characteristic_potential(const PhysicalParams& p) {
  p.validate();
  return p.kBT / (p.v0 * p.x0 * p.x0 * p.x0);
}

ScaledParams scale_parameters(const PhysicalParams& p) {
  const double mu0 = characteristic_potential(p);
  const double x0_sq = p.x0 * p.x0;
  ScaledParams s{};
  s.D0 = p.D * p.t0 / x0_sq;
  s.M0 = p.M_prime * p.t0 * mu0 / x0_sq;
  s.Rc0 = p.R_c * p.t0;
  s.Rp0 = p.R_p * p.t0;
  s.K = p.K_v / p.v0;
  s.Gamma1_0 = p.Gamma1 / (mu0 * x0_sq);
  s.Gamma2_0 = p.Gamma2 / mu0;
  s.N = p.N;
  s.lambda = p.lambda;
  s.K_tilde = p.K_tilde;
  return s;
}

PhysicalParams default_physical_params() {
  PhysicalParams p{};
  p.D = 1e-10;
  p.M_prime = 2.5e-8;
  p.R_c = 1e-2;
  p.R_p = 1e-2;
  p.K_v = 1e-4;
  p.Gamma1 = 4e-15;
  p.Gamma2 = 4e-6;
  p.N = 1e3;
  p.lambda = 0.55;
  p.x0 = 1e-4;
  p.t0 = 1e2;
  p.v0 = 1e-3;
  p.kBT = 4e-21;
  p.K_tilde = 5e-4;
  return p;
}

ScaledParams default_scaled_params() { return scale_parameters(default_physical_params()); }

}  // namespace biofilm
