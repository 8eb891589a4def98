#pragma once

#include <stdexcept>
#include <string>

namespace biofilm {

class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string name, const std::string& what)
      : std::invalid_argument(name + ": " + what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Dimensional model constants (SI units).
struct PhysicalParams {
  double D;        ///< substrate diffusivity [m^2/s]
  double M_prime;  ///< mobility constant [s]
  double R_c;      ///< consumption rate [1/s]
  double R_p;      ///< production rate [kg/(m^3 s)]
  double K_v;      ///< Monod half-saturation [kg/m^3]
  double Gamma1;   ///< distortional (gradient) energy [m^4/s^2]
  double Gamma2;   ///< mixing free energy [m^2/s^2]
  double N;        ///< polymerization index [-]
  double lambda;   ///< Flory-Huggins interaction parameter [-]
  double x0;       ///< characteristic length [m]
  double t0;       ///< characteristic time [s]
  double v0;       ///< characteristic concentration [kg/m^3]
  double kBT;      ///< thermal energy [kg m^2/s^2]
  double K_tilde;  ///< half-saturation of the Wang-Zhang consumption term [-]

  void validate() const;
};

/// Dimensionless coefficients consumed by the discrete scheme.
struct ScaledParams {
  double D0;
  double M0;
  double Rc0;
  double Rp0;
  double K;
  double Gamma1_0;
  double Gamma2_0;
  double N;
  double lambda;
  double K_tilde;

  void validate() const;
};

/// Characteristic chemical potential kBT / (v0 x0^3).
double characteristic_potential(const PhysicalParams& p);

ScaledParams scale_parameters(const PhysicalParams& p);

/// Biofilm parameter set at T = 300 K used throughout the reference experiments.
PhysicalParams default_physical_params();

/// scale_parameters(default_physical_params()).
ScaledParams default_scaled_params();

}  // namespace biofilm
