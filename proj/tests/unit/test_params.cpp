#include <gtest/gtest.h>

#include "biofilm/params.hpp"

using namespace biofilm;

TEST(Params, CharacteristicPotential) {
  EXPECT_NEAR(characteristic_potential(default_physical_params()) / 4e-6, 1.0, 1e-14);
}

TEST(Params, ScaledValuesFromTable) {
  const PhysicalParams p = default_physical_params();
  const ScaledParams s = scale_parameters(p);
  const double mu0 = p.kBT / (p.v0 * p.x0 * p.x0 * p.x0);
  EXPECT_NEAR(s.D0, p.D * p.t0 / (p.x0 * p.x0), 1e-12);
  EXPECT_NEAR(s.M0, p.M_prime * p.t0 * mu0 / (p.x0 * p.x0), 1e-15);
  EXPECT_NEAR(s.Rc0, 1.0, 1e-12);
  EXPECT_NEAR(s.Rp0, 1.0, 1e-12);
  EXPECT_NEAR(s.K, 0.1, 1e-13);
  EXPECT_NEAR(s.Gamma1_0, 0.1, 1e-13);
  EXPECT_NEAR(s.Gamma2_0, 1.0, 1e-12);
  EXPECT_EQ(s.N, p.N);
  EXPECT_EQ(s.lambda, p.lambda);
  EXPECT_EQ(s.K_tilde, p.K_tilde);
}

TEST(Params, DefaultScaledMatchesScaling) {
  const ScaledParams a = default_scaled_params();
  const ScaledParams b = scale_parameters(default_physical_params());
  EXPECT_EQ(a.D0, b.D0);
  EXPECT_EQ(a.M0, b.M0);
  EXPECT_EQ(a.Gamma1_0, b.Gamma1_0);
}

TEST(Params, RejectsNonPositivePhysical) {
  PhysicalParams p = default_physical_params();
  p.x0 = 0.0;
  EXPECT_THROW(scale_parameters(p), ParameterError);
  p = default_physical_params();
  p.D = -1.0;
  try {
    p.validate();
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_EQ(e.name(), "D");
  }
}

TEST(Params, ScaledAllowsZeroRates) {
  ScaledParams s = default_scaled_params();
  s.Rp0 = 0.0;
  s.Rc0 = 0.0;
  EXPECT_NO_THROW(s.validate());
  s.M0 = 0.0;
  EXPECT_THROW(s.validate(), ParameterError);
}
