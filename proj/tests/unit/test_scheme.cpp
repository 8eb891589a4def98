#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "biofilm/scheme.hpp"
#include "oracle.hpp"

using namespace biofilm;

namespace {

State random_state(std::mt19937& rng, int n, double u_lo = 0.05, double u_hi = 0.95) {
  std::uniform_real_distribution<double> U(u_lo, u_hi), V(0.05, 1.0), MU(-1.0, 1.0);
  State s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    s.u[i] = U(rng);
    s.v[i] = V(rng);
    s.mu[i] = MU(rng);
  }
  return s;
}

struct Variant {
  Model model;
  CoefficientTreatment treatment;
};

class Residual : public testing::TestWithParam<Variant> {};

}  // namespace

TEST(Grid, Geometry) {
  const Grid g(8);
  EXPECT_DOUBLE_EQ(g.dx(), 0.125);
  EXPECT_DOUBLE_EQ(g.center(0), 0.0625);
  EXPECT_DOUBLE_EQ(g.centers().back(), 0.9375);
  EXPECT_THROW(Grid(0), std::invalid_argument);
}

TEST(Packing, RoundTrip) {
  std::mt19937 rng(3);
  const State s = random_state(rng, 5);
  const auto x = pack(s);
  ASSERT_EQ(x.size(), 15u);
  EXPECT_EQ(x[3 * 2 + kV], s.v[2]);
  EXPECT_EQ(x[3 * 4 + kMu], s.mu[4]);
  EXPECT_EQ(unpack(x), s);
}

TEST(Extrapolation, SecondOrderPredictor) {
  History h{State(2), State(2), 2};
  h.prev.u = {0.3, 0.5};
  h.prev2.u = {0.2, 0.6};
  const auto ub = extrapolate(h);
  EXPECT_DOUBLE_EQ(ub[0], 0.4);
  EXPECT_DOUBLE_EQ(ub[1], 0.4);
  h.step_index = 1;
  EXPECT_EQ(extrapolate(h), h.prev.u);
}

TEST_P(Residual, MatchesIndependentImplementation) {
  const Variant var = GetParam();
  SchemeConfig cfg;
  cfg.model = var.model;
  cfg.treatment = var.treatment;
  cfg.delta = 1e-2;
  std::mt19937 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 6;
    const Grid grid(n);
    const double dt = 2e-3;
    History h{random_state(rng, n), random_state(rng, n), 2};
    // some extrapolated values leave [delta, 1 - delta] to reach the truncated branches
    h.prev2.u[0] = 0.9;
    h.prev.u[0] = 0.4;
    h.prev2.u[1] = 0.2;
    h.prev.u[1] = 0.6;
    const State x = random_state(rng, n);
    const auto ub = extrapolate(h);
    const auto got = residual(x, h, ub, grid, dt, cfg);

    oracle::Scheme s{var.model == Model::WangZhang, var.treatment == CoefficientTreatment::Implicit,
                     true, cfg.delta, dt, cfg.params};
    const auto want = oracle::residual(pack(x), h.prev.u, h.prev.v, h.prev2.u, h.prev2.v, s);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_NEAR(got[i], want[i], 1e-11 * std::max(1.0, std::abs(want[i]))) << i;
    }

    const auto first = residual_first_step(x, h.prev, grid, dt, cfg);
    s.bdf2 = false;
    const auto want1 = oracle::residual(pack(x), h.prev.u, h.prev.v, h.prev.u, h.prev.v, s);
    for (std::size_t i = 0; i < first.size(); ++i) {
      EXPECT_NEAR(first[i], want1[i], 1e-11 * std::max(1.0, std::abs(want1[i]))) << i;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Variants, Residual,
    testing::Values(Variant{Model::VolumeFilling, CoefficientTreatment::Extrapolated},
                    Variant{Model::VolumeFilling, CoefficientTreatment::Implicit},
                    Variant{Model::WangZhang, CoefficientTreatment::Extrapolated},
                    Variant{Model::WangZhang, CoefficientTreatment::Implicit}));

TEST(Residual, ZeroFluxBoundaryConservesFluxSum) {
  // With no reaction, the u-rows sum to the discrete mass change alone.
  SchemeConfig cfg;
  cfg.params.Rp0 = 0.0;
  cfg.params.Rc0 = 0.0;
  std::mt19937 rng(5);
  const Grid grid(10);
  History h{random_state(rng, 10), random_state(rng, 10), 2};
  const State x = random_state(rng, 10);
  const auto r = residual(x, h, extrapolate(h), grid, 1e-2, cfg);
  double sum_u = 0.0, sum_v = 0.0, mass_u = 0.0, mass_v = 0.0;
  for (int i = 0; i < 10; ++i) {
    sum_u += r[3 * i + kU];
    sum_v += r[3 * i + kV];
    mass_u += grid.dx() * (1.5 * x.u[i] - 2.0 * h.prev.u[i] + 0.5 * h.prev2.u[i]) / 1e-2;
    mass_v += grid.dx() * (1.5 * x.v[i] - 2.0 * h.prev.v[i] + 0.5 * h.prev2.v[i]) / 1e-2;
  }
  EXPECT_NEAR(sum_u, mass_u, 1e-12);
  EXPECT_NEAR(sum_v, mass_v, 1e-12);
}

TEST(Residual, NonFiniteEntryNamesCell) {
  SchemeConfig cfg;
  const Grid grid(4);
  State s(4);
  std::fill(s.u.begin(), s.u.end(), 0.5);
  std::fill(s.v.begin(), s.v.end(), 0.5);
  State x = s;
  x.v[2] = std::numeric_limits<double>::quiet_NaN();
  try {
    residual_first_step(x, s, grid, 1e-3, cfg);
    FAIL();
  } catch (const SchemeError& e) {
    EXPECT_EQ(e.cell(), 1);  // first cell whose fluxes see v_2
  }
}

TEST(Residual, RejectsMismatchedSizes) {
  SchemeConfig cfg;
  EXPECT_THROW(residual_first_step(State(3), State(4), Grid(4), 1e-3, cfg), std::invalid_argument);
}

TEST(ChemicalPotential, ConstantProfileIsPotentialDerivative) {
  SchemeConfig cfg;
  const Grid grid(8);
  const std::vector<double> u(8, 0.3);
  const auto mu = chemical_potential(u, grid, cfg);
  for (double m : mu) {
    EXPECT_NEAR(m, cfg.params.Gamma2_0 * truncated_potential_d1(0.3, cfg.potential()), 1e-14);
  }
}

TEST(SchemeConfig, Validation) {
  SchemeConfig cfg;
  cfg.delta = 0.7;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_EQ(to_string(Model::VolumeFilling), "this-paper");
  EXPECT_EQ(to_string(CoefficientTreatment::Implicit), "implicit");
}
