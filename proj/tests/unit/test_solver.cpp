#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "biofilm/harness.hpp"
#include "biofilm/solver.hpp"
#include "oracle.hpp"

using namespace biofilm;

namespace {

State random_state(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> U(0.05, 0.95), V(0.05, 1.0), MU(-1.0, 1.0);
  State s(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    s.u[i] = U(rng);
    s.v[i] = V(rng);
    s.mu[i] = MU(rng);
  }
  return s;
}

BlockTridiagonalMatrix random_matrix(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  BlockTridiagonalMatrix a(n);
  for (int i = 0; i < n; ++i) {
    a.diag(i) = Block3::NullaryExpr([&] { return d(rng); }) + 8.0 * Block3::Identity();
    if (i + 1 < n) {
      a.lower(i) = Block3::NullaryExpr([&] { return d(rng); });
      a.upper(i) = Block3::NullaryExpr([&] { return d(rng); });
    }
  }
  return a;
}

}  // namespace

TEST(BlockTridiagonal, SolveMatchesDenseElimination) {
  std::mt19937 rng(1);
  for (int n : {1, 2, 7}) {
    const auto a = random_matrix(rng, n);
    std::vector<double> b(3 * n);
    for (auto& x : b) x = std::uniform_real_distribution<double>(-1, 1)(rng);
    const auto dense = a.to_dense();
    std::vector<std::vector<double>> rows(3 * n, std::vector<double>(3 * n));
    for (int i = 0; i < 3 * n; ++i) {
      for (int j = 0; j < 3 * n; ++j) rows[i][j] = dense(i, j);
    }
    const auto want = oracle::gauss_solve(rows, b);
    const auto got = solve_block_tridiagonal(a, b);
    for (int i = 0; i < 3 * n; ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  }
}

TEST(BlockTridiagonal, EntryAccessAndMultiply) {
  std::mt19937 rng(2);
  const auto a = random_matrix(rng, 3);
  EXPECT_EQ(a(0, 8), 0.0);
  EXPECT_EQ(a(4, 1), a.lower(0)(1, 1));
  std::vector<double> x(9, 1.0);
  const auto y = a.multiply(x);
  const Eigen::VectorXd want = a.to_dense() * Eigen::VectorXd::Ones(9);
  for (int i = 0; i < 9; ++i) EXPECT_NEAR(y[i], want(i), 1e-13);
}

TEST(BlockTridiagonal, SingularPivotReported) {
  BlockTridiagonalMatrix a(2);
  a.diag(0) = Block3::Identity();
  a.diag(1) = Block3::Zero();
  try {
    solve_block_tridiagonal(a, std::vector<double>(6, 1.0));
    FAIL();
  } catch (const SingularBlockError& e) {
    EXPECT_EQ(e.block(), 1);
  }
}

class JacobianCheck
    : public testing::TestWithParam<std::tuple<Model, CoefficientTreatment, TimeFormula>> {};

TEST_P(JacobianCheck, MatchesFiniteDifferences) {
  const auto [model, treatment, formula] = GetParam();
  SchemeConfig cfg;
  cfg.model = model;
  cfg.treatment = treatment;
  std::mt19937 rng(17);
  const int n = 5;
  const Grid grid(n);
  const double dt = 1e-2;
  for (int trial = 0; trial < 4; ++trial) {
    const State prev = random_state(rng, n), prev2 = random_state(rng, n), x = random_state(rng, n);
    std::vector<double> ub(n);
    for (int i = 0; i < n; ++i) ub[i] = std::clamp(2 * prev.u[i] - prev2.u[i], 0.05, 0.95);
    auto f = [&](const std::vector<double>& y) {
      std::vector<double> r(3 * n);
      assemble_residual(unpack(y), prev, prev2, ub, grid, dt, cfg, formula, r);
      return r;
    };
    const auto fd = oracle::fd_jacobian(f, pack(x));
    const auto jac = assemble_jacobian(x, ub, grid, dt, cfg, formula).to_dense();
    double scale = 0.0, diff = 0.0;
    for (int i = 0; i < 3 * n; ++i) {
      for (int j = 0; j < 3 * n; ++j) {
        scale = std::max(scale, std::abs(fd[i][j]));
        diff = std::max(diff, std::abs(fd[i][j] - jac(i, j)));
      }
    }
    EXPECT_LE(diff / scale, 1e-7);
  }
}

INSTANTIATE_TEST_SUITE_P(
    All, JacobianCheck,
    testing::Combine(testing::Values(Model::VolumeFilling, Model::WangZhang),
                     testing::Values(CoefficientTreatment::Extrapolated,
                                     CoefficientTreatment::Implicit),
                     testing::Values(TimeFormula::ImplicitEuler, TimeFormula::Bdf2)));

TEST(Newton, SolvesScalarNonlinearProblem) {
  // x^3 - 2 = 0 with a 1-block "matrix"
  auto res = [](std::span<const double> x, std::span<double> r) {
    r[0] = x[0] * x[0] * x[0] - 2.0;
    r[1] = x[1] - 1.0;
    r[2] = x[2];
  };
  auto jac = [](std::span<const double> x) {
    BlockTridiagonalMatrix a(1);
    a.diag(0) = Block3::Identity();
    a.diag(0)(0, 0) = 3.0 * x[0] * x[0];
    return a;
  };
  const auto out = newton_solve({1.0, 0.0, 0.0}, res, jac, NewtonConfig{});
  EXPECT_NEAR(out.x[0], std::cbrt(2.0), 1e-12);
  EXPECT_TRUE(out.report.converged);
  EXPECT_GE(out.report.iterations, 3);
  EXPECT_EQ(out.report.residual_norms.size(), static_cast<std::size_t>(out.report.iterations + 1));
}

TEST(Newton, ReportsFailure) {
  auto res = [](std::span<const double> x, std::span<double> r) {
    r[0] = x[0] * x[0] + 1.0;  // no real root
    r[1] = r[2] = 0.0;
  };
  auto jac = [](std::span<const double> x) {
    BlockTridiagonalMatrix a(1);
    a.diag(0) = Block3::Identity();
    a.diag(0)(0, 0) = 2.0 * x[0] + 1e-3;
    return a;
  };
  NewtonConfig cfg;
  cfg.max_iters = 8;
  try {
    newton_solve({0.7, 0.0, 0.0}, res, jac, cfg);
    FAIL();
  } catch (const NewtonError& e) {
    EXPECT_FALSE(e.report().converged);
    EXPECT_GT(e.report().final_residual_norm, 0.5);
  }
}

TEST(Newton, ConfigValidation) {
  NewtonConfig cfg;
  cfg.abs_tol = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = NewtonConfig{};
  cfg.armijo_factor = 1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(SolveStep, AgreesWithDenseOracle) {
  std::mt19937 rng(23);
  for (Model model : {Model::VolumeFilling, Model::WangZhang}) {
    for (auto treatment : {CoefficientTreatment::Extrapolated, CoefficientTreatment::Implicit}) {
      SchemeConfig cfg;
      cfg.model = model;
      cfg.treatment = treatment;
      const int n = 4;
      const Grid grid(n);
      const double dt = 1e-2;
      History h{random_state(rng, n), random_state(rng, n), 2};
      for (int i = 0; i < n; ++i) h.prev2.u[i] = h.prev.u[i] + 0.02 * (i % 2 ? 1 : -1);
      NewtonConfig newton;
      newton.abs_tol = 1e-12;
      const StepResult step = solve_step(h, grid, dt, cfg, newton);

      oracle::Scheme s{model == Model::WangZhang, treatment == CoefficientTreatment::Implicit,
                       true, cfg.delta, dt, cfg.params};
      auto f = [&](const std::vector<double>& x) {
        return oracle::residual(x, h.prev.u, h.prev.v, h.prev2.u, h.prev2.v, s);
      };
      State guess = h.prev;
      guess.u = extrapolate(h);
      const auto want = oracle::dense_newton(f, pack(guess));
      const auto got = pack(step.state);
      for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-10) << i;
    }
  }
}

TEST(SolveStep, FirstStepIsFirstOrderAccurate) {
  // Local error of the startup step against a much finer reference: halving dt
  // should divide the one-step error by about four (local O(dt^2)).
  const TestCase tc = test_case(3);
  RunConfig cfg;
  cfg.n_cells = 32;
  auto one_step = [&](double dt) {
    const Grid grid(cfg.n_cells);
    const State s0 = project_initial(grid, tc.initial_u, tc.initial_v, cfg.scheme);
    History h{s0, s0, 1};
    return solve_step(h, grid, dt, cfg.scheme, cfg.newton).state;
  };
  RunConfig fine = cfg;
  fine.dt = 1e-5;
  fine.horizon = 1e-2;
  const State ref = run(tc, fine).final_state;
  const State a = one_step(1e-2);
  const State b = one_step(5e-3);
  // propagate b one more step with BDF2 to reach t = 1e-2
  const Grid grid(cfg.n_cells);
  const State s0 = project_initial(grid, tc.initial_u, tc.initial_v, cfg.scheme);
  const State b2 = solve_step(History{b, s0, 2}, grid, 5e-3, cfg.scheme, cfg.newton).state;
  const double ea = l2_distance(a.v, ref.v, grid.dx());
  const double eb = l2_distance(b2.v, ref.v, grid.dx());
  EXPECT_GT(ea / eb, 2.5);
}
