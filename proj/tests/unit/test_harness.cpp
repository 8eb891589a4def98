#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "biofilm/harness.hpp"

using namespace biofilm;
namespace fs = std::filesystem;

TEST(TestCases, InitialData) {
  EXPECT_NEAR(test_case(1).initial_u(0.25), 0.52, 1e-15);
  EXPECT_NEAR(test_case(1).initial_u(0.5), 0.02, 1e-15);
  EXPECT_EQ(test_case(1).initial_v(0.3), 0.75);
  EXPECT_EQ(test_case(2).initial_u(0.2), 0.2);
  EXPECT_EQ(test_case(2).initial_u(0.21), 0.01);
  EXPECT_EQ(test_case(2).initial_v(0.9), 0.1);
  EXPECT_NEAR(test_case(3).initial_u(0.5), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(test_case(3).initial_u(0.0), 1.0 / 12.0, 1e-15);
  EXPECT_EQ(test_case(3).initial_v(0.1), 0.3);
  EXPECT_EQ(test_case(4).n_cells, 2048);
  EXPECT_EQ(test_case(4).dt, 1e-5);
  EXPECT_EQ(test_case(5).dt, 1.0 / (16384.0 * 128.0));
  for (int id : {1, 2, 3}) EXPECT_EQ(test_case(id).horizon, 10.0);
  EXPECT_THROW(test_case(6), std::out_of_range);
}

TEST(StepCount, WholeMultiples) {
  EXPECT_EQ(step_count(1.0, 1e-3), 1000);
  EXPECT_EQ(step_count(1.0, 1.0 / (64.0 * 128.0)), 8192);
  EXPECT_THROW(step_count(1.0, 0.3), std::invalid_argument);
}

TEST(ObservedOrders, UsesStepRatio) {
  const auto halving = observed_orders({1.0, 0.25, 0.0625}, {0.1, 0.05, 0.025});
  EXPECT_NEAR(halving[0], 2.0, 1e-14);
  EXPECT_NEAR(halving[1], 2.0, 1e-14);
  // refining by four with the error dropping by sixteen is second order
  const auto quarter = observed_orders({1.0, 1.0 / 16.0}, {1.0, 0.25});
  EXPECT_NEAR(quarter[0], 2.0, 1e-14);
  EXPECT_THROW(observed_orders({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST(Run, SnapshotsAndDiagnostics) {
  RunConfig cfg;
  cfg.n_cells = 16;
  cfg.dt = 1e-2;
  cfg.horizon = 0.1;
  cfg.snapshot_times = {0.0, 0.05, 0.1, 0.033};
  cfg.diagnostics_stride = 2;
  const RunResult r = run(test_case(3), cfg);
  EXPECT_EQ(r.steps, 10);
  ASSERT_EQ(r.snapshots.size(), 4u);
  EXPECT_EQ(r.snapshots[0].step, 0);
  EXPECT_EQ(r.snapshots[1].step, 5);
  EXPECT_EQ(r.snapshots[2].state, r.final_state);
  EXPECT_EQ(r.snapshots[3].step, 4);
  EXPECT_NEAR(r.snapshots[3].time, 0.04, 1e-15);
  ASSERT_EQ(r.diagnostics.size(), 6u);
  EXPECT_EQ(r.diagnostics.front().newton_iters, 0);
  EXPECT_GT(r.diagnostics.back().newton_iters, 0);
  EXPECT_NEAR(r.diagnostics.back().t, 0.1, 1e-15);
}

TEST(Run, FailureReportsStep) {
  RunConfig cfg;
  cfg.n_cells = 8;
  cfg.dt = 1e-2;
  cfg.horizon = 0.05;
  cfg.newton.max_iters = 1;
  cfg.newton.abs_tol = 1e-300;
  try {
    run(test_case(3), cfg);
    FAIL();
  } catch (const RunError& e) {
    EXPECT_EQ(e.step(), 1);
    EXPECT_NE(std::string(e.what()).find("step 1"), std::string::npos);
  }
}

TEST(Run, DeterministicAndCached) {
  RunConfig cfg;
  cfg.n_cells = 16;
  cfg.dt = 1e-2;
  cfg.horizon = 0.2;
  const TestCase tc = test_case(3);
  const fs::path dir = fs::temp_directory_path() / "biofilm_cache_test";
  fs::remove_all(dir);
  const State a = final_state(tc, cfg, dir.string());
  ASSERT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 1);
  const State b = final_state(tc, cfg, dir.string());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, run(tc, cfg).final_state);
  fs::remove_all(dir);
}

TEST(ConfigHash, SensitiveToInputs) {
  RunConfig cfg;
  const TestCase tc = test_case(3);
  const auto h = config_hash(tc, cfg);
  EXPECT_EQ(h, config_hash(tc, cfg));
  RunConfig other = cfg;
  other.dt = 2e-3;
  EXPECT_NE(h, config_hash(tc, other));
  other = cfg;
  other.scheme.model = Model::WangZhang;
  EXPECT_NE(h, config_hash(tc, other));
  EXPECT_NE(h, config_hash(test_case(1), cfg));
}

TEST(Studies, SmallSpaceStudyConverges) {
  SpaceStudy study{3, 512, 1e-3, 0.2, 4, 6};
  StudyOptions opts;
  const ConvergenceResult r = convergence_space(study, opts);
  ASSERT_EQ(r.errors_u.size(), 3u);
  ASSERT_EQ(r.orders_u.size(), 2u);
  EXPECT_GT(r.mean_order_u(), 1.5);
  EXPECT_GT(r.mean_order_v(), 1.0);
  study.j_max = 10;
  EXPECT_THROW(convergence_space(study, opts), std::invalid_argument);
}

TEST(Studies, ThreadedMatchesSerial) {
  TimeStudy study{3, 16, 8, 1, 2, 0.25};
  StudyOptions serial;
  StudyOptions threaded;
  threaded.threads = 3;
  const auto a = convergence_time(study, serial);
  const auto b = convergence_time(study, threaded);
  EXPECT_EQ(a.errors_u, b.errors_u);
  EXPECT_EQ(a.errors_v, b.errors_v);
  EXPECT_EQ(a.resolutions.front(), 1.0 / 64.0);
}

TEST(CompareModels, SharedSnapshotTimes) {
  RunConfig cfg;
  cfg.n_cells = 16;
  cfg.dt = 1e-2;
  cfg.horizon = 0.2;
  cfg.snapshot_times = {0.0, 0.1, 0.2};
  const ModelComparison c = compare_models(test_case(1), cfg);
  ASSERT_EQ(c.times.size(), 3u);
  EXPECT_EQ(c.l2_u[0], 0.0);
  EXPECT_GT(c.l2_v[2], 0.0);
  EXPECT_EQ(c.volume_filling.snapshots.size(), c.wang_zhang.snapshots.size());
}
