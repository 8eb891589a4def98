#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "biofilm/diagnostics.hpp"
#include "biofilm/scheme.hpp"
#include "biofilm/solver.hpp"

namespace biofilm {

using Profile = std::function<double(double)>;

/// One of the five reference experiments: initial data and default resolution.
struct TestCase {
  int id = 0;
  Profile initial_u;
  Profile initial_v;
  double horizon = 1.0;
  double dt = 1e-3;
  int n_cells = 128;
};

/// Throws std::out_of_range unless 1 <= id <= 5.
TestCase test_case(int id);

struct RunConfig {
  SchemeConfig scheme;
  NewtonConfig newton;
  int n_cells = 128;
  double dt = 1e-3;
  double horizon = 1.0;
  std::vector<double> snapshot_times;
  /// Record diagnostics every `stride` steps (and always at t = 0 and t = T).
  /// Zero keeps only the end points.
  int diagnostics_stride = 1;

  void validate() const;
};

/// Applies the case defaults (resolution, time step, horizon) to `base`.
RunConfig with_case_defaults(RunConfig base, const TestCase& tc);

struct Snapshot {
  double requested_time = 0.0;
  double time = 0.0;  ///< first step time at or after the requested time
  long step = 0;
  State state;
};

struct RunResult {
  Grid grid{1};
  long steps = 0;
  std::vector<Snapshot> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
  State final_state;
};

class RunError : public std::runtime_error {
 public:
  RunError(long step, const NewtonError& cause)
      : std::runtime_error("solver failure at step " + std::to_string(step) + ": " +
                           cause.what()),
        step_(step),
        report_(cause.report()) {}
  long step() const noexcept { return step_; }
  const NewtonReport& report() const noexcept { return report_; }

 private:
  long step_;
  NewtonReport report_;
};

/// Number of steps of size dt covering [0, horizon]; horizon must be a whole
/// multiple of dt up to rounding.
long step_count(double horizon, double dt);

/// Implicit Euler for the first step, BDF2 afterwards.
RunResult run(const Profile& u0, const Profile& v0, const RunConfig& cfg);
RunResult run(const TestCase& tc, const RunConfig& cfg);

struct ConvergenceResult {
  std::vector<double> resolutions;  ///< cell counts (space) or time steps (time)
  std::vector<double> errors_u;
  std::vector<double> errors_v;
  std::vector<double> orders_u;
  std::vector<double> orders_v;

  double mean_order_u() const;
  double mean_order_v() const;
};

/// Pairwise orders log(e_j / e_{j+1}) / log(h_j / h_{j+1}); log2 ratios for halving.
std::vector<double> observed_orders(const std::vector<double>& errors,
                                    const std::vector<double>& step_sizes);

struct StudyOptions {
  SchemeConfig scheme;
  NewtonConfig newton;
  int threads = 1;
  /// Directory for cached reference solutions; empty disables caching.
  std::string cache_dir;
};

struct SpaceStudy {
  int case_id = 4;
  int reference_cells = 2048;
  double dt = 1e-5;
  double horizon = 1.0;
  int j_min = 4;
  int j_max = 10;
};

struct TimeStudy {
  int case_id = 5;
  int n_cells = 128;
  int reference_exponent = 14;  ///< reference dt = 1 / (2^e n_cells)
  int j_min = 1;                ///< study dt = 1 / (2^{2j} n_cells)
  int j_max = 6;
  double horizon = 1.0;
};

ConvergenceResult convergence_space(const SpaceStudy& study, const StudyOptions& opts);
ConvergenceResult convergence_time(const TimeStudy& study, const StudyOptions& opts);

/// Final state of a run, read from / written to opts.cache_dir when set.
State final_state(const TestCase& tc, const RunConfig& cfg, const std::string& cache_dir);

/// Stable 64-bit hash of every input that determines a run's output.
std::uint64_t config_hash(const TestCase& tc, const RunConfig& cfg);

struct ModelComparison {
  RunResult volume_filling;
  RunResult wang_zhang;
  std::vector<double> times;  ///< snapshot times shared by both runs
  std::vector<double> l2_u;
  std::vector<double> l2_v;
};

/// Runs both models from identical data; cfg.scheme.model is overridden.
ModelComparison compare_models(const Profile& u0, const Profile& v0, const RunConfig& cfg);
ModelComparison compare_models(const TestCase& tc, const RunConfig& cfg);

}  // namespace biofilm
