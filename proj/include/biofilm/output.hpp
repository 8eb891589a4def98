#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "biofilm/diagnostics.hpp"
#include "biofilm/harness.hpp"

namespace biofilm {

/// 17 significant digits: parses back to the identical double.
std::string format_number(double x);
/// Shortest decimal that round-trips; used in file names.
std::string format_shortest(double x);

inline constexpr const char* kSnapshotHeader = "x,u,v,mu";
inline constexpr const char* kDiagnosticsHeader =
    "t,mass_u,mass_v,energy,entropy,min_u,max_u,min_v,max_v,newton_iters";
inline constexpr const char* kConvergenceHeader = "resolution,error_u,error_v,order_u,order_v";
inline constexpr const char* kModelDifferenceHeader = "t,l2_u,l2_v";

/// "snapshots_<t>.csv" for the requested time t.
std::string snapshot_filename(double requested_time);

void write_snapshot_csv(const std::filesystem::path& path, const Grid& grid, const State& state);
void write_diagnostics_csv(const std::filesystem::path& path,
                           const std::vector<DiagnosticsRecord>& records);
/// One row per resolution; order columns are empty on the first row.
void write_convergence_csv(const std::filesystem::path& path, const ConvergenceResult& result);
void write_model_difference_csv(const std::filesystem::path& path, const ModelComparison& cmp);

/// Snapshots and diagnostics of one run into `dir`; returns the snapshot file names.
std::vector<std::string> write_run_tables(const std::filesystem::path& dir,
                                          const RunResult& result);

enum class PlotKind { Run, Convergence, Comparison };

/// gnuplot script rendering the tables already written to `dir`.
void write_plot_script(const std::filesystem::path& dir, PlotKind kind,
                       const std::vector<std::string>& snapshot_files);

}  // namespace biofilm
