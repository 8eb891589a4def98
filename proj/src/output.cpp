#include "biofilm/output.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace biofilm {

namespace fs = std::filesystem;

namespace {

std::ofstream open_for_write(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string format_shortest(double x) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string snapshot_filename(double requested_time) {
  return "snapshots_" + format_shortest(requested_time) + ".csv";
}

void write_snapshot_csv(const fs::path& path, const Grid& grid, const State& state) {
  std::ofstream out = open_for_write(path);
  out << kSnapshotHeader << '\n';
  for (int i = 0; i < grid.n_cells(); ++i) {
    out << format_number(grid.center(i)) << ',' << format_number(state.u[i]) << ','
        << format_number(state.v[i]) << ',' << format_number(state.mu[i]) << '\n';
  }
}

void write_diagnostics_csv(const fs::path& path, const std::vector<DiagnosticsRecord>& records) {
  std::ofstream out = open_for_write(path);
  out << kDiagnosticsHeader << '\n';
  for (const auto& r : records) {
    out << format_number(r.t) << ',' << format_number(r.mass_u) << ','
        << format_number(r.mass_v) << ',' << format_number(r.energy) << ','
        << format_number(r.entropy) << ',' << format_number(r.min_u) << ','
        << format_number(r.max_u) << ',' << format_number(r.min_v) << ','
        << format_number(r.max_v) << ',' << r.newton_iters << '\n';
  }
}

void write_convergence_csv(const fs::path& path, const ConvergenceResult& result) {
  std::ofstream out = open_for_write(path);
  out << kConvergenceHeader << '\n';
  for (std::size_t j = 0; j < result.resolutions.size(); ++j) {
    out << format_number(result.resolutions[j]) << ',' << format_number(result.errors_u[j])
        << ',' << format_number(result.errors_v[j]) << ',';
    if (j > 0) {
      out << format_number(result.orders_u[j - 1]) << ','
          << format_number(result.orders_v[j - 1]);
    } else {
      out << ',';
    }
    out << '\n';
  }
}

void write_model_difference_csv(const fs::path& path, const ModelComparison& cmp) {
  std::ofstream out = open_for_write(path);
  out << kModelDifferenceHeader << '\n';
  for (std::size_t s = 0; s < cmp.times.size(); ++s) {
    out << format_number(cmp.times[s]) << ',' << format_number(cmp.l2_u[s]) << ','
        << format_number(cmp.l2_v[s]) << '\n';
  }
}

std::vector<std::string> write_run_tables(const fs::path& dir, const RunResult& result) {
  std::vector<std::string> names;
  for (const Snapshot& s : result.snapshots) {
    names.push_back(snapshot_filename(s.requested_time));
    write_snapshot_csv(dir / names.back(), result.grid, s.state);
  }
  write_diagnostics_csv(dir / "diagnostics.csv", result.diagnostics);
  return names;
}

void write_plot_script(const fs::path& dir, PlotKind kind,
                       const std::vector<std::string>& snapshot_files) {
  std::ofstream out = open_for_write(dir / "plot.gp");
  out << "# gnuplot -c plot.gp  (run inside this directory)\n"
         "set datafile separator ','\n"
         "set terminal pngcairo size 1000,700\n"
         "set key outside\n";
  auto field_plot = [&](const std::string& prefix, const char* field, int column,
                        const std::string& output) {
    out << "set output '" << output << "'\n"
        << "set xlabel 'x'\nset ylabel '" << field << "'\n"
        << "plot ";
    for (std::size_t i = 0; i < snapshot_files.size(); ++i) {
      if (i) out << ", \\\n     ";
      const std::string& f = snapshot_files[i];
      const std::string label = f.substr(10, f.size() - 14);  // strip "snapshots_" and ".csv"
      out << "'" << prefix << f << "' every ::1 using 1:" << column << " with lines title 't="
          << label << "'";
    }
    out << "\n";
  };
  switch (kind) {
    case PlotKind::Run:
      field_plot("", "u", 2, "u.png");
      field_plot("", "v", 3, "v.png");
      out << "set output 'diagnostics.png'\nset xlabel 't'\nset ylabel ''\n"
             "plot 'diagnostics.csv' every ::1 using 1:2 with lines title 'mass_u', \\\n"
             "     'diagnostics.csv' every ::1 using 1:3 with lines title 'mass_v', \\\n"
             "     'diagnostics.csv' every ::1 using 1:5 with lines title 'entropy'\n";
      break;
    case PlotKind::Comparison:
      field_plot("this-paper/", "u (this-paper)", 2, "u_this_paper.png");
      field_plot("wang-zhang/", "u (wang-zhang)", 2, "u_wang_zhang.png");
      field_plot("this-paper/", "v (this-paper)", 3, "v_this_paper.png");
      field_plot("wang-zhang/", "v (wang-zhang)", 3, "v_wang_zhang.png");
      break;
    case PlotKind::Convergence:
      out << "set output 'convergence.png'\nset logscale xy\n"
             "set xlabel 'resolution'\nset ylabel 'L2 error'\n"
             "plot 'convergence.csv' every ::1 using 1:2 with linespoints title 'u', \\\n"
             "     'convergence.csv' every ::1 using 1:3 with linespoints title 'v'\n";
      break;
  }
}

}  // namespace biofilm
