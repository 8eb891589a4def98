#include "biofilm/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "biofilm/config.hpp"
#include "biofilm/output.hpp"
#include "biofilm/potential_checks.hpp"

namespace biofilm {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config_file;
  std::vector<std::string> sets;
  std::optional<int> case_id;
  std::optional<std::string> model;
  std::optional<std::string> treatment;
  std::optional<int> n_cells;
  std::optional<std::string> dt;
  std::optional<std::string> horizon;
  std::optional<std::string> delta;
  std::optional<std::string> snapshots;
  std::optional<int> threads;
  std::optional<std::string> cache_dir;
  std::string out_dir;
  bool plot = false;
};

void add_common(CLI::App* sub, Options& o, bool needs_out) {
  sub->add_option("--config", o.config_file, "key = value configuration file")
      ->check(CLI::ExistingFile);
  sub->add_option("--set", o.sets, "override one key, key=value (repeatable)");
  sub->add_option("--case", o.case_id, "test case 1..5");
  sub->add_option("--model", o.model, "this-paper | wang-zhang");
  sub->add_option("--treatment", o.treatment, "extrapolated | implicit");
  sub->add_option("--n-cells", o.n_cells, "number of cells");
  sub->add_option("--dt", o.dt, "time step");
  sub->add_option("--horizon", o.horizon, "final time T");
  sub->add_option("--delta", o.delta, "truncation parameter");
  sub->add_option("--snapshots", o.snapshots, "comma separated snapshot times");
  sub->add_option("--threads", o.threads, "worker threads for studies");
  sub->add_option("--cache-dir", o.cache_dir, "cache for reference solutions");
  auto* out = sub->add_option("--out", o.out_dir, "output directory");
  if (needs_out) out->required();
  sub->add_flag("--plot", o.plot, "also write plot.gp");
}

KeyValues overrides_from(const Options& o) {
  KeyValues kv;
  for (const std::string& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError(s, "--set expects key=value");
    std::string key = s.substr(0, eq);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    std::string value = s.substr(eq + 1);
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());
    if (!kv.emplace(key, value).second) throw ConfigError(key, "set more than once");
  }
  auto put = [&](const char* key, const auto& opt) {
    if (!opt) return;
    if constexpr (std::is_same_v<std::decay_t<decltype(*opt)>, std::string>) {
      kv[key] = *opt;
    } else {
      kv[key] = std::to_string(*opt);
    }
  };
  put("case", o.case_id);
  put("model", o.model);
  put("treatment", o.treatment);
  put("n_cells", o.n_cells);
  put("dt", o.dt);
  put("horizon", o.horizon);
  put("delta", o.delta);
  put("snapshot_times", o.snapshots);
  put("threads", o.threads);
  put("cache_dir", o.cache_dir);
  return kv;
}

ResolvedConfig load(const Options& o) {
  KeyValues file;
  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    if (!in) throw ConfigError("", "cannot read " + o.config_file);
    std::stringstream ss;
    ss << in.rdbuf();
    file = parse_key_values(ss.str());
  }
  return resolve_config(file, overrides_from(o));
}

std::string hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const fs::path& dir, const std::string& command,
                    const std::vector<std::string>& args, const ResolvedConfig& cfg,
                    double seconds, const std::vector<std::string>& files) {
  fs::create_directories(dir);
  std::ofstream m(dir / "manifest.txt");
  m << "# biofilm_cli " << BIOFILM_VERSION << '\n' << "# command:";
  for (const auto& a : args) m << ' ' << a;
  m << '\n'
    << "# subcommand: " << command << '\n'
    << "# config_hash: " << hex(config_hash(test_case(cfg.case_id), cfg.run)) << '\n'
    << "# finished: " << utc_now() << '\n'
    << "# wall_seconds: " << format_number(seconds) << '\n';
  for (const auto& f : files) m << "# output: " << f << '\n';
  m << to_config_text(cfg);
}

StudyOptions study_options(const ResolvedConfig& cfg) {
  return {cfg.run.scheme, cfg.run.newton, cfg.threads, cfg.cache_dir};
}

void print_convergence(std::ostream& out, const ConvergenceResult& r) {
  out << kConvergenceHeader << '\n';
  for (std::size_t j = 0; j < r.resolutions.size(); ++j) {
    out << format_shortest(r.resolutions[j]) << ',' << format_shortest(r.errors_u[j]) << ','
        << format_shortest(r.errors_v[j]);
    if (j > 0) {
      out << ',' << format_shortest(r.orders_u[j - 1]) << ','
          << format_shortest(r.orders_v[j - 1]);
    } else {
      out << ",,";
    }
    out << '\n';
  }
  out << "mean order u " << format_shortest(r.mean_order_u()) << ", v "
      << format_shortest(r.mean_order_v()) << '\n';
}

int check_potentials_command(const Options& o, std::ostream& out) {
  const std::array deltas{1e-2, 1e-4, 1e-6};
  const std::array polymerization{1.0, 1e3};
  const auto checks = check_potentials(deltas, polymerization);
  bool ok = true;
  std::ostringstream table;
  table << "check,worst,tolerance,passed\n";
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << ": worst " << format_shortest(c.worst)
        << " (tolerance " << format_shortest(c.tolerance) << ")\n";
    table << '"' << c.name << "\"," << format_number(c.worst) << ','
          << format_number(c.tolerance) << ',' << (c.passed ? 1 : 0) << '\n';
    ok = ok && c.passed;
  }
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    std::ofstream(fs::path(o.out_dir) / "potential_checks.csv") << table.str();
  }
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-volume solver for a degenerate Cahn-Hilliard biofilm model",
               "biofilm_cli"};
  app.set_version_flag("--version", BIOFILM_VERSION);
  app.require_subcommand(1);

  Options o;
  auto* run_cmd = app.add_subcommand("run", "simulate one test case");
  auto* space_cmd = app.add_subcommand("convergence-space", "mesh refinement study");
  auto* time_cmd = app.add_subcommand("convergence-time", "time step refinement study");
  auto* cmp_cmd = app.add_subcommand("compare-models", "this model against Wang-Zhang");
  auto* pot_cmd = app.add_subcommand("check-potentials", "structural checks of the potentials");
  for (auto* sub : {run_cmd, space_cmd, time_cmd, cmp_cmd}) add_common(sub, o, true);
  pot_cmd->add_option("--out", o.out_dir, "output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << BIOFILM_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (pot_cmd->parsed()) return check_potentials_command(o, out);

  ResolvedConfig cfg;
  try {
    cfg = load(o);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  const fs::path dir = o.out_dir;
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  std::vector<std::string> files;
  std::string command;
  try {
    fs::create_directories(dir);
    if (run_cmd->parsed()) {
      command = "run";
      const RunResult r = run(test_case(cfg.case_id), cfg.run);
      const auto names = write_run_tables(dir, r);
      files = names;
      files.push_back("diagnostics.csv");
      if (o.plot) {
        write_plot_script(dir, PlotKind::Run, names);
        files.push_back("plot.gp");
      }
      const auto& last = r.diagnostics.back();
      out << "case " << cfg.case_id << ": " << r.steps << " steps to t="
          << format_shortest(last.t) << ", mass_u " << format_shortest(last.mass_u)
          << ", max_v " << format_shortest(last.max_v) << '\n';
    } else if (space_cmd->parsed()) {
      command = "convergence-space";
      const ConvergenceResult r = convergence_space(cfg.space, study_options(cfg));
      write_convergence_csv(dir / "convergence.csv", r);
      files.push_back("convergence.csv");
      if (o.plot) {
        write_plot_script(dir, PlotKind::Convergence, {});
        files.push_back("plot.gp");
      }
      print_convergence(out, r);
    } else if (time_cmd->parsed()) {
      command = "convergence-time";
      const ConvergenceResult r = convergence_time(cfg.time, study_options(cfg));
      write_convergence_csv(dir / "convergence.csv", r);
      files.push_back("convergence.csv");
      if (o.plot) {
        write_plot_script(dir, PlotKind::Convergence, {});
        files.push_back("plot.gp");
      }
      print_convergence(out, r);
    } else if (cmp_cmd->parsed()) {
      command = "compare-models";
      const ModelComparison c = compare_models(test_case(cfg.case_id), cfg.run);
      std::vector<std::string> names;
      for (const auto& f : write_run_tables(dir / "this-paper", c.volume_filling)) {
        names.push_back(f);
        files.push_back("this-paper/" + f);
      }
      files.push_back("this-paper/diagnostics.csv");
      for (const auto& f : write_run_tables(dir / "wang-zhang", c.wang_zhang)) {
        files.push_back("wang-zhang/" + f);
      }
      files.push_back("wang-zhang/diagnostics.csv");
      write_model_difference_csv(dir / "model_difference.csv", c);
      files.push_back("model_difference.csv");
      if (o.plot) {
        write_plot_script(dir, PlotKind::Comparison, names);
        files.push_back("plot.gp");
      }
      out << kModelDifferenceHeader << '\n';
      for (std::size_t s = 0; s < c.times.size(); ++s) {
        out << format_shortest(c.times[s]) << ',' << format_shortest(c.l2_u[s]) << ','
            << format_shortest(c.l2_v[s]) << '\n';
      }
    }
  } catch (const RunError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const fs::filesystem_error& e) {
    err << "io error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  }
  write_manifest(dir, command, args, cfg, elapsed(), files);
  return kExitOk;
}

}  // namespace biofilm
