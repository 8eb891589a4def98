#include "biofilm/harness.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

namespace biofilm {

namespace {

double case3_u(double x) { return -(x - 0.5) * (x - 0.5) + 1.0 / 3.0; }

// Runs fn(0..count-1) on up to `threads` workers; rethrows the first failure.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < std::min(threads, count); ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

RunConfig study_run(const StudyOptions& opts, int n_cells, double dt, double horizon) {
  RunConfig cfg;
  cfg.scheme = opts.scheme;
  cfg.newton = opts.newton;
  cfg.n_cells = n_cells;
  cfg.dt = dt;
  cfg.horizon = horizon;
  cfg.diagnostics_stride = 0;
  return cfg;
}

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

TestCase test_case(int id) {
  TestCase tc;
  tc.id = id;
  switch (id) {
    case 1:
      tc.initial_u = [](double x) {
        const double s = std::sin(2.0 * std::numbers::pi * x);
        return 0.5 * s * s + 2e-2;
      };
      tc.initial_v = [](double) { return 0.75; };
      tc.horizon = 10.0;
      break;
    case 2:
      tc.initial_u = [](double x) { return x <= 0.2 ? 0.2 : 1e-2; };
      tc.initial_v = [](double) { return 0.1; };
      tc.horizon = 10.0;
      break;
    case 3:
      tc.initial_u = case3_u;
      tc.initial_v = [](double) { return 0.3; };
      tc.horizon = 10.0;
      break;
    case 4:
      tc.initial_u = case3_u;
      tc.initial_v = [](double) { return 0.3; };
      tc.horizon = 1.0;
      tc.n_cells = 2048;
      tc.dt = 1e-5;
      break;
    case 5:
      tc.initial_u = case3_u;
      tc.initial_v = [](double) { return 0.3; };
      tc.horizon = 1.0;
      tc.n_cells = 128;
      tc.dt = std::ldexp(1.0 / 128.0, -14);
      break;
    default:
      throw std::out_of_range("unknown test case " + std::to_string(id) + " (expected 1..5)");
  }
  return tc;
}

void RunConfig::validate() const {
  scheme.validate();
  newton.validate();
  if (n_cells < 1) throw std::invalid_argument("n_cells must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("horizon must be positive");
  }
  if (diagnostics_stride < 0) throw std::invalid_argument("diagnostics_stride must be >= 0");
  for (double t : snapshot_times) {
    if (!(t >= 0.0 && t <= horizon)) {
      throw std::invalid_argument("snapshot time " + std::to_string(t) + " outside [0, T]");
    }
  }
}

RunConfig with_case_defaults(RunConfig base, const TestCase& tc) {
  base.n_cells = tc.n_cells;
  base.dt = tc.dt;
  base.horizon = tc.horizon;
  return base;
}

long step_count(double horizon, double dt) {
  const double ratio = horizon / dt;
  const long n = std::lround(ratio);
  if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-8 * std::max(1.0, ratio)) {
    throw std::invalid_argument("horizon " + std::to_string(horizon) +
                                " is not a whole multiple of dt " + std::to_string(dt));
  }
  return n;
}

RunResult run(const Profile& u0, const Profile& v0, const RunConfig& cfg) {
  cfg.validate();
  RunResult out;
  out.grid = Grid(cfg.n_cells);
  const Grid& grid = out.grid;
  const long n_steps = step_count(cfg.horizon, cfg.dt);
  out.steps = n_steps;

  // step -> indices into cfg.snapshot_times
  std::map<long, std::vector<std::size_t>> wanted;
  for (std::size_t s = 0; s < cfg.snapshot_times.size(); ++s) {
    const double t = cfg.snapshot_times[s];
    const long k = std::min(n_steps, static_cast<long>(std::ceil(t / cfg.dt - 1e-9)));
    wanted[k].push_back(s);
  }
  out.snapshots.resize(cfg.snapshot_times.size());
  auto take_snapshots = [&](long k, const State& s) {
    auto it = wanted.find(k);
    if (it == wanted.end()) return;
    for (std::size_t idx : it->second) {
      out.snapshots[idx] = Snapshot{cfg.snapshot_times[idx], static_cast<double>(k) * cfg.dt,
                                    k, s};
    }
  };

  History h;
  h.prev = project_initial(grid, u0, v0, cfg.scheme);
  h.step_index = 1;
  out.diagnostics.push_back(make_record(0.0, h.prev, grid, cfg.scheme, 0));
  take_snapshots(0, h.prev);

  for (long k = 1; k <= n_steps; ++k) {
    StepResult step;
    try {
      step = solve_step(h, grid, cfg.dt, cfg.scheme, cfg.newton);
    } catch (const NewtonError& e) {
      throw RunError(k, e);
    } catch (const SchemeError& e) {
      throw RunError(k, NewtonError(e.what(), NewtonReport{}));
    } catch (const SingularBlockError& e) {
      throw RunError(k, NewtonError(e.what(), NewtonReport{}));
    }
    const double t = static_cast<double>(k) * cfg.dt;
    const bool record = k == n_steps || (cfg.diagnostics_stride > 0 && k % cfg.diagnostics_stride == 0);
    if (record) {
      out.diagnostics.push_back(
          make_record(t, step.state, grid, cfg.scheme, step.report.iterations));
    }
    take_snapshots(k, step.state);
    h.prev2 = std::move(h.prev);
    h.prev = std::move(step.state);
    h.step_index = static_cast<int>(k + 1);
  }
  out.final_state = std::move(h.prev);
  return out;
}

RunResult run(const TestCase& tc, const RunConfig& cfg) {
  return run(tc.initial_u, tc.initial_v, cfg);
}

double ConvergenceResult::mean_order_u() const { return mean(orders_u); }
double ConvergenceResult::mean_order_v() const { return mean(orders_v); }

std::vector<double> observed_orders(const std::vector<double>& errors,
                                    const std::vector<double>& step_sizes) {
  if (errors.size() != step_sizes.size()) {
    throw std::invalid_argument("observed_orders: length mismatch");
  }
  std::vector<double> orders;
  for (std::size_t j = 0; j + 1 < errors.size(); ++j) {
    orders.push_back(std::log(errors[j] / errors[j + 1]) /
                     std::log(step_sizes[j] / step_sizes[j + 1]));
  }
  return orders;
}

std::uint64_t config_hash(const TestCase& tc, const RunConfig& cfg) {
  std::ostringstream key;
  key << std::setprecision(17);
  const ScaledParams& p = cfg.scheme.params;
  key << "case=" << tc.id << ";n=" << cfg.n_cells << ";dt=" << cfg.dt << ";T=" << cfg.horizon
      << ";model=" << to_string(cfg.scheme.model)
      << ";treatment=" << to_string(cfg.scheme.treatment) << ";delta=" << cfg.scheme.delta
      << ";gamma=" << cfg.scheme.include_gamma_factors << ";D0=" << p.D0 << ";M0=" << p.M0
      << ";Rc0=" << p.Rc0 << ";Rp0=" << p.Rp0 << ";K=" << p.K << ";G1=" << p.Gamma1_0
      << ";G2=" << p.Gamma2_0 << ";N=" << p.N << ";lambda=" << p.lambda
      << ";Kt=" << p.K_tilde << ";abs_tol=" << cfg.newton.abs_tol
      << ";rel_tol=" << cfg.newton.rel_tol << ";max_iters=" << cfg.newton.max_iters
      << ";damping=" << static_cast<int>(cfg.newton.damping)
      << ";factor=" << cfg.newton.armijo_factor << ";min_step=" << cfg.newton.armijo_min_step;
  // FNV-1a
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : key.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

State final_state(const TestCase& tc, const RunConfig& cfg, const std::string& cache_dir) {
  namespace fs = std::filesystem;
  fs::path path;
  if (!cache_dir.empty()) {
    std::ostringstream name;
    name << "reference_" << std::hex << std::setw(16) << std::setfill('0')
         << config_hash(tc, cfg) << ".csv";
    path = fs::path(cache_dir) / name.str();
    std::ifstream in(path);
    if (in) {
      State s(static_cast<std::size_t>(cfg.n_cells));
      std::string line;
      std::getline(in, line);  // header
      std::size_t i = 0;
      char comma = 0;
      while (i < s.size() && in >> s.u[i] >> comma >> s.v[i] >> comma >> s.mu[i]) ++i;
      if (i == s.size()) return s;
    }
  }
  RunConfig quiet = cfg;
  quiet.diagnostics_stride = 0;
  quiet.snapshot_times.clear();
  State s = run(tc, quiet).final_state;
  if (!cache_dir.empty()) {
    fs::create_directories(cache_dir);
    const fs::path tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << std::setprecision(17) << "u,v,mu\n";
      for (std::size_t i = 0; i < s.size(); ++i) {
        out << s.u[i] << ',' << s.v[i] << ',' << s.mu[i] << '\n';
      }
    }
    fs::rename(tmp, path);
  }
  return s;
}

ConvergenceResult convergence_space(const SpaceStudy& study, const StudyOptions& opts) {
  if (study.j_min > study.j_max || study.j_min < 0) {
    throw std::invalid_argument("space study: invalid level range");
  }
  if ((1 << study.j_max) > study.reference_cells ||
      study.reference_cells % (1 << study.j_max) != 0) {
    throw std::invalid_argument("space study: coarse meshes must nest in the reference mesh");
  }
  const TestCase tc = test_case(study.case_id);
  const int levels = study.j_max - study.j_min + 1;

  std::vector<State> states(static_cast<std::size_t>(levels + 1));
  parallel_for(levels + 1, opts.threads, [&](int idx) {
    const int cells = idx == levels ? study.reference_cells : 1 << (study.j_min + idx);
    states[idx] =
        final_state(tc, study_run(opts, cells, study.dt, study.horizon), opts.cache_dir);
  });

  const State& ref = states[levels];
  ConvergenceResult result;
  std::vector<double> h;
  for (int idx = 0; idx < levels; ++idx) {
    const int cells = 1 << (study.j_min + idx);
    const double dx = 1.0 / cells;
    result.resolutions.push_back(cells);
    h.push_back(dx);
    result.errors_u.push_back(l2_distance(restrict_to(ref.u, cells), states[idx].u, dx));
    result.errors_v.push_back(l2_distance(restrict_to(ref.v, cells), states[idx].v, dx));
  }
  result.orders_u = observed_orders(result.errors_u, h);
  result.orders_v = observed_orders(result.errors_v, h);
  return result;
}

ConvergenceResult convergence_time(const TimeStudy& study, const StudyOptions& opts) {
  if (study.j_min > study.j_max || study.j_min < 0 || 2 * study.j_max > study.reference_exponent) {
    throw std::invalid_argument("time study: invalid level range");
  }
  const TestCase tc = test_case(study.case_id);
  const int levels = study.j_max - study.j_min + 1;
  const double base = 1.0 / study.n_cells;

  std::vector<State> states(static_cast<std::size_t>(levels + 1));
  std::vector<double> dts(static_cast<std::size_t>(levels + 1));
  for (int idx = 0; idx < levels; ++idx) dts[idx] = std::ldexp(base, -2 * (study.j_min + idx));
  dts[levels] = std::ldexp(base, -study.reference_exponent);

  // Largest job (the reference) first so it overlaps the others.
  parallel_for(levels + 1, opts.threads, [&](int order) {
    const int idx = levels - order;
    states[idx] =
        final_state(tc, study_run(opts, study.n_cells, dts[idx], study.horizon), opts.cache_dir);
  });

  const State& ref = states[levels];
  ConvergenceResult result;
  std::vector<double> h(dts.begin(), dts.begin() + levels);
  for (int idx = 0; idx < levels; ++idx) {
    result.resolutions.push_back(dts[idx]);
    result.errors_u.push_back(l2_distance(ref.u, states[idx].u, base));
    result.errors_v.push_back(l2_distance(ref.v, states[idx].v, base));
  }
  result.orders_u = observed_orders(result.errors_u, h);
  result.orders_v = observed_orders(result.errors_v, h);
  return result;
}

ModelComparison compare_models(const Profile& u0, const Profile& v0, const RunConfig& cfg) {
  RunConfig a = cfg;
  a.scheme.model = Model::VolumeFilling;
  RunConfig b = cfg;
  b.scheme.model = Model::WangZhang;

  ModelComparison out;
  out.volume_filling = run(u0, v0, a);
  out.wang_zhang = run(u0, v0, b);
  const double dx = out.volume_filling.grid.dx();
  for (std::size_t s = 0; s < out.volume_filling.snapshots.size(); ++s) {
    const Snapshot& x = out.volume_filling.snapshots[s];
    const Snapshot& y = out.wang_zhang.snapshots[s];
    out.times.push_back(x.time);
    out.l2_u.push_back(l2_distance(x.state.u, y.state.u, dx));
    out.l2_v.push_back(l2_distance(x.state.v, y.state.v, dx));
  }
  return out;
}

ModelComparison compare_models(const TestCase& tc, const RunConfig& cfg) {
  return compare_models(tc.initial_u, tc.initial_v, cfg);
}

}  // namespace biofilm
