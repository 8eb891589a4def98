#include "biofilm/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "biofilm/output.hpp"

namespace biofilm {

namespace {

constexpr std::array kPhysicalKeys = {"D",      "M_prime", "R_c", "R_p", "K_v", "Gamma1",
                                      "Gamma2", "x0",      "t0",  "v0",  "kBT"};
constexpr std::array kScaledKeys = {"D0", "M0", "Rc0", "Rp0", "K", "Gamma1_0", "Gamma2_0"};
constexpr std::array kSharedKeys = {"N", "lambda", "K_tilde"};
constexpr std::array kOtherKeys = {"case",
                                   "model",
                                   "treatment",
                                   "delta",
                                   "include_gamma_factors",
                                   "n_cells",
                                   "dt",
                                   "horizon",
                                   "snapshot_times",
                                   "diagnostics_stride",
                                   "abs_tol",
                                   "rel_tol",
                                   "max_iters",
                                   "damping",
                                   "armijo_factor",
                                   "armijo_min_step",
                                   "space_reference_cells",
                                   "space_dt",
                                   "space_horizon",
                                   "space_j_min",
                                   "space_j_max",
                                   "time_n_cells",
                                   "time_reference_exponent",
                                   "time_j_min",
                                   "time_j_max",
                                   "time_horizon",
                                   "threads",
                                   "cache_dir"};

template <std::size_t N>
bool contains(const std::array<const char*, N>& keys, const std::string& k) {
  return std::any_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; });
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw ConfigError(key, "expected a number, got '" + text + "'");
  }
  return value;
}

long to_integer(const std::string& key, const std::string& text) {
  long value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return value;
}

bool to_bool(const std::string& key, const std::string& text) {
  static const std::set<std::string> yes{"true", "1", "yes", "on"};
  static const std::set<std::string> no{"false", "0", "no", "off"};
  if (yes.count(text)) return true;
  if (no.count(text)) return false;
  throw ConfigError(key, "expected a boolean, got '" + text + "'");
}

// Typed access to the merged key-value table.
class Reader {
 public:
  explicit Reader(const KeyValues& kv) : kv_(kv) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  void number(const std::string& key, double& out) const {
    if (has(key)) out = to_double(key, kv_.at(key));
  }
  template <class Int>
  void integer(const std::string& key, Int& out, long lo, long hi) const {
    if (!has(key)) return;
    const long v = to_integer(key, kv_.at(key));
    if (v < lo || v > hi) {
      throw ConfigError(key, "value " + std::to_string(v) + " outside [" + std::to_string(lo) +
                                 ", " + std::to_string(hi) + "]");
    }
    out = static_cast<Int>(v);
  }
  void boolean(const std::string& key, bool& out) const {
    if (has(key)) out = to_bool(key, kv_.at(key));
  }
  const std::string& text(const std::string& key) const { return kv_.at(key); }

 private:
  const KeyValues& kv_;
};

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key, what);
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("", "line " + std::to_string(line_no) + ": expected 'name = value'");
    }
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
    if (!kv.emplace(key, value).second) throw ConfigError(key, "given more than once");
  }
  return kv;
}

ResolvedConfig resolve_config(const KeyValues& file, const KeyValues& overrides) {
  KeyValues merged = file;
  for (const auto& [k, v] : overrides) merged[k] = v;

  std::string physical_key, scaled_key;
  for (const auto& [k, v] : merged) {
    if (contains(kPhysicalKeys, k)) {
      if (physical_key.empty()) physical_key = k;
    } else if (contains(kScaledKeys, k)) {
      if (scaled_key.empty()) scaled_key = k;
    } else if (!contains(kSharedKeys, k) && !contains(kOtherKeys, k)) {
      throw ConfigError(k, "unknown key");
    }
  }
  if (!physical_key.empty() && !scaled_key.empty()) {
    throw ConfigError(scaled_key, "physical (" + physical_key +
                                      ") and scaled parameters cannot both be given");
  }

  const Reader in(merged);
  ResolvedConfig cfg;
  in.integer("case", cfg.case_id, 1, 5);
  const TestCase tc = test_case(cfg.case_id);
  cfg.run = with_case_defaults(cfg.run, tc);

  // Model parameters.
  try {
    if (!physical_key.empty()) {
      PhysicalParams p = default_physical_params();
      in.number("D", p.D);
      in.number("M_prime", p.M_prime);
      in.number("R_c", p.R_c);
      in.number("R_p", p.R_p);
      in.number("K_v", p.K_v);
      in.number("Gamma1", p.Gamma1);
      in.number("Gamma2", p.Gamma2);
      in.number("x0", p.x0);
      in.number("t0", p.t0);
      in.number("v0", p.v0);
      in.number("kBT", p.kBT);
      in.number("N", p.N);
      in.number("lambda", p.lambda);
      in.number("K_tilde", p.K_tilde);
      p.validate();
      cfg.physical = p;
      cfg.run.scheme.params = scale_parameters(p);
    } else {
      ScaledParams s = default_scaled_params();
      in.number("D0", s.D0);
      in.number("M0", s.M0);
      in.number("Rc0", s.Rc0);
      in.number("Rp0", s.Rp0);
      in.number("K", s.K);
      in.number("Gamma1_0", s.Gamma1_0);
      in.number("Gamma2_0", s.Gamma2_0);
      in.number("N", s.N);
      in.number("lambda", s.lambda);
      in.number("K_tilde", s.K_tilde);
      s.validate();
      cfg.run.scheme.params = s;
    }
  } catch (const ParameterError& e) {
    throw ConfigError(e.name(), e.what());
  }

  SchemeConfig& scheme = cfg.run.scheme;
  if (in.has("model")) {
    const std::string& m = in.text("model");
    if (m == "this-paper" || m == "volume-filling") {
      scheme.model = Model::VolumeFilling;
    } else if (m == "wang-zhang") {
      scheme.model = Model::WangZhang;
    } else {
      throw ConfigError("model", "expected 'this-paper' or 'wang-zhang', got '" + m + "'");
    }
  }
  if (in.has("treatment")) {
    const std::string& t = in.text("treatment");
    if (t == "extrapolated") {
      scheme.treatment = CoefficientTreatment::Extrapolated;
    } else if (t == "implicit") {
      scheme.treatment = CoefficientTreatment::Implicit;
    } else {
      throw ConfigError("treatment", "expected 'extrapolated' or 'implicit', got '" + t + "'");
    }
  }
  in.number("delta", scheme.delta);
  require(scheme.delta > 0.0 && scheme.delta < 0.5, "delta", "must lie in (0, 1/2)");
  in.boolean("include_gamma_factors", scheme.include_gamma_factors);

  NewtonConfig& newton = cfg.run.newton;
  in.number("abs_tol", newton.abs_tol);
  require(newton.abs_tol > 0.0, "abs_tol", "must be positive");
  in.number("rel_tol", newton.rel_tol);
  require(newton.rel_tol >= 0.0, "rel_tol", "must be nonnegative");
  in.integer("max_iters", newton.max_iters, 1, 100000);
  if (in.has("damping")) {
    const std::string& d = in.text("damping");
    if (d == "none") {
      newton.damping = Damping::None;
    } else if (d == "armijo") {
      newton.damping = Damping::Armijo;
    } else {
      throw ConfigError("damping", "expected 'none' or 'armijo', got '" + d + "'");
    }
  }
  in.number("armijo_factor", newton.armijo_factor);
  require(newton.armijo_factor > 0.0 && newton.armijo_factor < 1.0, "armijo_factor",
          "must lie in (0, 1)");
  in.number("armijo_min_step", newton.armijo_min_step);
  require(newton.armijo_min_step > 0.0 && newton.armijo_min_step <= 1.0, "armijo_min_step",
          "must lie in (0, 1]");

  RunConfig& run = cfg.run;
  in.integer("n_cells", run.n_cells, 1, 1 << 24);
  in.number("dt", run.dt);
  require(run.dt > 0.0, "dt", "must be positive");
  in.number("horizon", run.horizon);
  require(run.horizon > 0.0, "horizon", "must be positive");
  try {
    step_count(run.horizon, run.dt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("dt", e.what());
  }
  if (in.has("snapshot_times")) {
    run.snapshot_times = parse_list("snapshot_times", in.text("snapshot_times"));
  } else {
    run.snapshot_times.clear();
    for (int q = 0; q <= 4; ++q) run.snapshot_times.push_back(run.horizon * q / 4.0);
  }
  for (double t : run.snapshot_times) {
    require(t >= 0.0 && t <= run.horizon, "snapshot_times",
            "time " + format_shortest(t) + " outside [0, horizon]");
  }
  in.integer("diagnostics_stride", run.diagnostics_stride, 0, 1L << 40);

  SpaceStudy& space = cfg.space;
  in.integer("space_reference_cells", space.reference_cells, 1, 1 << 24);
  in.number("space_dt", space.dt);
  require(space.dt > 0.0, "space_dt", "must be positive");
  in.number("space_horizon", space.horizon);
  require(space.horizon > 0.0, "space_horizon", "must be positive");
  in.integer("space_j_min", space.j_min, 0, 24);
  in.integer("space_j_max", space.j_max, 0, 24);
  require(space.j_min <= space.j_max, "space_j_max", "must be >= space_j_min");
  require(space.reference_cells % (1 << space.j_max) == 0, "space_reference_cells",
          "must be a multiple of 2^space_j_max");

  TimeStudy& time = cfg.time;
  in.integer("time_n_cells", time.n_cells, 1, 1 << 24);
  in.integer("time_reference_exponent", time.reference_exponent, 0, 40);
  in.integer("time_j_min", time.j_min, 0, 20);
  in.integer("time_j_max", time.j_max, 0, 20);
  in.number("time_horizon", time.horizon);
  require(time.horizon > 0.0, "time_horizon", "must be positive");
  require(time.j_min <= time.j_max, "time_j_max", "must be >= time_j_min");
  require(2 * time.j_max <= time.reference_exponent, "time_reference_exponent",
          "reference step must be finer than every study step");

  in.integer("threads", cfg.threads, 1, 4096);
  if (in.has("cache_dir")) cfg.cache_dir = in.text("cache_dir");
  return cfg;
}

ResolvedConfig parse_config(std::string_view text, const KeyValues& overrides) {
  return resolve_config(parse_key_values(text), overrides);
}

std::string to_config_text(const ResolvedConfig& cfg) {
  std::ostringstream out;
  auto put = [&](const char* key, const std::string& value) {
    out << key << " = " << value << '\n';
  };
  auto num = [&](const char* key, double value) { put(key, format_number(value)); };
  auto integer = [&](const char* key, long value) { put(key, std::to_string(value)); };

  const SchemeConfig& s = cfg.run.scheme;
  const ScaledParams& p = s.params;
  integer("case", cfg.case_id);
  put("model", to_string(s.model));
  put("treatment", to_string(s.treatment));
  num("delta", s.delta);
  put("include_gamma_factors", s.include_gamma_factors ? "true" : "false");
  num("D0", p.D0);
  num("M0", p.M0);
  num("Rc0", p.Rc0);
  num("Rp0", p.Rp0);
  num("K", p.K);
  num("Gamma1_0", p.Gamma1_0);
  num("Gamma2_0", p.Gamma2_0);
  num("N", p.N);
  num("lambda", p.lambda);
  num("K_tilde", p.K_tilde);
  integer("n_cells", cfg.run.n_cells);
  num("dt", cfg.run.dt);
  num("horizon", cfg.run.horizon);
  std::string times;
  for (std::size_t i = 0; i < cfg.run.snapshot_times.size(); ++i) {
    if (i) times += ", ";
    times += format_number(cfg.run.snapshot_times[i]);
  }
  put("snapshot_times", times);
  integer("diagnostics_stride", cfg.run.diagnostics_stride);
  const NewtonConfig& n = cfg.run.newton;
  num("abs_tol", n.abs_tol);
  num("rel_tol", n.rel_tol);
  integer("max_iters", n.max_iters);
  put("damping", n.damping == Damping::Armijo ? "armijo" : "none");
  num("armijo_factor", n.armijo_factor);
  num("armijo_min_step", n.armijo_min_step);
  integer("space_reference_cells", cfg.space.reference_cells);
  num("space_dt", cfg.space.dt);
  num("space_horizon", cfg.space.horizon);
  integer("space_j_min", cfg.space.j_min);
  integer("space_j_max", cfg.space.j_max);
  integer("time_n_cells", cfg.time.n_cells);
  integer("time_reference_exponent", cfg.time.reference_exponent);
  integer("time_j_min", cfg.time.j_min);
  integer("time_j_max", cfg.time.j_max);
  num("time_horizon", cfg.time.horizon);
  integer("threads", cfg.threads);
  if (!cfg.cache_dir.empty()) put("cache_dir", cfg.cache_dir);
  return out.str();
}

}  // namespace biofilm
