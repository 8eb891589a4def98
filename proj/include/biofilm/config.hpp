#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "biofilm/harness.hpp"
#include "biofilm/params.hpp"

namespace biofilm {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Everything a subcommand needs, with all defaults filled in.
struct ResolvedConfig {
  int case_id = 1;
  RunConfig run;
  SpaceStudy space;
  TimeStudy time;
  int threads = 1;
  std::string cache_dir;
  /// Present when the parameters were given in physical units.
  std::optional<PhysicalParams> physical;
};

using KeyValues = std::map<std::string, std::string>;

/// Parses `name = value` lines; '#' starts a comment. Duplicate keys are errors.
KeyValues parse_key_values(std::string_view text);

/// Resolves file values overridden by `overrides` against the built-in defaults.
/// Unknown keys, malformed values, out-of-range values and mixing physical with
/// scaled parameters raise ConfigError naming the key.
ResolvedConfig resolve_config(const KeyValues& file, const KeyValues& overrides = {});

ResolvedConfig parse_config(std::string_view text, const KeyValues& overrides = {});

/// Canonical `key = value` text of every resolved setting (scaled parameters,
/// 17 significant digits). Feeding it back to parse_config reproduces `cfg`.
std::string to_config_text(const ResolvedConfig& cfg);

}  // namespace biofilm
