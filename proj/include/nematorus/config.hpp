#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nematorus/energy.hpp"
#include "nematorus/flow.hpp"
#include "nematorus/initial.hpp"
#include "nematorus/sectors.hpp"

namespace nematorus {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kOutputDirEnv = "NEMATORUS_OUTPUT_DIR";

/// Flat key/value settings as read from a preset, a config file or the flags.
using Settings = std::map<std::string, std::string>;

struct ConfigKey {
  std::string name;
  std::string default_value;
  std::string help;
  /// Whether the key takes part in the config hash (output locations and worker
  /// counts do not change any computed number).
  bool hashed = true;
};

/// Every recognized key with its default, in display order.
const std::vector<ConfigKey>& config_keys();

/// Preset names and their settings.
const std::map<std::string, Settings>& presets();

/// Parses "key = value" lines; '#' starts a comment. Throws ValidationError on
/// malformed lines or unknown keys, IoError when the file cannot be read.
Settings parse_config_text(const std::string& text, const std::string& origin);
Settings read_config_file(const std::string& path);

struct RunConfig {
  double R = 2.0;
  double r = 1.0;
  ElasticConstants constants;
  int n_theta = 64;
  int n_phi = 64;
  FlowParams flow;
  WindingIndex h;
  InitialDatum initial;
  std::string output_dir = "nematorus-out";
  bool emit_trace = true;
  bool emit_fields = true;

  int h_max = 3;
  int jobs = 1;

  double b_lo = 1.3;
  double b_hi = 1.8;
  double b_tol = 0.02;

  std::vector<double> b_values;
  int alpha_samples = 361;
  double lambda_min = 0.05;
  double lambda_max = 3.25;
  int lambda_steps = 321;

  std::string input;

  /// Resolved settings (all keys) used for echo and hashing.
  Settings resolved;
  std::string config_hash;

  TorusShape shape() const { return TorusShape(R, r); }
  PeriodicGrid grid() const { return PeriodicGrid(n_theta, n_phi); }
};

/// Layers, lowest priority first: defaults, environment output directory, preset
/// named by the "preset" key of any layer, config file, explicit flags.
Settings resolve_settings(const Settings& file_settings, const Settings& flag_settings);

/// Converts and validates resolved settings. Throws ValidationError naming the
/// first violated constraint.
RunConfig build_config(const Settings& resolved);

/// 16 hex digits of FNV-1a over the canonical "key=value" lines of hashed keys.
std::string config_hash(const Settings& resolved);

/// Canonical "key = value" text of the resolved settings (loadable as a config file).
std::string render_settings(const Settings& resolved);

}  // namespace nematorus
