#include "nematorus/config.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nematorus/errors.hpp"

namespace nematorus {

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"preset", "", "named preset supplying defaults", false},
      {"R", "2", "outer radius R"},
      {"r", "1", "tube radius r"},
      {"K1", "1", "splay modulus"},
      {"K2", "1", "twist modulus"},
      {"K3", "1", "bend modulus"},
      {"kappa", "1", "one-constant modulus used by the flow"},
      {"n-theta", "64", "grid nodes along theta"},
      {"n-phi", "64", "grid nodes along phi"},
      {"dt", "auto", "time step, or 'auto' for cfl-safety times the stability bound"},
      {"cfl-safety", "0.9", "fraction of the stability bound used when dt is auto"},
      {"stop-tol", "1e-4", "energy change per snapshot interval that stops the flow"},
      {"stop-residual", "0", "optional max-norm residual required at convergence (0 = off)"},
      {"max-steps", "100000", "hard cap on time steps"},
      {"snapshot-every", "10", "steps between trace snapshots and stop checks"},
      {"h-theta", "0", "winding index along theta"},
      {"h-phi", "0", "winding index along phi"},
      {"init", "noise", "initial datum: constant, noise, smooth, band or file"},
      {"init-value", "1.5707963267948966", "base value of the initial periodic part"},
      {"init-amplitude", "0.01", "noise amplitude, or cos(theta) amplitude for band"},
      {"init-seed", "1", "64-bit seed of the initial-data generator"},
      {"init-modes", "3", "highest wave number of smooth initial data"},
      {"init-file", "", "director-field CSV used when init = file"},
      {"output-dir", "nematorus-out", "directory receiving all artifacts", false},
      {"emit-trace", "true", "write the energy trace of flows"},
      {"emit-fields", "true", "write initial and final director fields"},
      {"h-max", "3", "sector sweep covers 0..h-max in both indices"},
      {"jobs", "1", "worker threads for sector sweeps", false},
      {"b-lo", "1.3", "lower aspect ratio of the threshold search"},
      {"b-hi", "1.8", "upper aspect ratio of the threshold search"},
      {"b-tol", "0.02", "width at which the threshold bisection stops"},
      {"b-values", "", "comma-separated aspect ratios for constant-state curves (empty = R/r)"},
      {"alpha-samples", "361", "angles sampled on [0, pi] for constant-state curves"},
      {"lambda-min", "0.05", "smallest K3/K2 of the bifurcation sweep"},
      {"lambda-max", "3.25", "largest K3/K2 of the bifurcation sweep"},
      {"lambda-steps", "321", "number of K3/K2 values of the bifurcation sweep"},
      {"input", "", "director-field CSV converted by export instead of the initial datum"},
  };
  return keys;
}

const std::map<std::string, Settings>& presets() {
  static const std::map<std::string, Settings> table = {
      {"fig2-splay",
       {{"K1", "1"}, {"K2", "0"}, {"K3", "0"},
        {"b-values", "1.1,1.1547005383792515,1.25,1.6"}, {"alpha-samples", "361"}}},
      {"fig2-twist",
       {{"K1", "0"}, {"K2", "1"}, {"K3", "0"},
        {"b-values", "1.1,1.1547005383792515,1.25,1.6"}, {"alpha-samples", "361"}}},
      {"fig2-bend",
       {{"K1", "0"}, {"K2", "0"}, {"K3", "1"},
        {"b-values", "1.1,1.1547005383792515,1.25,1.6"}, {"alpha-samples", "361"}}},
      {"fig2-one-constant",
       {{"K1", "1"}, {"K2", "1"}, {"K3", "1"},
        {"b-values", "1.1,1.1547005383792515,1.25,1.6"}, {"alpha-samples", "361"}}},
      {"fig3",
       {{"R", "1.25"}, {"r", "1"}, {"K1", "1"}, {"K2", "1"}, {"K3", "1"},
        {"lambda-min", "0.05"}, {"lambda-max", "3.25"}, {"lambda-steps", "321"}}},
      {"fig6-left",
       {{"R", "2.5"}, {"r", "1"}, {"kappa", "1"}, {"n-theta", "64"}, {"n-phi", "64"},
        {"h-theta", "0"}, {"h-phi", "0"}, {"init", "noise"},
        {"init-value", "1.5707963267948966"}, {"init-amplitude", "0.01"}, {"init-seed", "1"},
        {"stop-tol", "1e-10"}, {"max-steps", "200000"}}},
      {"fig6-right",
       {{"R", "1.33"}, {"r", "1"}, {"kappa", "1"}, {"n-theta", "64"}, {"n-phi", "64"},
        {"h-theta", "0"}, {"h-phi", "0"}, {"init", "band"},
        {"init-value", "0.7853981633974483"}, {"init-amplitude", "0.7853981633974483"},
        {"stop-tol", "1e-10"}, {"max-steps", "400000"}}},
      {"fig7",
       {{"R", "1.2"}, {"r", "1"}, {"kappa", "1"}, {"n-theta", "64"}, {"n-phi", "64"},
        {"h-theta", "0"}, {"h-phi", "0"}, {"init", "band"},
        {"init-value", "0.7853981633974483"}, {"init-amplitude", "0.7853981633974483"},
        {"stop-tol", "1e-10"}, {"max-steps", "400000"}}},
      {"table1",
       {{"R", "2"}, {"r", "1"}, {"kappa", "1"}, {"n-theta", "128"}, {"n-phi", "128"},
        {"dt", "0.00025"}, {"max-steps", "30000"}, {"stop-tol", "1e-7"},
        {"snapshot-every", "10"}, {"h-max", "3"}, {"init", "noise"},
        {"init-value", "1.5707963267948966"}, {"init-amplitude", "0.01"},
        {"init-seed", "1"}}},
      {"threshold",
       {{"r", "1"}, {"kappa", "1"}, {"n-theta", "128"}, {"n-phi", "128"},
        {"b-lo", "1.3"}, {"b-hi", "1.8"}, {"b-tol", "0.02"}, {"stop-tol", "1e-9"},
        {"max-steps", "2000000"}, {"init-amplitude", "0.05"}, {"init-seed", "1"},
        {"init-modes", "3"}}},
  };
  return table;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool is_known_key(const std::string& key) {
  for (const auto& k : config_keys()) {
    if (k.name == key) return true;
  }
  return false;
}

double parse_double(const Settings& s, const std::string& key) {
  const std::string& v = s.at(key);
  double out = 0.0;
  const char* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(out)) {
    throw ValidationError("key '" + key + "' expects a finite number, got '" + v + "'");
  }
  return out;
}

long parse_long(const Settings& s, const std::string& key) {
  const std::string& v = s.at(key);
  long out = 0;
  const char* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ValidationError("key '" + key + "' expects an integer, got '" + v + "'");
  }
  return out;
}

int parse_int(const Settings& s, const std::string& key) {
  const long v = parse_long(s, key);
  if (v < -1000000000L || v > 1000000000L) {
    throw ValidationError("key '" + key + "' is out of range");
  }
  return static_cast<int>(v);
}

std::uint64_t parse_seed(const Settings& s, const std::string& key) {
  const std::string& v = s.at(key);
  std::uint64_t out = 0;
  const char* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ValidationError("key '" + key + "' expects an unsigned 64-bit integer, got '" + v +
                          "'");
  }
  return out;
}

bool parse_bool(const Settings& s, const std::string& key) {
  const std::string& v = s.at(key);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ValidationError("key '" + key + "' expects true or false, got '" + v + "'");
}

std::vector<double> parse_list(const Settings& s, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(s.at(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    Settings one{{key, item}};
    out.push_back(parse_double(one, key));
  }
  return out;
}

}  // namespace

Settings parse_config_text(const std::string& text, const std::string& origin) {
  Settings out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(origin + ":" + std::to_string(lineno) +
                            ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!is_known_key(key)) {
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key +
                            "'");
    }
    out[key] = value;
  }
  return out;
}

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

Settings resolve_settings(const Settings& file_settings, const Settings& flag_settings) {
  Settings out;
  for (const auto& k : config_keys()) out[k.name] = k.default_value;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) out["output-dir"] = env;

  std::string preset;
  if (auto it = file_settings.find("preset"); it != file_settings.end()) preset = it->second;
  if (auto it = flag_settings.find("preset"); it != flag_settings.end()) preset = it->second;
  if (!preset.empty()) {
    const auto& table = presets();
    const auto it = table.find(preset);
    if (it == table.end()) throw ValidationError("unknown preset '" + preset + "'");
    for (const auto& [k, v] : it->second) out[k] = v;
    out["preset"] = preset;
  }
  for (const auto& [k, v] : file_settings) {
    if (!is_known_key(k)) throw ValidationError("unknown key '" + k + "'");
    out[k] = v;
  }
  for (const auto& [k, v] : flag_settings) {
    if (!is_known_key(k)) throw ValidationError("unknown key '" + k + "'");
    out[k] = v;
  }
  return out;
}

RunConfig build_config(const Settings& resolved) {
  Settings s = resolved;
  for (const auto& k : config_keys()) {
    if (!s.count(k.name)) s[k.name] = k.default_value;
  }

  RunConfig c;
  c.R = parse_double(s, "R");
  c.r = parse_double(s, "r");
  (void)c.shape();

  c.constants.K1 = parse_double(s, "K1");
  c.constants.K2 = parse_double(s, "K2");
  c.constants.K3 = parse_double(s, "K3");
  c.constants.kappa = parse_double(s, "kappa");
  c.constants.validate();
  if (!(c.constants.kappa > 0.0)) throw ValidationError("kappa must be positive");

  c.n_theta = parse_int(s, "n-theta");
  c.n_phi = parse_int(s, "n-phi");
  (void)c.grid();

  if (s.at("dt") != "auto") c.flow.dt = parse_double(s, "dt");
  c.flow.cfl_safety = parse_double(s, "cfl-safety");
  c.flow.stop_tol = parse_double(s, "stop-tol");
  c.flow.stop_residual = parse_double(s, "stop-residual");
  c.flow.max_steps = parse_long(s, "max-steps");
  c.flow.snapshot_every = parse_long(s, "snapshot-every");
  c.flow.validate();

  c.h = {parse_long(s, "h-theta"), parse_long(s, "h-phi")};

  c.initial.kind = initial_kind_from_string(s.at("init"));
  c.initial.value = parse_double(s, "init-value");
  c.initial.amplitude = parse_double(s, "init-amplitude");
  c.initial.seed = parse_seed(s, "init-seed");
  c.initial.modes = parse_int(s, "init-modes");
  c.initial.path = s.at("init-file");
  if (c.initial.modes < 1) throw ValidationError("init-modes must be at least 1");
  if (c.initial.kind == InitialKind::File && c.initial.path.empty()) {
    throw ValidationError("init = file requires init-file");
  }

  c.output_dir = s.at("output-dir");
  if (c.output_dir.empty()) throw ValidationError("output-dir must not be empty");
  c.emit_trace = parse_bool(s, "emit-trace");
  c.emit_fields = parse_bool(s, "emit-fields");

  c.h_max = parse_int(s, "h-max");
  if (c.h_max < 0 || c.h_max > 64) throw ValidationError("h-max must lie in 0..64");
  c.jobs = parse_int(s, "jobs");
  if (c.jobs < 1 || c.jobs > 256) throw ValidationError("jobs must lie in 1..256");

  c.b_lo = parse_double(s, "b-lo");
  c.b_hi = parse_double(s, "b-hi");
  c.b_tol = parse_double(s, "b-tol");
  if (!(c.b_lo > 1.0 + kAspectGuard)) throw ValidationError("b-lo must exceed 1");
  if (!(c.b_lo < c.b_hi)) throw ValidationError("b-lo must be smaller than b-hi");
  if (!(c.b_tol > 0.0)) throw ValidationError("b-tol must be positive");

  c.b_values = parse_list(s, "b-values");
  for (double b : c.b_values) {
    if (!(b > 1.0 + kAspectGuard)) throw ValidationError("every b-values entry must exceed 1");
  }
  c.alpha_samples = parse_int(s, "alpha-samples");
  if (c.alpha_samples < 2) throw ValidationError("alpha-samples must be at least 2");
  c.lambda_min = parse_double(s, "lambda-min");
  c.lambda_max = parse_double(s, "lambda-max");
  c.lambda_steps = parse_int(s, "lambda-steps");
  if (!(c.lambda_min > 0.0 && c.lambda_min < c.lambda_max)) {
    throw ValidationError("need 0 < lambda-min < lambda-max");
  }
  if (c.lambda_steps < 2) throw ValidationError("lambda-steps must be at least 2");

  c.input = s.at("input");
  c.resolved = s;
  c.config_hash = config_hash(s);
  return c;
}

std::string config_hash(const Settings& resolved) {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&h](const std::string& text) {
    for (unsigned char ch : text) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& k : config_keys()) {
    if (!k.hashed) continue;
    const auto it = resolved.find(k.name);
    feed(k.name + "=" + (it == resolved.end() ? k.default_value : it->second) + "\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string render_settings(const Settings& resolved) {
  std::string out;
  for (const auto& k : config_keys()) {
    const auto it = resolved.find(k.name);
    out += k.name + " = " + (it == resolved.end() ? k.default_value : it->second) + "\n";
  }
  return out;
}

}  // namespace nematorus
