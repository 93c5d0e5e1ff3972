#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "nematorus/commands.hpp"
#include "nematorus/config.hpp"
#include "nematorus/errors.hpp"

namespace {

using namespace nematorus;

struct CommonOptions {
  std::string config_file;
  std::map<std::string, CLI::Option*> key_options;
  std::map<std::string, std::string> key_values;
  bool print_config = false;
};

void add_common(CLI::App& sub, CommonOptions& opts) {
  sub.add_option("--config", opts.config_file, "Flat key = value config file");
  sub.add_flag("--print-config", opts.print_config,
               "Print the resolved settings and the config hash, then exit");
  for (const ConfigKey& key : config_keys()) {
    std::string& slot = opts.key_values[key.name];
    std::string help = key.help;
    if (!key.default_value.empty()) help += " [default: " + key.default_value + "]";
    opts.key_options[key.name] = sub.add_option("--" + key.name, slot, help);
  }
}

RunConfig resolve(const CommonOptions& opts) {
  Settings flags;
  for (const auto& [name, option] : opts.key_options) {
    if (option->count() > 0) flags[name] = opts.key_values.at(name);
  }
  const Settings file = opts.config_file.empty() ? Settings{} : read_config_file(opts.config_file);
  return build_config(resolve_settings(file, flags));
}

void print_summary(const RunSummary& s) {
  std::printf("outcome        %s\n", s.outcome.c_str());
  std::printf("steps          %ld (dt = %.6g)\n", s.steps, s.dt);
  std::printf("energy         %.12g  (/pi^2 = %.12g)\n", s.energy, s.energy_over_pi2);
  std::printf("winding        h = (%ld, %ld)\n", s.winding.h_theta, s.winding.h_phi);
  std::printf("residual max   %.3e\n", s.residual_max);
  std::printf("classification %s value %.9g range %.3e\n", s.classification.c_str(),
              s.classification_value, s.classification_range);
  std::printf("config hash    %s\n", s.config_hash.c_str());
}

int run(const std::string& command, const RunConfig& config) {
  if (command == "run-flow") {
    print_summary(cmd_run_flow(config));
  } else if (command == "sweep-sectors") {
    const SweepResult res = cmd_sweep_sectors(config);
    std::printf("row = h_phi, column = h_theta; entries are energy / pi^2\n");
    int failures = 0;
    for (int hp = 0; hp <= res.h_max; ++hp) {
      for (int ht = 0; ht <= res.h_max; ++ht) {
        const SweepCell& c = res.cell(ht, hp);
        if (c.ok) {
          std::printf(" %10.5f", c.summary.energy_over_pi2);
        } else {
          std::printf(" %10s", "failed");
          ++failures;
        }
      }
      std::printf("\n");
    }
    for (const SweepCell& c : res.cells) {
      if (!c.ok) {
        std::fprintf(stderr, "cell h=(%ld,%ld): %s\n", c.h.h_theta, c.h.h_phi, c.error.c_str());
      }
    }
    if (failures > 0) return static_cast<int>(ExitStatus::NumericalContract);
  } else if (command == "constant-analysis") {
    const ConstantAnalysisResult res = cmd_constant_analysis(config);
    for (std::size_t k = 0; k < res.b_values.size(); ++k) {
      std::printf("b = %.12g\n", res.b_values[k]);
      for (const CriticalAngle& c : res.reports[k].critical_angles) {
        std::printf("  alpha %.12f %-11s %-9s disc %+.6e W/pi^2 %.12g\n", c.angle,
                    to_string(c.family).c_str(), to_string(c.stability).c_str(),
                    c.discriminant, c.energy / (kPi * kPi));
      }
    }
  } else if (command == "threshold") {
    const ThresholdReport rep = cmd_threshold(config, [](const ThresholdProbe& p) {
      std::fprintf(stderr, "probe b = %.9g -> %s (range %.3e, %ld steps)\n", p.b,
                   p.classification.is_constant() ? "ConstantState" : "NonConstant",
                   p.classification.range, p.steps);
    });
    std::printf("threshold interval (%.9g, %.9g)\n", rep.lo, rep.hi);
  } else if (command == "export") {
    std::printf("%s\n", cmd_export(config).c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nematic director fields on an axisymmetric torus"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  const std::map<std::string, std::string> commands{
      {"run-flow", "Relax one initial datum by gradient flow within its winding sector"},
      {"sweep-sectors", "Run one flow per winding index in {0..h-max}^2"},
      {"constant-analysis", "Closed-form energy curves and stability of constant states"},
      {"threshold", "Bisect the aspect ratio where the constant state loses stability"},
      {"export", "Write a director field (initial datum or imported file) for plotting"},
  };
  std::map<std::string, CommonOptions> options;
  for (const auto& [name, help] : commands) add_common(*app.add_subcommand(name, help), options[name]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitStatus::ValidationError);
  }

  for (const auto& [name, help] : commands) {
    if (!app.got_subcommand(name)) continue;
    const CommonOptions& opts = options.at(name);
    try {
      const RunConfig config = resolve(opts);
      if (opts.print_config) {
        std::cout << render_settings(config.resolved) << "# config_hash=" << config.config_hash
                  << "\n";
        return 0;
      }
      return run(name, config);
    } catch (const Error& e) {
      std::cerr << "nematorus " << name << ": " << e.what() << "\n";
      return static_cast<int>(e.status());
    } catch (const std::exception& e) {
      std::cerr << "nematorus " << name << ": internal error: " << e.what() << "\n";
      return 1;
    }
  }
  return 0;
}
