#include "nematorus/commands.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <thread>

#include "nematorus/errors.hpp"

namespace nematorus {

using nlohmann::json;

namespace {

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string kind_name(const Classification& c) {
  return c.is_constant() ? "ConstantState" : "NonConstant";
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

ArtifactMeta artifact_meta(const RunConfig& config) {
  return {config.config_hash, kToolVersion, config.initial.seed};
}

void ensure_output_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  }
}

SectorField initial_field(const RunConfig& config) {
  if (config.initial.kind == InitialKind::File) {
    ImportedField in = import_director_field(config.initial.path);
    const TorusShape& s = in.field.shape();
    if (s.R() != config.R || s.r() != config.r || !(in.field.grid() == config.grid())) {
      throw ValidationError("init-file '" + config.initial.path +
                            "' was sampled on a different torus or grid than the config");
    }
    return std::move(in.field);
  }
  return make_initial(config.initial, config.shape(), config.grid(), config.h);
}

RunSummary summarize_flow(const RunConfig& config, const FlowResult& result,
                          double wall_time_s) {
  RunSummary s;
  s.config = config.resolved;
  s.config_hash = config.config_hash;
  s.version = kToolVersion;
  s.seed = config.initial.seed;
  s.outcome = to_string(result.outcome);
  s.steps = result.steps;
  s.dt = result.dt;
  s.wall_time_s = wall_time_s;

  const SectorField& f = result.final_field;
  s.one_constant = energy_one_constant(f, config.constants.kappa);
  s.full = energy_full(f, config.constants);
  s.energy = s.one_constant.total;
  s.energy_over_pi2 = s.one_constant.total_over_pi2;
  s.winding = winding_of(f.total());

  const ResidualReport r1 = el_residual_one_constant(f);
  s.residual_max = r1.max_norm;
  s.residual_l2 = r1.l2_norm;
  const ResidualReport rf = el_residual_full(f, config.constants);
  s.full_residual_max = rf.max_norm;
  s.full_residual_l2 = rf.l2_norm;

  const Classification c = classify_final(f);
  s.classification = kind_name(c);
  s.classification_value = c.value;
  s.classification_range = c.range;
  return s;
}

namespace {

void write_trace(const RunConfig& config, const FlowTrace& trace, const std::string& path) {
  CsvWriter csv(path, artifact_meta(config), {},
                {"step", "time", "energy", "energy_over_pi2", "residual_max", "h_theta", "h_phi"});
  const double pi2 = kPi * kPi;
  for (const FlowSnapshot& s : trace.snapshots) {
    csv.row(std::vector<std::string>{std::to_string(s.step), format_double(s.time),
                                     format_double(s.energy), format_double(s.energy / pi2),
                                     format_double(s.residual_max),
                                     std::to_string(s.winding.h_theta),
                                     std::to_string(s.winding.h_phi)});
  }
  csv.close();
}

}  // namespace

RunSummary cmd_run_flow(const RunConfig& config) {
  const SectorField start = initial_field(config);
  ensure_output_dir(config.output_dir);
  const ArtifactMeta meta = artifact_meta(config);
  if (config.emit_fields) {
    export_director_field(start, join(config.output_dir, "initial_field.csv"), meta);
  }

  const auto t0 = std::chrono::steady_clock::now();
  FlowResult result = [&] {
    try {
      return run_flow(start, config.constants.kappa, config.flow);
    } catch (const EnergyIncreased& e) {
      RunSummary s;
      s.config = config.resolved;
      s.config_hash = config.config_hash;
      s.version = kToolVersion;
      s.seed = config.initial.seed;
      s.outcome = to_string(FlowOutcome::EnergyIncreased);
      s.error = e.what();
      s.steps = e.step();
      s.winding = start.index();
      write_text_file(join(config.output_dir, "summary.json"), dump(summary_to_json(s)));
      throw;
    }
  }();
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const RunSummary summary = summarize_flow(config, result, wall);
  if (config.emit_trace) write_trace(config, result.trace, join(config.output_dir, "trace.csv"));
  if (config.emit_fields) {
    export_director_field(result.final_field, join(config.output_dir, "final_field.csv"), meta);
  }
  write_text_file(join(config.output_dir, "summary.json"), dump(summary_to_json(summary)));
  return summary;
}

const SweepCell& SweepResult::cell(long h_theta, long h_phi) const {
  return cells.at(static_cast<std::size_t>(h_phi) * (h_max + 1) +
                  static_cast<std::size_t>(h_theta));
}

SweepResult cmd_sweep_sectors(const RunConfig& config) {
  if (config.initial.kind == InitialKind::File) {
    throw ValidationError("sector sweeps build their own initial data; init = file is not allowed");
  }
  const TorusShape shape = config.shape();
  const PeriodicGrid grid = config.grid();

  SweepResult out;
  out.h_max = config.h_max;
  for (long hp = 0; hp <= config.h_max; ++hp) {
    for (long ht = 0; ht <= config.h_max; ++ht) out.cells.push_back({{ht, hp}, false, "", {}});
  }
  ensure_output_dir(config.output_dir);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < out.cells.size(); k = next++) {
      SweepCell& cell = out.cells[k];
      try {
        const SectorField start = make_initial(config.initial, shape, grid, cell.h);
        const auto t0 = std::chrono::steady_clock::now();
        const FlowResult res = run_flow(start, config.constants.kappa, config.flow);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        cell.summary = summarize_flow(config, res, wall);
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
        cell.summary.outcome = dynamic_cast<const EnergyIncreased*>(&e)
                                   ? to_string(FlowOutcome::EnergyIncreased)
                                   : "Failed";
      }
    }
  };
  const int n_workers =
      std::max(1, std::min<int>(config.jobs, static_cast<int>(out.cells.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  const ArtifactMeta meta = artifact_meta(config);
  const double pi2 = kPi * kPi;
  {
    CsvWriter csv(join(config.output_dir, "sector_energies.csv"), meta, {},
                  {"h_theta", "h_phi", "outcome", "steps", "energy", "energy_over_pi2",
                   "residual_max", "error"});
    for (const SweepCell& c : out.cells) {
      const double e = c.ok ? c.summary.energy : std::nan("");
      csv.row(std::vector<std::string>{
          std::to_string(c.h.h_theta), std::to_string(c.h.h_phi), c.summary.outcome,
          std::to_string(c.summary.steps), format_double(e), format_double(e / pi2),
          format_double(c.ok ? c.summary.residual_max : std::nan("")),
          c.ok ? "" : "\"" + c.error + "\""});
    }
    csv.close();
  }
  for (const bool scaled : {false, true}) {
    std::vector<std::string> header{"h_phi\\h_theta"};
    for (int ht = 0; ht <= config.h_max; ++ht) header.push_back(std::to_string(ht));
    CsvWriter csv(join(config.output_dir,
                       scaled ? "sector_table_over_pi2.csv" : "sector_table.csv"),
                  meta,
                  {"row i = h_phi, column j = h_theta: entry (i, j) is the index h = (j, i)",
                   scaled ? "energies divided by pi^2" : "raw energies"},
                  header);
    for (int hp = 0; hp <= config.h_max; ++hp) {
      std::vector<std::string> row{std::to_string(hp)};
      for (int ht = 0; ht <= config.h_max; ++ht) {
        const SweepCell& c = out.cell(ht, hp);
        const double e = c.ok ? c.summary.energy : std::nan("");
        row.push_back(format_double(scaled ? e / pi2 : e));
      }
      csv.row(row);
    }
    csv.close();
  }
  json cells = json::array();
  for (const SweepCell& c : out.cells) {
    json j = c.ok ? summary_to_json(c.summary) : json::object();
    j["h_theta"] = c.h.h_theta;
    j["h_phi"] = c.h.h_phi;
    j["ok"] = c.ok;
    if (!c.ok) {
      j["outcome"] = c.summary.outcome;
      j["error"] = c.error;
    }
    cells.push_back(j);
  }
  json top;
  top["config_hash"] = config.config_hash;
  top["version"] = kToolVersion;
  top["seed"] = config.initial.seed;
  top["config"] = config.resolved;
  top["cells"] = cells;
  write_text_file(join(config.output_dir, "sweep_summary.json"), dump(top));
  return out;
}

namespace {

json report_to_json(double b, const StabilityReport& rep) {
  json j;
  j["b"] = b;
  j["A"] = rep.bifurcation.A;
  j["B"] = rep.bifurcation.B;
  j["C"] = rep.bifurcation.C;
  j["eta_scalar"] = rep.bifurcation.eta_scalar;
  j["lambda1"] = rep.bifurcation.lambda1;
  j["lambda2"] = rep.bifurcation.lambda2;
  j["meridian_discriminant"] = rep.meridian_discriminant;
  j["parallel_discriminant"] = rep.parallel_discriminant;
  j["second_type_argument"] =
      std::isnan(rep.second_type_argument) ? json(nullptr) : json(rep.second_type_argument);
  json angles = json::array();
  for (const CriticalAngle& c : rep.critical_angles) {
    angles.push_back({{"angle", c.angle},
                      {"family", to_string(c.family)},
                      {"is_critical", c.is_critical},
                      {"stability", to_string(c.stability)},
                      {"is_stable_local_min", c.is_stable_local_min},
                      {"discriminant", c.discriminant},
                      {"energy", c.energy},
                      {"energy_over_pi2", c.energy / (kPi * kPi)}});
  }
  j["critical_angles"] = angles;
  return j;
}

}  // namespace

ConstantAnalysisResult cmd_constant_analysis(const RunConfig& config) {
  ConstantAnalysisResult out;
  out.b_values = config.b_values.empty() ? std::vector<double>{config.R / config.r}
                                         : config.b_values;
  std::vector<TorusShape> shapes;
  for (double b : out.b_values) shapes.push_back(TorusShape::from_aspect(b, config.r));
  ensure_output_dir(config.output_dir);
  const ArtifactMeta meta = artifact_meta(config);
  const double pi2 = kPi * kPi;

  {
    std::vector<std::string> header{"alpha"};
    for (double b : out.b_values) {
      header.push_back("W_b=" + format_double(b));
      header.push_back("W_over_pi2_b=" + format_double(b));
    }
    CsvWriter csv(join(config.output_dir, "constant_energy.csv"), meta,
                  {"K1=" + format_double(config.constants.K1) +
                   " K2=" + format_double(config.constants.K2) +
                   " K3=" + format_double(config.constants.K3)},
                  header);
    for (int k = 0; k < config.alpha_samples; ++k) {
      const double alpha = kPi * k / (config.alpha_samples - 1);
      std::vector<double> row{alpha};
      for (const TorusShape& s : shapes) {
        const double w = energy_constant_closed_form(s, config.constants, alpha);
        row.push_back(w);
        row.push_back(w / pi2);
      }
      csv.row(row);
    }
    csv.close();
  }

  {
    const TorusShape shape = config.shape();
    const double K2 = config.constants.K2 > 0.0 ? config.constants.K2 : 1.0;
    CsvWriter csv(join(config.output_dir, "bifurcation_lambda.csv"), meta,
                  {"b=" + format_double(shape.b()) + " K1=K3=lambda*K2 K2=" + format_double(K2)},
                  {"lambda", "meridian_discriminant", "meridian_stability",
                   "parallel_discriminant", "parallel_stability", "second_type_argument",
                   "second_type_angle", "second_type_stability", "global_min_angle",
                   "global_min_energy_over_pi2"});
    for (int k = 0; k < config.lambda_steps; ++k) {
      const double lambda = config.lambda_min +
                            (config.lambda_max - config.lambda_min) * k / (config.lambda_steps - 1);
      const ElasticConstants K{lambda * K2, K2, lambda * K2, config.constants.kappa};
      const StabilityReport rep = constant_state_analysis(shape, K);
      std::string st_angle = "nan", st_flag = "none";
      const CriticalAngle* best = &rep.critical_angles.front();
      for (const CriticalAngle& c : rep.critical_angles) {
        if (c.family == CriticalFamily::SecondType && c.angle <= 0.5 * kPi) {
          st_angle = format_double(c.angle);
          st_flag = to_string(c.stability);
        }
        if (c.energy < best->energy) best = &c;
      }
      csv.row(std::vector<std::string>{
          format_double(lambda), format_double(rep.meridian_discriminant),
          to_string(rep.critical_angles[0].stability), format_double(rep.parallel_discriminant),
          to_string(rep.critical_angles[1].stability), format_double(rep.second_type_argument),
          st_angle, st_flag, format_double(best->angle), format_double(best->energy / pi2)});
    }
    csv.close();
  }

  json per_b = json::array();
  for (std::size_t k = 0; k < shapes.size(); ++k) {
    out.reports.push_back(constant_state_analysis(shapes[k], config.constants));
    per_b.push_back(report_to_json(out.b_values[k], out.reports.back()));
  }
  json top;
  top["config_hash"] = config.config_hash;
  top["version"] = kToolVersion;
  top["seed"] = config.initial.seed;
  top["config"] = config.resolved;
  top["constants"] = {{"K1", config.constants.K1},
                      {"K2", config.constants.K2},
                      {"K3", config.constants.K3}};
  top["reports"] = per_b;
  write_text_file(join(config.output_dir, "stability.json"), dump(top));
  return out;
}

ThresholdReport cmd_threshold(const RunConfig& config,
                              const std::function<void(const ThresholdProbe&)>& on_probe) {
  ThresholdRequest rq;
  rq.b_lo = config.b_lo;
  rq.b_hi = config.b_hi;
  rq.tolerance = config.b_tol;
  rq.r = config.r;
  rq.kappa = config.constants.kappa;
  rq.n_theta = config.n_theta;
  rq.n_phi = config.n_phi;
  rq.flow = config.flow;
  rq.seed = config.initial.seed;
  rq.noise_amplitude = config.initial.amplitude;
  rq.noise_modes = config.initial.modes;

  const ThresholdReport rep = threshold_search(rq, on_probe);

  ensure_output_dir(config.output_dir);
  const ArtifactMeta meta = artifact_meta(config);
  const double pi2 = kPi * kPi;
  CsvWriter csv(join(config.output_dir, "threshold.csv"), meta,
                {"interval lo=" + format_double(rep.lo) + " hi=" + format_double(rep.hi)},
                {"probe", "b", "classification", "value", "range", "outcome", "steps", "energy",
                 "energy_over_pi2"});
  json probes = json::array();
  for (std::size_t k = 0; k < rep.probes.size(); ++k) {
    const ThresholdProbe& p = rep.probes[k];
    csv.row(std::vector<std::string>{
        std::to_string(k), format_double(p.b), kind_name(p.classification),
        format_double(p.classification.value), format_double(p.classification.range),
        to_string(p.outcome), std::to_string(p.steps), format_double(p.energy),
        format_double(p.energy / pi2)});
    probes.push_back({{"b", p.b},
                      {"classification", kind_name(p.classification)},
                      {"value", p.classification.value},
                      {"range", p.classification.range},
                      {"outcome", to_string(p.outcome)},
                      {"steps", p.steps},
                      {"energy", p.energy},
                      {"energy_over_pi2", p.energy / pi2}});
  }
  csv.close();
  json top;
  top["config_hash"] = config.config_hash;
  top["version"] = kToolVersion;
  top["seed"] = config.initial.seed;
  top["config"] = config.resolved;
  top["interval"] = {{"lo", rep.lo}, {"hi", rep.hi}};
  top["probes"] = probes;
  write_text_file(join(config.output_dir, "threshold.json"), dump(top));
  return rep;
}

std::string cmd_export(const RunConfig& config) {
  const SectorField field =
      config.input.empty() ? initial_field(config) : import_director_field(config.input).field;
  ensure_output_dir(config.output_dir);
  const std::string path = join(config.output_dir, "director_field.csv");
  export_director_field(field, path, artifact_meta(config));
  return path;
}

}  // namespace nematorus
