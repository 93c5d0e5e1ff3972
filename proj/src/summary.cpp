#include "nematorus/summary.hpp"

namespace nematorus {

using nlohmann::json;

json breakdown_to_json(const EnergyBreakdown& e) {
  json j;
  j["model"] = e.model == EnergyModel::OneConstant ? "OneConstant" : "Full";
  j["dirichlet"] = e.dirichlet;
  j["potential"] = e.potential;
  j["geometric_const"] = e.geometric_const;
  j["splay"] = e.splay;
  j["twist"] = e.twist;
  j["bend"] = e.bend;
  j["total"] = e.total;
  j["total_over_pi2"] = e.total_over_pi2;
  return j;
}

EnergyBreakdown breakdown_from_json(const json& j) {
  EnergyBreakdown e;
  e.model = j.at("model").get<std::string>() == "Full" ? EnergyModel::Full
                                                         : EnergyModel::OneConstant;
  e.dirichlet = j.at("dirichlet").get<double>();
  e.potential = j.at("potential").get<double>();
  e.geometric_const = j.at("geometric_const").get<double>();
  e.splay = j.at("splay").get<double>();
  e.twist = j.at("twist").get<double>();
  e.bend = j.at("bend").get<double>();
  e.total = j.at("total").get<double>();
  e.total_over_pi2 = j.at("total_over_pi2").get<double>();
  return e;
}

json summary_to_json(const RunSummary& s, bool include_timing) {
  json j;
  j["config"] = s.config;
  j["config_hash"] = s.config_hash;
  j["version"] = s.version;
  j["seed"] = s.seed;
  j["outcome"] = s.outcome;
  if (!s.error.empty()) j["error"] = s.error;
  j["steps"] = s.steps;
  j["dt"] = s.dt;
  if (include_timing) j["wall_time_s"] = s.wall_time_s;
  j["energy"] = s.energy;
  j["energy_over_pi2"] = s.energy_over_pi2;
  j["one_constant"] = breakdown_to_json(s.one_constant);
  j["full"] = breakdown_to_json(s.full);
  j["winding"] = {{"h_theta", s.winding.h_theta}, {"h_phi", s.winding.h_phi}};
  j["residual"] = {{"max", s.residual_max},
                   {"l2", s.residual_l2},
                   {"full_max", s.full_residual_max},
                   {"full_l2", s.full_residual_l2}};
  j["classification"] = {{"kind", s.classification},
                         {"value", s.classification_value},
                         {"range", s.classification_range}};
  return j;
}

RunSummary summary_from_json(const json& j) {
  RunSummary s;
  s.config = j.at("config").get<Settings>();
  s.config_hash = j.at("config_hash").get<std::string>();
  s.version = j.at("version").get<std::string>();
  s.seed = j.at("seed").get<std::uint64_t>();
  s.outcome = j.at("outcome").get<std::string>();
  if (j.contains("error")) s.error = j.at("error").get<std::string>();
  s.steps = j.at("steps").get<long>();
  s.dt = j.at("dt").get<double>();
  if (j.contains("wall_time_s")) s.wall_time_s = j.at("wall_time_s").get<double>();
  s.energy = j.at("energy").get<double>();
  s.energy_over_pi2 = j.at("energy_over_pi2").get<double>();
  s.one_constant = breakdown_from_json(j.at("one_constant"));
  s.full = breakdown_from_json(j.at("full"));
  s.winding = {j.at("winding").at("h_theta").get<long>(),
               j.at("winding").at("h_phi").get<long>()};
  const json& r = j.at("residual");
  s.residual_max = r.at("max").get<double>();
  s.residual_l2 = r.at("l2").get<double>();
  s.full_residual_max = r.at("full_max").get<double>();
  s.full_residual_l2 = r.at("full_l2").get<double>();
  const json& c = j.at("classification");
  s.classification = c.at("kind").get<std::string>();
  s.classification_value = c.at("value").get<double>();
  s.classification_range = c.at("range").get<double>();
  return s;
}

}  // namespace nematorus
