#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "nematorus/config.hpp"
#include "nematorus/energy.hpp"
#include "nematorus/sectors.hpp"

namespace nematorus {

struct RunSummary {
  Settings config;
  std::string config_hash;
  std::string version;
  std::uint64_t seed = 0;

  std::string outcome;
  std::string error;
  long steps = 0;
  double dt = 0.0;
  double wall_time_s = 0.0;

  double energy = 0.0;
  double energy_over_pi2 = 0.0;
  EnergyBreakdown one_constant;
  EnergyBreakdown full;

  WindingIndex winding;
  double residual_max = 0.0;
  double residual_l2 = 0.0;
  double full_residual_max = 0.0;
  double full_residual_l2 = 0.0;

  std::string classification;
  double classification_value = 0.0;
  double classification_range = 0.0;
};

nlohmann::json breakdown_to_json(const EnergyBreakdown& e);
EnergyBreakdown breakdown_from_json(const nlohmann::json& j);

/// Timing is excluded from artifacts by default so that repeated runs produce
/// identical bytes.
nlohmann::json summary_to_json(const RunSummary& s, bool include_timing = false);
RunSummary summary_from_json(const nlohmann::json& j);

}  // namespace nematorus
