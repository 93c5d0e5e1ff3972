#include "nematorus/errors.hpp"

#include <cstdio>

namespace nematorus {

namespace {

std::string format_winding(double raw_theta, double raw_phi) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "non-integer winding: raw indices (%.6g, %.6g) are farther than 0.1 from integers",
                raw_theta, raw_phi);
  return buf;
}

std::string format_increase(long step, double before, double after) {
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "energy increased at step %ld: %.17g -> %.17g (time step too large?)", step,
                before, after);
  return buf;
}

}  // namespace

NonIntegerWinding::NonIntegerWinding(double raw_theta, double raw_phi)
    : NumericalContractError(format_winding(raw_theta, raw_phi)),
      raw_theta_(raw_theta),
      raw_phi_(raw_phi) {}

EnergyIncreased::EnergyIncreased(long step, double before, double after)
    : NumericalContractError(format_increase(step, before, after)),
      step_(step),
      before_(before),
      after_(after) {}

}  // namespace nematorus
