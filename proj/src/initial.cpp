#include "nematorus/initial.hpp"

#include <cmath>

#include "nematorus/errors.hpp"

namespace nematorus {

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::Constant:
      return "constant";
    case InitialKind::Noise:
      return "noise";
    case InitialKind::SmoothNoise:
      return "smooth";
    case InitialKind::Band:
      return "band";
    case InitialKind::File:
      return "file";
  }
  return "unknown";
}

InitialKind initial_kind_from_string(const std::string& name) {
  if (name == "constant") return InitialKind::Constant;
  if (name == "noise") return InitialKind::Noise;
  if (name == "smooth") return InitialKind::SmoothNoise;
  if (name == "band") return InitialKind::Band;
  if (name == "file") return InitialKind::File;
  throw ValidationError("unknown initial datum kind '" + name +
                        "' (expected constant, noise, smooth, band or file)");
}

ScalarField smooth_random_field(const PeriodicGrid& grid, std::uint64_t seed, int modes) {
  if (modes < 1) throw ValidationError("smooth initial data need at least one mode");
  SeededRandom rng(seed);
  ScalarField s(grid);
  for (int kt = 0; kt <= modes; ++kt) {
    for (int kp = -modes; kp <= modes; ++kp) {
      if (kt == 0 && kp <= 0) continue;
      const double a = rng.symmetric(), c = rng.symmetric();
      const double scale = 1.0 / (1.0 + kt * kt + kp * kp);
      for (int i = 0; i < grid.n_theta(); ++i) {
        for (int j = 0; j < grid.n_phi(); ++j) {
          const double arg = kt * grid.theta(i) + kp * grid.phi(j);
          s.at(i, j) += scale * (a * std::cos(arg) + c * std::sin(arg));
        }
      }
    }
  }
  const double m = s.max_abs();
  if (m > 0.0) {
    for (std::size_t k = 0; k < s.size(); ++k) s[k] /= m;
  }
  return s;
}

SectorField make_initial(const InitialDatum& datum, const TorusShape& shape,
                         const PeriodicGrid& grid, const WindingIndex& index) {
  if (!std::isfinite(datum.value) || !std::isfinite(datum.amplitude)) {
    throw ValidationError("initial value and amplitude must be finite");
  }
  ScalarField u(grid, datum.value);
  switch (datum.kind) {
    case InitialKind::Constant:
      break;
    case InitialKind::Noise: {
      SeededRandom rng(datum.seed);
      for (std::size_t k = 0; k < u.size(); ++k) u[k] += datum.amplitude * rng.symmetric();
      break;
    }
    case InitialKind::SmoothNoise: {
      const ScalarField s = smooth_random_field(grid, datum.seed, datum.modes);
      for (std::size_t k = 0; k < u.size(); ++k) u[k] += datum.amplitude * s[k];
      break;
    }
    case InitialKind::Band:
      for (int i = 0; i < grid.n_theta(); ++i) {
        const double v = datum.value + datum.amplitude * std::cos(grid.theta(i));
        for (int j = 0; j < grid.n_phi(); ++j) u.at(i, j) = v;
      }
      break;
    case InitialKind::File:
      throw ValidationError("file initial data must be loaded through the field reader");
  }
  return SectorField(shape, index, std::move(u));
}

}  // namespace nematorus
