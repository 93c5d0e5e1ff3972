#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "nematorus/sectors.hpp"

namespace nematorus {

/// Deterministic random source for initial data: mt19937_64 with an explicit
/// mapping to doubles, so streams are identical across standard libraries.
class SeededRandom {
 public:
  explicit SeededRandom(std::uint64_t seed) : engine_(seed) {}
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform on [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

 private:
  std::mt19937_64 engine_;
};

enum class InitialKind {
  Constant,     // u = value
  Noise,        // u = value + amplitude * U(-1, 1) independently per node
  SmoothNoise,  // u = value + amplitude * S, S a random low-mode field with max |S| = 1
  Band,         // u = value + amplitude * cos(theta)
  File,         // total alpha read from a director-field file
};

std::string to_string(InitialKind kind);
/// Throws ValidationError on unknown names.
InitialKind initial_kind_from_string(const std::string& name);

struct InitialDatum {
  InitialKind kind = InitialKind::Noise;
  double value = 1.5707963267948966;
  double amplitude = 0.01;
  std::uint64_t seed = 1;
  int modes = 3;
  std::string path;
};

/// Random trigonometric polynomial with wave numbers |k_theta|, |k_phi| <= modes,
/// normalized to max-norm 1 on the grid.
ScalarField smooth_random_field(const PeriodicGrid& grid, std::uint64_t seed, int modes);

/// Builds the periodic part for every kind except File, in the given sector.
SectorField make_initial(const InitialDatum& datum, const TorusShape& shape,
                         const PeriodicGrid& grid, const WindingIndex& index);

}  // namespace nematorus
