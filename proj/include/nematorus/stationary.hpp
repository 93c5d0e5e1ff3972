#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nematorus/energy.hpp"
#include "nematorus/flow.hpp"

namespace nematorus {

struct ResidualReport {
  EnergyModel model = EnergyModel::OneConstant;
  double max_norm = 0.0;
  /// sqrt of the area-weighted integral of the squared residual.
  double l2_norm = 0.0;
  /// Area-weighted mean of the residual; equals minus the derivative of the
  /// energy along a uniform shift of alpha divided by the area.
  double mean = 0.0;
};

enum class ResidualStencil {
  /// The flux-form stencil the flow uses (second order).
  Native,
  /// Fourth-order central differences on u with the lift taken as exactly
  /// harmonic; used to measure truncation error of discrete stationary states.
  FourthOrder,
};

/// Laplacian(alpha) + eta sin(2 alpha).
ResidualReport el_residual_one_constant(const SectorField& field,
                                        ResidualStencil stencil = ResidualStencil::Native);

ScalarField el_residual_one_constant_field(const SectorField& field,
                                           ResidualStencil stencil = ResidualStencil::Native);

/// Three-constant residual, equal to kappa times the one-constant residual when
/// K1 = K2 = K3 = kappa.
ResidualReport el_residual_full(const SectorField& field, const ElasticConstants& constants);

/// kappa * discrete integral of (|grad w|^2 - (c1^2 - c2^2) cos(2 alpha) w^2):
/// exactly the second derivative of the discrete one-constant energy along w.
double second_variation(const SectorField& field, const ScalarField& direction, double kappa);

enum class CriticalFamily { Meridian, Parallel, SecondType };
enum class StabilityFlag { Stable, Unstable, Marginal };

std::string to_string(CriticalFamily family);
std::string to_string(StabilityFlag flag);

inline constexpr double kStabilityDeadBand = 1e-12;

struct CriticalAngle {
  double angle = 0.0;
  CriticalFamily family = CriticalFamily::Meridian;
  /// |W'(angle)| is at roundoff level.
  bool is_critical = false;
  StabilityFlag stability = StabilityFlag::Marginal;
  bool is_stable_local_min = false;
  double discriminant = 0.0;
  double energy = 0.0;
};

struct StabilityReport {
  std::vector<CriticalAngle> critical_angles;
  BifurcationScalars bifurcation;
  double meridian_discriminant = 0.0;
  double parallel_discriminant = 0.0;
  /// (C K3 - A (K3 - K1)) / (B (K2 - K3)); NaN when K2 = K3.
  double second_type_argument = 0.0;
  bool has_second_type = false;
};

/// Critical points of the constant-angle energy on [0, pi) with their stability.
StabilityReport constant_state_analysis(const TorusShape& shape,
                                        const ElasticConstants& constants);

struct ThresholdRequest {
  double b_lo = 1.3;
  double b_hi = 1.8;
  double tolerance = 0.02;
  double r = 1.0;
  double kappa = 1.0;
  int n_theta = 128;
  int n_phi = 128;
  FlowParams flow;
  std::uint64_t seed = 1;
  double noise_amplitude = 0.05;
  int noise_modes = 3;
};

struct ThresholdProbe {
  double b = 0.0;
  Classification classification;
  FlowOutcome outcome = FlowOutcome::MaxSteps;
  long steps = 0;
  double energy = 0.0;
};

struct ThresholdReport {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<ThresholdProbe> probes;
};

/// Relaxes the perturbed parallel state pi/2 + small seeded smooth noise in
/// sector (0, 0) at a given aspect ratio and classifies the result.
ThresholdProbe threshold_probe(const ThresholdRequest& request, double b);

/// Bisection on b for the loss of stability of the parallel state. Throws
/// BracketInvalid unless b_lo relaxes to a non-constant state and b_hi to a
/// constant one.
ThresholdReport threshold_search(const ThresholdRequest& request,
                                 const std::function<void(const ThresholdProbe&)>& on_probe = {});

}  // namespace nematorus
