#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nematorus/energy.hpp"
#include "nematorus/sectors.hpp"

namespace nematorus {

struct FlowParams {
  /// Explicit time step; when empty the solver uses cfl_safety * cfl_max_dt.
  std::optional<double> dt;
  double cfl_safety = 0.9;
  /// Converged when the energy changes by less than this over one snapshot interval.
  double stop_tol = 1e-4;
  /// Optional extra requirement on the max-norm EL residual at convergence (0 disables).
  double stop_residual = 0.0;
  long max_steps = 100000;
  long snapshot_every = 10;

  void validate() const;
};

struct FlowSnapshot {
  long step = 0;
  double time = 0.0;
  double energy = 0.0;
  double residual_max = 0.0;
  WindingIndex winding;
};

struct FlowTrace {
  std::vector<FlowSnapshot> snapshots;
};

enum class FlowOutcome { Converged, MaxSteps, EnergyIncreased };

std::string to_string(FlowOutcome outcome);

struct FlowResult {
  SectorField final_field;
  FlowTrace trace;
  FlowOutcome outcome = FlowOutcome::MaxSteps;
  long steps = 0;
  double dt = 0.0;
  double final_energy = 0.0;
};

/// Jump-corrected discrete Laplace-Beltrami operator applied to alpha = u + psi_h.
ScalarField discrete_laplacian(const SectorField& field);

/// kappa (Laplacian(alpha) + eta sin 2 alpha): the negative L2 gradient of the
/// discrete one-constant energy.
ScalarField flow_rhs(const SectorField& field, double kappa);

/// max over grid latitudes of |eta|.
double max_abs_eta(const TorusShape& shape, const PeriodicGrid& grid);

/// Von Neumann bound
///   1 / (2 kappa (1/(r^2 dtheta^2) + 1/((R-r)^2 dphi^2)) + 2 kappa max|eta|).
double cfl_max_dt(const TorusShape& shape, const PeriodicGrid& grid, double kappa,
                  double max_eta);

/// Forward-Euler gradient flow within the sector of the initial field. Throws
/// EnergyIncreased if any step raises the energy by more than 1e-12 (1 + |E|).
FlowResult run_flow(const SectorField& initial, double kappa, const FlowParams& params);

struct Classification {
  enum class Kind { ConstantState, NonConstant };
  Kind kind = Kind::NonConstant;
  /// Circular mean of alpha (meaningful for ConstantState).
  double value = 0.0;
  /// max(alpha) - min(alpha).
  double range = 0.0;

  bool is_constant() const noexcept { return kind == Kind::ConstantState; }
};

inline constexpr double kConstantRange = 1e-2;

Classification classify_final(const SectorField& final_field);

/// Circular mean of alpha over the grid ring theta = theta_i.
double ring_circular_mean(const SectorField& field, int i);

}  // namespace nematorus
