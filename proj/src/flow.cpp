#include "nematorus/flow.hpp"

#include <algorithm>
#include <cmath>

#include "nematorus/errors.hpp"
#include "nematorus/stencil.hpp"

namespace nematorus {

void FlowParams::validate() const {
  if (dt && !(*dt > 0.0 && std::isfinite(*dt))) {
    throw ValidationError("time step dt must be positive and finite");
  }
  if (!(cfl_safety > 0.0 && cfl_safety < 1.0)) {
    throw ValidationError("cfl_safety must lie strictly between 0 and 1");
  }
  if (!(stop_tol > 0.0)) throw ValidationError("stop_tol must be positive");
  if (!(stop_residual >= 0.0)) throw ValidationError("stop_residual must be non-negative");
  if (max_steps < 0) throw ValidationError("max_steps must be non-negative");
  if (snapshot_every < 1) throw ValidationError("snapshot_every must be at least 1");
}

std::string to_string(FlowOutcome outcome) {
  switch (outcome) {
    case FlowOutcome::Converged:
      return "Converged";
    case FlowOutcome::MaxSteps:
      return "MaxSteps";
    case FlowOutcome::EnergyIncreased:
      return "EnergyIncreased";
  }
  return "Unknown";
}

ScalarField discrete_laplacian(const SectorField& field) {
  const SectorStencil st(field.shape(), field.grid(), field.index());
  return stencil_laplacian(st, field.u());
}

ScalarField flow_rhs(const SectorField& field, double kappa) {
  const SectorStencil st(field.shape(), field.grid(), field.index());
  ScalarField rhs(field.grid());
  one_constant_pass(st, field.u(), kappa, &rhs);
  return rhs;
}

double max_abs_eta(const TorusShape& shape, const PeriodicGrid& grid) {
  double m = 0.0;
  for (int i = 0; i < grid.n_theta(); ++i) {
    m = std::max(m, std::abs(eta_potential(shape, grid.theta(i))));
  }
  return m;
}

double cfl_max_dt(const TorusShape& shape, const PeriodicGrid& grid, double kappa,
                  double max_eta) {
  const double r = shape.r();
  const double inner = shape.R() - r;
  const double dt2 = grid.d_theta() * grid.d_theta();
  const double dp2 = grid.d_phi() * grid.d_phi();
  return 1.0 / (2.0 * kappa * (1.0 / (r * r * dt2) + 1.0 / (inner * inner * dp2)) +
                2.0 * kappa * max_eta);
}

namespace {

WindingIndex snapshot_winding(const SectorStencil& st, const ScalarField& u) {
  ScalarField total(st.grid());
  for (int i = 0; i < st.n_theta(); ++i) {
    for (int j = 0; j < st.n_phi(); ++j) total.at(i, j) = st.total(u, i, j);
  }
  return winding_of(total);
}

}  // namespace

FlowResult run_flow(const SectorField& initial, double kappa, const FlowParams& params) {
  params.validate();
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw ValidationError("one-constant modulus kappa must be positive");
  }
  const TorusShape& shape = initial.shape();
  const PeriodicGrid& grid = initial.grid();
  const SectorStencil st(shape, grid, initial.index());
  const double geo = geometric_constant(shape, kappa);

  const double dt = params.dt ? *params.dt
                              : params.cfl_safety *
                                    cfl_max_dt(shape, grid, kappa, max_abs_eta(shape, grid));

  FlowResult result{initial, {}, FlowOutcome::MaxSteps, 0, dt, 0.0};
  ScalarField& u = result.final_field.u();
  ScalarField rhs(grid);

  auto energy_of = [&](const OneConstantPass& p) { return p.dirichlet + p.potential + geo; };

  OneConstantPass pass = one_constant_pass(st, u, kappa, &rhs);
  double energy = energy_of(pass);
  if (!std::isfinite(energy)) throw NumericalContractError("initial energy is not finite");

  const WindingIndex start_winding = snapshot_winding(st, u);
  if (!(start_winding == initial.index())) {
    throw NumericalContractError("initial field does not lie in its declared sector");
  }
  result.trace.snapshots.push_back({0, 0.0, energy, pass.residual_max, start_winding});
  double snapshot_energy = energy;

  const std::size_t n = u.size();
  for (long step = 1; step <= params.max_steps; ++step) {
    double* uv = u.values().data();
    const double* rv = rhs.values().data();
#pragma omp simd
    for (std::size_t k = 0; k < n; ++k) uv[k] += dt * rv[k];

    pass = one_constant_pass(st, u, kappa, &rhs);
    const double next = energy_of(pass);
    if (!std::isfinite(next) || next > energy + 1e-12 * (1.0 + std::abs(energy))) {
      throw EnergyIncreased(step, energy, next);
    }
    energy = next;
    result.steps = step;

    if (step % params.snapshot_every == 0 || step == params.max_steps) {
      const WindingIndex w = snapshot_winding(st, u);
      if (!(w == start_winding)) {
        throw NumericalContractError("winding index changed during the flow at step " +
                                     std::to_string(step));
      }
      result.trace.snapshots.push_back(
          {step, static_cast<double>(step) * dt, energy, pass.residual_max, w});
      const bool small_change = std::abs(snapshot_energy - energy) < params.stop_tol;
      const bool small_residual =
          params.stop_residual <= 0.0 || pass.residual_max < params.stop_residual;
      snapshot_energy = energy;
      if (step % params.snapshot_every == 0 && small_change && small_residual) {
        result.outcome = FlowOutcome::Converged;
        break;
      }
    }
  }
  result.final_energy = energy;
  return result;
}

Classification classify_final(const SectorField& final_field) {
  const ScalarField total = final_field.total();
  double lo = total[0], hi = total[0], sum_s = 0.0, sum_c = 0.0;
  for (std::size_t k = 0; k < total.size(); ++k) {
    lo = std::min(lo, total[k]);
    hi = std::max(hi, total[k]);
    sum_s += std::sin(total[k]);
    sum_c += std::cos(total[k]);
  }
  Classification c;
  c.range = hi - lo;
  c.value = std::atan2(sum_s, sum_c);
  c.kind = c.range < kConstantRange ? Classification::Kind::ConstantState
                                    : Classification::Kind::NonConstant;
  return c;
}

double ring_circular_mean(const SectorField& field, int i) {
  double sum_s = 0.0, sum_c = 0.0;
  for (int j = 0; j < field.grid().n_phi(); ++j) {
    const double a = field.total_at(i, j);
    sum_s += std::sin(a);
    sum_c += std::cos(a);
  }
  return std::atan2(sum_s, sum_c);
}

}  // namespace nematorus
