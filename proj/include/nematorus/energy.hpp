#pragma once

#include "nematorus/geometry.hpp"
#include "nematorus/sectors.hpp"

namespace nematorus {

/// Frank moduli K1 (splay), K2 (twist) and K3 (bend). Zero moduli are allowed
/// individually; kappa is the modulus used by the one-constant model.
struct ElasticConstants {
  double K1 = 1.0;
  double K2 = 1.0;
  double K3 = 1.0;
  double kappa = 1.0;

  static ElasticConstants one_constant(double kappa) { return {kappa, kappa, kappa, kappa}; }
  /// Throws ValidationError on negative or non-finite moduli or all-zero K.
  void validate() const;
};

enum class EnergyModel { OneConstant, Full };

struct EnergyBreakdown {
  EnergyModel model = EnergyModel::OneConstant;
  double dirichlet = 0.0;
  double potential = 0.0;
  double geometric_const = 0.0;
  double splay = 0.0;
  double twist = 0.0;
  double bend = 0.0;
  double total = 0.0;
  double total_over_pi2 = 0.0;
};

struct BifurcationScalars {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double eta_scalar = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

struct IntegralOracles {
  double I_sin2 = 0.0;  // integral over [0, 2pi] of sin^2 / (b + cos)
  double I_cos2 = 0.0;  // integral of cos^2 / (b + cos)
  double I_inv = 0.0;   // integral of 1 / (b + cos)
};

/// kappa pi^2 ((2 - b^2) / sqrt(b^2 - 1) + 2b).
double geometric_constant(const TorusShape& shape, double kappa);

/// One-constant energy (kappa/2) int (|grad alpha|^2 + eta cos 2 alpha) plus the
/// geometric constant, on the jump-corrected stencil shared with the flow.
EnergyBreakdown energy_one_constant(const SectorField& field, double kappa);

/// Three-constant energy
///   (1/2) int K1 ((grad alpha - A) . t)^2 + K2 tau_n^2 + K3 (((grad alpha - A) . n)^2 + c_n^2).
/// At each node the integrand is averaged over the four one-sided difference
/// quadrants, which makes the K1 = K2 = K3 case coincide with the one-constant sum.
EnergyBreakdown energy_full(const SectorField& field, const ElasticConstants& constants);

/// Negative weighted gradient of energy_full, -(1/w_i dtheta dphi) dE/d alpha_ij:
/// the conservative discretization of the three-constant Euler-Lagrange residual.
ScalarField full_residual_field(const SectorField& field, const ElasticConstants& constants);

/// Closed form of the three-constant energy of a constant deviation angle.
double energy_constant_closed_form(const TorusShape& shape, const ElasticConstants& constants,
                                   double alpha);

/// d/d alpha of energy_constant_closed_form in factorized form
///   2 pi^2 sin(2a) [A (K3 - K1) + B cos(2a) (K2 - K3) - C K3].
double energy_constant_derivative(const TorusShape& shape, const ElasticConstants& constants,
                                  double alpha);

IntegralOracles integral_oracles(double b);

BifurcationScalars bifurcation_scalars(double b);

}  // namespace nematorus
