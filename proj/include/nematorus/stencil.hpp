#pragma once

#include <vector>

#include "nematorus/geometry.hpp"
#include "nematorus/grid.hpp"
#include "nematorus/sectors.hpp"

namespace nematorus {

/// Row coefficients of the jump-corrected finite-difference operators for one
/// (shape, grid, sector) triple. Built from the closed forms on construction and
/// owned by a single evaluation or run.
///
/// The discrete Dirichlet energy is the edge sum
///   sum_ij [ w_{i+1/2} (D+_theta alpha)^2 / r^2 + w_i (D+_phi alpha)^2 / rho_i^2 ]
/// with node weights w_i = r rho_i and face weights w_{i+1/2} = (w_i + w_{i+1}) / 2.
/// The Laplacian below is exactly its weighted gradient.
class SectorStencil {
 public:
  SectorStencil(const TorusShape& shape, const PeriodicGrid& grid, const WindingIndex& index);

  const TorusShape& shape() const noexcept { return shape_; }
  const PeriodicGrid& grid() const noexcept { return grid_; }
  const WindingIndex& index() const noexcept { return index_; }

  int n_theta() const noexcept { return grid_.n_theta(); }
  int n_phi() const noexcept { return grid_.n_phi(); }

  std::vector<double> rho;
  std::vector<double> weight;       // w_i = r rho_i
  std::vector<double> face_weight;  // w_{i+1/2}
  std::vector<double> c_plus;       // w_{i+1/2} / (w_i r^2 dtheta^2)
  std::vector<double> c_minus;      // w_{i-1/2} / (w_i r^2 dtheta^2)
  std::vector<double> c_phi;        // 1 / (rho_i^2 dphi^2)
  std::vector<double> eta;
  std::vector<double> c2;
  std::vector<double> spin;         // A^phi = sin(theta) / rho
  std::vector<double> psi_theta;    // h_theta sqrt(b^2-1) F(theta_i)
  std::vector<double> dpsi_theta;   // forward theta increment of the lift, seam included
  std::vector<double> lap_psi;      // discrete Laplacian of the lift
  std::vector<double> psi_phi;      // h_phi phi_j
  double dpsi_phi = 0.0;            // h_phi dphi
  double c1 = 0.0;

  int ip(int i) const noexcept { return i + 1 == grid_.n_theta() ? 0 : i + 1; }
  int im(int i) const noexcept { return i == 0 ? grid_.n_theta() - 1 : i - 1; }
  int jp(int j) const noexcept { return j + 1 == grid_.n_phi() ? 0 : j + 1; }
  int jm(int j) const noexcept { return j == 0 ? grid_.n_phi() - 1 : j - 1; }

  /// Forward increments of the total deviation (not divided by the spacing).
  double inc_theta(const ScalarField& u, int i, int j) const noexcept {
    return u.at(ip(i), j) - u.at(i, j) + dpsi_theta[i];
  }
  double inc_phi(const ScalarField& u, int i, int j) const noexcept {
    return u.at(i, jp(j)) - u.at(i, j) + dpsi_phi;
  }
  double total(const ScalarField& u, int i, int j) const noexcept {
    return u.at(i, j) + psi_theta[i] + psi_phi[j];
  }

 private:
  TorusShape shape_;
  PeriodicGrid grid_;
  WindingIndex index_;
};

/// Result of one pass of the fused one-constant kernel.
struct OneConstantPass {
  double dirichlet = 0.0;  // (kappa/2) * discrete integral of |grad alpha|^2
  double potential = 0.0;  // (kappa/2) * discrete integral of eta cos(2 alpha)
  double residual_max = 0.0;
  double residual_l2 = 0.0;
};

/// Evaluates the discrete one-constant energy terms and, if rhs is non-null,
/// writes kappa * (L alpha + eta sin 2 alpha) into it. The residual norms are of
/// L alpha + eta sin 2 alpha (kappa-free).
OneConstantPass one_constant_pass(const SectorStencil& st, const ScalarField& u, double kappa,
                                  ScalarField* rhs);

/// Discrete Laplacian of the total deviation alpha = u + psi_h.
ScalarField stencil_laplacian(const SectorStencil& st, const ScalarField& u);

}  // namespace nematorus
