#pragma once

#include "nematorus/geometry.hpp"
#include "nematorus/grid.hpp"

namespace nematorus {

/// Winding index (h_theta, h_phi) of a director field on the torus.
struct WindingIndex {
  long h_theta = 0;
  long h_phi = 0;

  bool operator==(const WindingIndex&) const = default;
  WindingIndex operator+(const WindingIndex& o) const {
    return {h_theta + o.h_theta, h_phi + o.h_phi};
  }
};

/// Continuous antiderivative F of 1/(b + cos s) with F(0) = 0, valid for all
/// real theta; F(theta + 2pi) = F(theta) + 2pi / sqrt(b^2 - 1).
double lift_antiderivative(const TorusShape& shape, double theta);

/// psi_h(theta, phi) = h_theta sqrt(b^2-1) F(theta) + h_phi phi, on unreduced angles.
double harmonic_lift(const TorusShape& shape, const WindingIndex& index, double theta,
                     double phi);

/// The lift sampled at the grid nodes.
ScalarField lift_field(const TorusShape& shape, const PeriodicGrid& grid,
                       const WindingIndex& index);

struct WindingMeasurement {
  WindingIndex index;
  double raw_theta = 0.0;
  double raw_phi = 0.0;
  /// max(|raw - round(raw)|) over both directions.
  double residual = 0.0;
};

/// Loop-averaged winding of a sampled total deviation. Every edge increment is
/// wrapped into (-pi, pi], so values reduced modulo 2pi are accepted.
WindingMeasurement measure_winding(const ScalarField& total_alpha);

/// As measure_winding, but throws NonIntegerWinding when the residual exceeds 0.1.
WindingIndex winding_of(const ScalarField& total_alpha);

inline constexpr double kWindingTolerance = 0.1;

/// Total deviation alpha = u + psi_h stored as the periodic part and the index.
class SectorField {
 public:
  SectorField(const TorusShape& shape, const WindingIndex& index, ScalarField u);

  const TorusShape& shape() const noexcept { return shape_; }
  const WindingIndex& index() const noexcept { return index_; }
  const PeriodicGrid& grid() const noexcept { return u_.grid(); }
  const ScalarField& u() const noexcept { return u_; }
  ScalarField& u() noexcept { return u_; }

  double total_at(int i, int j) const;
  ScalarField total() const;

 private:
  TorusShape shape_;
  WindingIndex index_;
  ScalarField u_;
};

/// Splits sampled total deviations into (u, h). The periodic part is unwrapped
/// so that inputs shifted node-wise by multiples of 2pi are handled.
SectorField decompose(const ScalarField& total_alpha, const TorusShape& shape);

}  // namespace nematorus
