#include "nematorus/sectors.hpp"

#include <algorithm>
#include <cmath>

#include "nematorus/errors.hpp"

namespace nematorus {

namespace {

double wrap_increment(double d) { return d - kTwoPi * std::round(d / kTwoPi); }

}  // namespace

double lift_antiderivative(const TorusShape& shape, double theta) {
  const double b = shape.b();
  const double s = shape.root();
  // Shift theta into [-pi, pi]; atan2 keeps the half-angle formula continuous
  // through the points where tan(theta/2) blows up.
  const double k = std::round(theta / kTwoPi);
  const double t = theta - kTwoPi * k;
  const double half = 0.5 * t;
  return (2.0 / s) * std::atan2((b - 1.0) * std::sin(half), s * std::cos(half)) +
         kTwoPi * k / s;
}

double harmonic_lift(const TorusShape& shape, const WindingIndex& index, double theta,
                     double phi) {
  double value = 0.0;
  if (index.h_theta != 0) {
    value += static_cast<double>(index.h_theta) * shape.root() *
             lift_antiderivative(shape, theta);
  }
  if (index.h_phi != 0) value += static_cast<double>(index.h_phi) * phi;
  return value;
}

ScalarField lift_field(const TorusShape& shape, const PeriodicGrid& grid,
                       const WindingIndex& index) {
  ScalarField psi(grid);
  for (int i = 0; i < grid.n_theta(); ++i) {
    for (int j = 0; j < grid.n_phi(); ++j) {
      psi.at(i, j) = harmonic_lift(shape, index, grid.theta(i), grid.phi(j));
    }
  }
  return psi;
}

WindingMeasurement measure_winding(const ScalarField& total_alpha) {
  const PeriodicGrid& g = total_alpha.grid();
  const int nt = g.n_theta(), np = g.n_phi();

  double sum_theta = 0.0;
  for (int j = 0; j < np; ++j) {
    double loop = 0.0;
    for (int i = 0; i < nt; ++i) {
      const int ip = (i + 1) % nt;
      loop += wrap_increment(total_alpha.at(ip, j) - total_alpha.at(i, j));
    }
    sum_theta += loop;
  }
  double sum_phi = 0.0;
  for (int i = 0; i < nt; ++i) {
    double loop = 0.0;
    for (int j = 0; j < np; ++j) {
      const int jp = (j + 1) % np;
      loop += wrap_increment(total_alpha.at(i, jp) - total_alpha.at(i, j));
    }
    sum_phi += loop;
  }

  WindingMeasurement m;
  m.raw_theta = sum_theta / (kTwoPi * np);
  m.raw_phi = sum_phi / (kTwoPi * nt);
  const double rt = std::round(m.raw_theta), rp = std::round(m.raw_phi);
  m.index = {static_cast<long>(rt), static_cast<long>(rp)};
  m.residual = std::max(std::abs(m.raw_theta - rt), std::abs(m.raw_phi - rp));
  return m;
}

WindingIndex winding_of(const ScalarField& total_alpha) {
  const WindingMeasurement m = measure_winding(total_alpha);
  if (!(m.residual <= kWindingTolerance)) throw NonIntegerWinding(m.raw_theta, m.raw_phi);
  return m.index;
}

SectorField::SectorField(const TorusShape& shape, const WindingIndex& index, ScalarField u)
    : shape_(shape), index_(index), u_(std::move(u)) {}

double SectorField::total_at(int i, int j) const {
  const PeriodicGrid& g = u_.grid();
  return u_.at(i, j) + harmonic_lift(shape_, index_, g.theta(i), g.phi(j));
}

ScalarField SectorField::total() const {
  ScalarField t = lift_field(shape_, u_.grid(), index_);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] += u_[k];
  return t;
}

SectorField decompose(const ScalarField& total_alpha, const TorusShape& shape) {
  const WindingIndex h = winding_of(total_alpha);
  const PeriodicGrid& g = total_alpha.grid();
  ScalarField u = lift_field(shape, g, h);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = total_alpha[k] - u[k];

  for (int i = 0; i < g.n_theta(); ++i) {
    for (int j = 0; j < g.n_phi(); ++j) {
      if (i == 0 && j == 0) continue;
      const double ref = (j == 0) ? u.at(i - 1, 0) : u.at(i, j - 1);
      double& v = u.at(i, j);
      v -= kTwoPi * std::round((v - ref) / kTwoPi);
    }
  }
  return SectorField(shape, h, std::move(u));
}

}  // namespace nematorus
