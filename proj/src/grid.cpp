#include "nematorus/grid.hpp"

#include <cmath>
#include <string>

#include "nematorus/errors.hpp"
#include "nematorus/geometry.hpp"

namespace nematorus {

PeriodicGrid::PeriodicGrid(int n_theta, int n_phi)
    : n_theta_(n_theta), n_phi_(n_phi), d_theta_(0.0), d_phi_(0.0) {
  if (n_theta < kMinNodes || n_phi < kMinNodes) {
    throw ValidationError("grid needs at least " + std::to_string(kMinNodes) +
                          " nodes per direction, got " + std::to_string(n_theta) + "x" +
                          std::to_string(n_phi));
  }
  d_theta_ = kTwoPi / n_theta;
  d_phi_ = kTwoPi / n_phi;
}

ScalarField::ScalarField(const PeriodicGrid& grid, double value)
    : grid_(grid), values_(grid.size(), value) {}

ScalarField::ScalarField(const PeriodicGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ValidationError("field has " + std::to_string(values_.size()) +
                          " samples but the grid has " + std::to_string(grid_.size()) +
                          " nodes");
  }
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace nematorus
