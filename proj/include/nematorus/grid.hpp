#pragma once

#include <cstddef>
#include <vector>

namespace nematorus {

/// Uniform periodic sampling of the parameter square [0, 2pi)^2.
/// Node (i, j) sits at theta_i = i * d_theta, phi_j = j * d_phi.
class PeriodicGrid {
 public:
  static constexpr int kMinNodes = 8;

  PeriodicGrid(int n_theta, int n_phi);

  int n_theta() const noexcept { return n_theta_; }
  int n_phi() const noexcept { return n_phi_; }
  double d_theta() const noexcept { return d_theta_; }
  double d_phi() const noexcept { return d_phi_; }
  double theta(int i) const noexcept { return i * d_theta_; }
  double phi(int j) const noexcept { return j * d_phi_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(n_theta_) * static_cast<std::size_t>(n_phi_);
  }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_phi_) +
           static_cast<std::size_t>(j);
  }

  bool operator==(const PeriodicGrid& other) const noexcept {
    return n_theta_ == other.n_theta_ && n_phi_ == other.n_phi_;
  }

 private:
  int n_theta_;
  int n_phi_;
  double d_theta_;
  double d_phi_;
};

/// Row-major node values on a PeriodicGrid (theta index is the slow one).
class ScalarField {
 public:
  explicit ScalarField(const PeriodicGrid& grid, double value = 0.0);
  ScalarField(const PeriodicGrid& grid, std::vector<double> values);

  const PeriodicGrid& grid() const noexcept { return grid_; }
  double& at(int i, int j) noexcept { return values_[grid_.index(i, j)]; }
  double at(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }
  double& operator[](std::size_t k) noexcept { return values_[k]; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  double* row(int i) noexcept { return values_.data() + grid_.index(i, 0); }
  const double* row(int i) const noexcept { return values_.data() + grid_.index(i, 0); }
  std::size_t size() const noexcept { return values_.size(); }
  std::vector<double>& values() noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  double max_abs() const noexcept;

 private:
  PeriodicGrid grid_;
  std::vector<double> values_;
};

}  // namespace nematorus
