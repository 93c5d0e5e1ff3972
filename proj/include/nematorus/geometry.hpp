#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace nematorus {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Smallest admissible distance of the aspect ratio b = R/r from 1.
inline constexpr double kAspectGuard = 1e-9;

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Reduces an angle to [0, 2pi).
double reduce_angle(double angle);

/// Torus of revolution with tube radius r around a circle of radius R.
class TorusShape {
 public:
  /// Throws ValidationError unless 0 < r < R and R/r > 1 + kAspectGuard.
  TorusShape(double R, double r);

  static TorusShape from_aspect(double b, double r = 1.0);

  double R() const noexcept { return R_; }
  double r() const noexcept { return r_; }
  double b() const noexcept { return R_ / r_; }
  /// sqrt(b^2 - 1), the scale that appears in every closed form on the torus.
  double root() const noexcept { return root_; }
  /// Distance to the symmetry axis, R + r cos(theta).
  double rho(double theta) const noexcept { return R_ + r_ * std::cos(theta); }

 private:
  double R_;
  double r_;
  double root_;
};

struct SurfacePoint {
  double theta;
  double phi;

  SurfacePoint(double theta_in, double phi_in)
      : theta(reduce_angle(theta_in)), phi(reduce_angle(phi_in)) {}
};

struct GeometrySample {
  double c1;
  double c2;
  double kappa1;
  double kappa2;
  double spin_A_phi;
  double area_density;
  double g_inv_theta;
  double g_inv_phi;
  double rho;
  Vec3 e1;
  Vec3 e2;
  Vec3 nu;
};

struct LaplaceBeltramiCoeffs {
  double a_tt;
  double a_t;
  double a_pp;
};

struct DarbouxInvariants {
  double kappa_n;
  double kappa_t;
  double c_n;
  double tau_n;
};

/// Coordinate partial derivatives (d alpha / d theta, d alpha / d phi).
struct AngleGradient {
  double d_theta;
  double d_phi;
};

GeometrySample geometry_at(const TorusShape& shape, const SurfacePoint& p);

/// Embedding X(theta, phi) in R^3.
Vec3 embedding_point(const TorusShape& shape, const SurfacePoint& p);

/// c1^2 - c2^2 at latitude theta.
double curvature_gap_sq(const TorusShape& shape, double theta);

/// eta = (c1^2 - c2^2) / 2.
double eta_potential(const TorusShape& shape, double theta);

LaplaceBeltramiCoeffs laplace_beltrami_coeffs(const TorusShape& shape, double theta);

DarbouxInvariants darboux_invariants(const TorusShape& shape, const SurfacePoint& p,
                                     double alpha, const AngleGradient& grad_alpha);

/// Same invariants from orthonormal components (x1, x2) of grad(alpha) in the
/// (e1, e2) frame, given c1, c2 and the spin connection component at the point.
DarbouxInvariants darboux_in_frame(double c1, double c2, double spin_A_phi, double alpha,
                                   double x1, double x2);

/// Unit tangent director cos(alpha) e1 + sin(alpha) e2.
Vec3 director_from_alpha(const TorusShape& shape, const SurfacePoint& p, double alpha);

}  // namespace nematorus
