#include "nematorus/geometry.hpp"

#include <string>

#include "nematorus/errors.hpp"

namespace nematorus {

double reduce_angle(double angle) {
  double reduced = std::fmod(angle, kTwoPi);
  if (reduced < 0.0) reduced += kTwoPi;
  if (reduced >= kTwoPi) reduced = 0.0;
  return reduced;
}

TorusShape::TorusShape(double R, double r) : R_(R), r_(r), root_(0.0) {
  if (!std::isfinite(R) || !std::isfinite(r)) {
    throw ValidationError("torus radii must be finite");
  }
  if (!(r > 0.0)) throw ValidationError("tube radius r must be positive");
  if (!(R > r)) throw ValidationError("outer radius R must exceed tube radius r");
  const double b = R / r;
  if (!(b > 1.0 + kAspectGuard)) {
    throw ValidationError("aspect ratio R/r must exceed 1 + 1e-9");
  }
  root_ = std::sqrt(b * b - 1.0);
}

TorusShape TorusShape::from_aspect(double b, double r) { return TorusShape(b * r, r); }

GeometrySample geometry_at(const TorusShape& shape, const SurfacePoint& p) {
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  const double sp = std::sin(p.phi), cp = std::cos(p.phi);
  const double r = shape.r();
  const double rho = shape.R() + r * ct;

  GeometrySample g{};
  g.rho = rho;
  g.c1 = 1.0 / r;
  g.c2 = ct / rho;
  g.kappa1 = 0.0;
  g.kappa2 = -st / rho;
  g.spin_A_phi = st / rho;
  g.area_density = r * rho;
  g.g_inv_theta = 1.0 / (r * r);
  g.g_inv_phi = 1.0 / (rho * rho);
  g.e1 = {-st * cp, -st * sp, ct};
  g.e2 = {-sp, cp, 0.0};
  g.nu = {-ct * cp, -ct * sp, -st};
  return g;
}

Vec3 embedding_point(const TorusShape& shape, const SurfacePoint& p) {
  const double rho = shape.rho(p.theta);
  return {rho * std::cos(p.phi), rho * std::sin(p.phi), shape.r() * std::sin(p.theta)};
}

double curvature_gap_sq(const TorusShape& shape, double theta) {
  const double r = shape.r();
  const double c1 = 1.0 / r;
  const double c2 = std::cos(theta) / shape.rho(theta);
  return c1 * c1 - c2 * c2;
}

double eta_potential(const TorusShape& shape, double theta) {
  return 0.5 * curvature_gap_sq(shape, theta);
}

LaplaceBeltramiCoeffs laplace_beltrami_coeffs(const TorusShape& shape, double theta) {
  const double r = shape.r();
  const double rho = shape.rho(theta);
  return {1.0 / (r * r), -std::sin(theta) / (r * rho), 1.0 / (rho * rho)};
}

DarbouxInvariants darboux_in_frame(double c1, double c2, double spin_A_phi, double alpha,
                                   double x1, double x2) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  // X = grad(alpha) - A, with n = (cos, sin) and t = (sin, -cos) in the frame.
  const double X1 = x1;
  const double X2 = x2 - spin_A_phi;
  DarbouxInvariants d{};
  d.kappa_n = X1 * ca + X2 * sa;
  d.kappa_t = X1 * sa - X2 * ca;
  d.c_n = c1 * ca * ca + c2 * sa * sa;
  d.tau_n = (c1 - c2) * ca * sa;
  return d;
}

DarbouxInvariants darboux_invariants(const TorusShape& shape, const SurfacePoint& p,
                                     double alpha, const AngleGradient& grad_alpha) {
  const double rho = shape.rho(p.theta);
  const double c1 = 1.0 / shape.r();
  const double c2 = std::cos(p.theta) / rho;
  const double spin = std::sin(p.theta) / rho;
  return darboux_in_frame(c1, c2, spin, alpha, grad_alpha.d_theta / shape.r(),
                          grad_alpha.d_phi / rho);
}

Vec3 director_from_alpha(const TorusShape& shape, const SurfacePoint& p, double alpha) {
  const GeometrySample g = geometry_at(shape, p);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  return {ca * g.e1[0] + sa * g.e2[0], ca * g.e1[1] + sa * g.e2[1],
          ca * g.e1[2] + sa * g.e2[2]};
}

}  // namespace nematorus
