#include "nematorus/energy.hpp"

#include <string>
#include <utility>

#include <cmath>

#include "nematorus/errors.hpp"
#include "nematorus/stencil.hpp"

namespace nematorus {

void ElasticConstants::validate() const {
  const std::pair<const char*, double> moduli[] = {{"K1", K1}, {"K2", K2}, {"K3", K3}, {"kappa", kappa}};
  for (const auto& [name, k] : moduli) {
    if (!std::isfinite(k) || k < 0.0) {
      throw ValidationError(std::string(name) + " must be finite and non-negative");
    }
  }
  if (K1 == 0.0 && K2 == 0.0 && K3 == 0.0) {
    throw ValidationError("at least one of K1, K2, K3 must be positive");
  }
}

double geometric_constant(const TorusShape& shape, double kappa) {
  const double b = shape.b(), s = shape.root();
  return kappa * kPi * kPi * ((2.0 - b * b) / s + 2.0 * b);
}

EnergyBreakdown energy_one_constant(const SectorField& field, double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw ValidationError("one-constant modulus kappa must be positive");
  }
  const SectorStencil st(field.shape(), field.grid(), field.index());
  const OneConstantPass pass = one_constant_pass(st, field.u(), kappa, nullptr);
  EnergyBreakdown e;
  e.model = EnergyModel::OneConstant;
  e.dirichlet = pass.dirichlet;
  e.potential = pass.potential;
  e.geometric_const = geometric_constant(field.shape(), kappa);
  e.total = e.dirichlet + e.potential + e.geometric_const;
  e.total_over_pi2 = e.total / (kPi * kPi);
  return e;
}

namespace {

struct QuadrantTerms {
  double splay;
  double twist;
  double bend;
};

// Partial derivatives of the pointwise density f(alpha, x1, x2).
struct DensityGradient {
  double d_alpha;
  double d_x1;
  double d_x2;
};

QuadrantTerms density_terms(const DarbouxInvariants& d, const ElasticConstants& K) {
  return {0.5 * K.K1 * d.kappa_t * d.kappa_t, 0.5 * K.K2 * d.tau_n * d.tau_n,
          0.5 * K.K3 * (d.kappa_n * d.kappa_n + d.c_n * d.c_n)};
}

DensityGradient density_gradient(const DarbouxInvariants& d, const ElasticConstants& K,
                                 double c1, double c2, double alpha) {
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double gap = c1 - c2;
  DensityGradient g{};
  g.d_x1 = K.K1 * d.kappa_t * sa + K.K3 * d.kappa_n * ca;
  g.d_x2 = -K.K1 * d.kappa_t * ca + K.K3 * d.kappa_n * sa;
  g.d_alpha = (K.K1 - K.K3) * d.kappa_t * d.kappa_n +
              0.25 * (K.K2 - K.K3) * gap * gap * std::sin(4.0 * alpha) -
              0.5 * K.K3 * (c1 * c1 - c2 * c2) * std::sin(2.0 * alpha);
  return g;
}

}  // namespace

EnergyBreakdown energy_full(const SectorField& field, const ElasticConstants& constants) {
  constants.validate();
  const SectorStencil st(field.shape(), field.grid(), field.index());
  const PeriodicGrid& g = field.grid();
  const ScalarField& u = field.u();
  const double r = field.shape().r();
  const double inv_dt = 1.0 / g.d_theta(), inv_dp = 1.0 / g.d_phi();

  double splay = 0.0, twist = 0.0, bend = 0.0;
  for (int i = 0; i < st.n_theta(); ++i) {
    double row_s = 0.0, row_t = 0.0, row_b = 0.0;
    const int im = st.im(i);
    for (int j = 0; j < st.n_phi(); ++j) {
      const double alpha = st.total(u, i, j);
      const double dth[2] = {st.inc_theta(u, i, j) * inv_dt, st.inc_theta(u, im, j) * inv_dt};
      const double dph[2] = {st.inc_phi(u, i, j) * inv_dp,
                             st.inc_phi(u, i, st.jm(j)) * inv_dp};
      for (double a : dth) {
        for (double c : dph) {
          const DarbouxInvariants d =
              darboux_in_frame(st.c1, st.c2[i], st.spin[i], alpha, a / r, c / st.rho[i]);
          const QuadrantTerms q = density_terms(d, constants);
          row_s += q.splay;
          row_t += q.twist;
          row_b += q.bend;
        }
      }
    }
    const double w = 0.25 * st.weight[i];
    splay += w * row_s;
    twist += w * row_t;
    bend += w * row_b;
  }
  const double cell = g.d_theta() * g.d_phi();
  EnergyBreakdown e;
  e.model = EnergyModel::Full;
  e.splay = cell * splay;
  e.twist = cell * twist;
  e.bend = cell * bend;
  e.total = e.splay + e.twist + e.bend;
  e.total_over_pi2 = e.total / (kPi * kPi);
  return e;
}

ScalarField full_residual_field(const SectorField& field, const ElasticConstants& constants) {
  constants.validate();
  const SectorStencil st(field.shape(), field.grid(), field.index());
  const PeriodicGrid& g = field.grid();
  const ScalarField& u = field.u();
  const double r = field.shape().r();
  const double inv_dt = 1.0 / g.d_theta(), inv_dp = 1.0 / g.d_phi();

  // Accumulates dE/d alpha divided by the common cell area.
  ScalarField grad(g);
  for (int i = 0; i < st.n_theta(); ++i) {
    const int ip = st.ip(i), im = st.im(i);
    const double w = 0.25 * st.weight[i];
    const double rho = st.rho[i];
    for (int j = 0; j < st.n_phi(); ++j) {
      const int jp = st.jp(j), jm = st.jm(j);
      const double alpha = st.total(u, i, j);
      const double dth[2] = {st.inc_theta(u, i, j) * inv_dt, st.inc_theta(u, im, j) * inv_dt};
      const double dph[2] = {st.inc_phi(u, i, j) * inv_dp, st.inc_phi(u, i, jm) * inv_dp};
      for (int qt = 0; qt < 2; ++qt) {
        for (int qp = 0; qp < 2; ++qp) {
          const DarbouxInvariants d =
              darboux_in_frame(st.c1, st.c2[i], st.spin[i], alpha, dth[qt] / r, dph[qp] / rho);
          const DensityGradient dg = density_gradient(d, constants, st.c1, st.c2[i], alpha);
          grad.at(i, j) += w * dg.d_alpha;

          const double gt = w * dg.d_x1 * inv_dt / r;
          if (qt == 0) {
            grad.at(ip, j) += gt;
            grad.at(i, j) -= gt;
          } else {
            grad.at(i, j) += gt;
            grad.at(im, j) -= gt;
          }
          const double gp = w * dg.d_x2 * inv_dp / rho;
          if (qp == 0) {
            grad.at(i, jp) += gp;
            grad.at(i, j) -= gp;
          } else {
            grad.at(i, j) += gp;
            grad.at(i, jm) -= gp;
          }
        }
      }
    }
  }
  for (int i = 0; i < st.n_theta(); ++i) {
    const double inv_w = 1.0 / st.weight[i];
    double* row = grad.row(i);
    for (int j = 0; j < st.n_phi(); ++j) row[j] = -row[j] * inv_w;
  }
  return grad;
}

double energy_constant_closed_form(const TorusShape& shape, const ElasticConstants& K,
                                   double alpha) {
  const BifurcationScalars s = bifurcation_scalars(shape.b());
  const double c2a = std::cos(2.0 * alpha);
  const double pi2 = kPi * kPi;
  return pi2 * ((K.K1 + K.K3) * s.A + 0.5 * (K.K2 + K.K3) * s.B) +
         pi2 * c2a * ((K.K1 - K.K3) * s.A + K.K3 * s.C) +
         pi2 * c2a * c2a * (0.5 * (K.K3 - K.K2) * s.B);
}

double energy_constant_derivative(const TorusShape& shape, const ElasticConstants& K,
                                  double alpha) {
  const BifurcationScalars s = bifurcation_scalars(shape.b());
  return 2.0 * kPi * kPi * std::sin(2.0 * alpha) *
         (s.A * (K.K3 - K.K1) + s.B * std::cos(2.0 * alpha) * (K.K2 - K.K3) - s.C * K.K3);
}

IntegralOracles integral_oracles(double b) {
  if (!(b > 1.0)) throw ValidationError("integral oracles need b > 1");
  const double s = std::sqrt(b * b - 1.0);
  return {kTwoPi * (b - s), kTwoPi * b * (b / s - 1.0), kTwoPi / s};
}

BifurcationScalars bifurcation_scalars(double b) {
  if (!(b > 1.0)) throw ValidationError("bifurcation scalars need b > 1");
  const double s = std::sqrt(b * b - 1.0);
  BifurcationScalars out;
  out.A = b - s;
  out.B = b * b / s;
  out.C = 2.0 * b - b * b / s;
  out.eta_scalar = 2.0 * s / b - 1.0;
  out.lambda1 = 1.0 / (1.0 + out.eta_scalar);
  out.lambda2 = 1.0 / (1.0 - out.eta_scalar);
  return out;
}

}  // namespace nematorus
