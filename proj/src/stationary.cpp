#include "nematorus/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nematorus/errors.hpp"
#include "nematorus/initial.hpp"
#include "nematorus/stencil.hpp"

namespace nematorus {

namespace {

ResidualReport summarize(const ScalarField& res, const SectorStencil& st, EnergyModel model) {
  ResidualReport rep;
  rep.model = model;
  double sq = 0.0, sum = 0.0, area = 0.0;
  for (int i = 0; i < st.n_theta(); ++i) {
    const double w = st.weight[i];
    const double* row = res.row(i);
    for (int j = 0; j < st.n_phi(); ++j) {
      rep.max_norm = std::max(rep.max_norm, std::abs(row[j]));
      sq += w * row[j] * row[j];
      sum += w * row[j];
      area += w;
    }
  }
  const PeriodicGrid& g = st.grid();
  rep.l2_norm = std::sqrt(sq * g.d_theta() * g.d_phi());
  rep.mean = sum / area;
  return rep;
}

ScalarField fourth_order_residual(const SectorStencil& st, const ScalarField& u) {
  const PeriodicGrid& g = st.grid();
  const int nt = g.n_theta(), np = g.n_phi();
  const double dt = g.d_theta(), dp = g.d_phi();
  const TorusShape& shape = st.shape();
  ScalarField res(g);
  auto wrap_t = [nt](int i) { return (i % nt + nt) % nt; };
  auto wrap_p = [np](int j) { return (j % np + np) % np; };
  for (int i = 0; i < nt; ++i) {
    const LaplaceBeltramiCoeffs c = laplace_beltrami_coeffs(shape, g.theta(i));
    const int i1 = wrap_t(i + 1), i2 = wrap_t(i + 2), m1 = wrap_t(i - 1), m2 = wrap_t(i - 2);
    for (int j = 0; j < np; ++j) {
      const int j1 = wrap_p(j + 1), j2 = wrap_p(j + 2), n1 = wrap_p(j - 1), n2 = wrap_p(j - 2);
      const double u0 = u.at(i, j);
      const double ut = (-u.at(i2, j) + 8.0 * u.at(i1, j) - 8.0 * u.at(m1, j) + u.at(m2, j)) /
                        (12.0 * dt);
      const double utt = (-u.at(i2, j) + 16.0 * u.at(i1, j) - 30.0 * u0 + 16.0 * u.at(m1, j) -
                          u.at(m2, j)) /
                         (12.0 * dt * dt);
      const double upp = (-u.at(i, j2) + 16.0 * u.at(i, j1) - 30.0 * u0 + 16.0 * u.at(i, n1) -
                          u.at(i, n2)) /
                         (12.0 * dp * dp);
      const double alpha = st.total(u, i, j);
      res.at(i, j) =
          c.a_tt * utt + c.a_t * ut + c.a_pp * upp + st.eta[i] * std::sin(2.0 * alpha);
    }
  }
  return res;
}

StabilityFlag flag_from(double discriminant, double dead_band) {
  if (discriminant > dead_band) return StabilityFlag::Stable;
  if (discriminant < -dead_band) return StabilityFlag::Unstable;
  return StabilityFlag::Marginal;
}

}  // namespace

ScalarField el_residual_one_constant_field(const SectorField& field, ResidualStencil stencil) {
  const SectorStencil st(field.shape(), field.grid(), field.index());
  if (stencil == ResidualStencil::FourthOrder) return fourth_order_residual(st, field.u());
  ScalarField res(field.grid());
  one_constant_pass(st, field.u(), 1.0, &res);
  return res;
}

ResidualReport el_residual_one_constant(const SectorField& field, ResidualStencil stencil) {
  const SectorStencil st(field.shape(), field.grid(), field.index());
  return summarize(el_residual_one_constant_field(field, stencil), st, EnergyModel::OneConstant);
}

ResidualReport el_residual_full(const SectorField& field, const ElasticConstants& constants) {
  const SectorStencil st(field.shape(), field.grid(), field.index());
  return summarize(full_residual_field(field, constants), st, EnergyModel::Full);
}

double second_variation(const SectorField& field, const ScalarField& direction, double kappa) {
  if (!(direction.grid() == field.grid())) {
    throw ValidationError("second variation direction lives on a different grid");
  }
  const SectorStencil st(field.shape(), field.grid(), field.index());
  const PeriodicGrid& g = field.grid();
  const double r = field.shape().r();
  const double dt2 = g.d_theta() * g.d_theta(), dp2 = g.d_phi() * g.d_phi();
  double sum = 0.0;
  for (int i = 0; i < st.n_theta(); ++i) {
    const int ip = st.ip(i);
    const double gap = 2.0 * st.eta[i];
    double grad_t = 0.0, grad_p = 0.0, pot = 0.0;
    for (int j = 0; j < st.n_phi(); ++j) {
      const double w0 = direction.at(i, j);
      const double dt_w = direction.at(ip, j) - w0;
      const double dp_w = direction.at(i, st.jp(j)) - w0;
      grad_t += dt_w * dt_w;
      grad_p += dp_w * dp_w;
      pot += std::cos(2.0 * st.total(field.u(), i, j)) * w0 * w0;
    }
    sum += st.face_weight[i] * grad_t / (r * r * dt2) +
           st.weight[i] * (grad_p / (st.rho[i] * st.rho[i] * dp2) - gap * pot);
  }
  return kappa * g.d_theta() * g.d_phi() * sum;
}

std::string to_string(CriticalFamily family) {
  switch (family) {
    case CriticalFamily::Meridian:
      return "Meridian";
    case CriticalFamily::Parallel:
      return "Parallel";
    case CriticalFamily::SecondType:
      return "SecondType";
  }
  return "Unknown";
}

std::string to_string(StabilityFlag flag) {
  switch (flag) {
    case StabilityFlag::Stable:
      return "Stable";
    case StabilityFlag::Unstable:
      return "Unstable";
    case StabilityFlag::Marginal:
      return "Marginal";
  }
  return "Unknown";
}

StabilityReport constant_state_analysis(const TorusShape& shape, const ElasticConstants& K) {
  K.validate();
  StabilityReport rep;
  rep.bifurcation = bifurcation_scalars(shape.b());
  const BifurcationScalars& s = rep.bifurcation;
  const double scale = std::max({1.0, K.K1, K.K2, K.K3});
  const double dead = kStabilityDeadBand * scale;

  rep.meridian_discriminant = s.A * (K.K3 - K.K1) + s.B * (K.K2 - K.K3) - s.C * K.K3;
  rep.parallel_discriminant = -s.A * (K.K3 - K.K1) + s.B * (K.K2 - K.K3) + s.C * K.K3;

  auto add = [&](double angle, CriticalFamily family, double discriminant) {
    CriticalAngle c;
    c.angle = angle;
    c.family = family;
    c.discriminant = discriminant;
    c.stability = flag_from(discriminant, dead);
    c.is_stable_local_min = c.stability == StabilityFlag::Stable;
    c.energy = energy_constant_closed_form(shape, K, angle);
    c.is_critical = std::abs(energy_constant_derivative(shape, K, angle)) <=
                    1e-9 * scale * kPi * kPi * (s.A + s.B + std::abs(s.C));
    rep.critical_angles.push_back(c);
  };

  add(0.0, CriticalFamily::Meridian, rep.meridian_discriminant);
  add(0.5 * kPi, CriticalFamily::Parallel, rep.parallel_discriminant);

  const double denom = s.B * (K.K2 - K.K3);
  if (denom == 0.0) {
    rep.second_type_argument = std::numeric_limits<double>::quiet_NaN();
  } else {
    const double x = (s.C * K.K3 - s.A * (K.K3 - K.K1)) / denom;
    rep.second_type_argument = x;
    if (std::abs(x) <= 1.0) {
      rep.has_second_type = true;
      const double a = 0.5 * std::acos(x);
      // Curvature W'' / (4 pi^2) at the second-type points.
      const double second = s.B * (1.0 - x * x) * (K.K3 - K.K2);
      add(a, CriticalFamily::SecondType, second);
      add(kPi - a, CriticalFamily::SecondType, second);
    }
  }
  return rep;
}

ThresholdProbe threshold_probe(const ThresholdRequest& request, double b) {
  const TorusShape shape = TorusShape::from_aspect(b, request.r);
  const PeriodicGrid grid(request.n_theta, request.n_phi);
  InitialDatum datum;
  datum.kind = InitialKind::SmoothNoise;
  datum.value = 0.5 * kPi;
  datum.amplitude = request.noise_amplitude;
  datum.seed = request.seed;
  datum.modes = request.noise_modes;
  const SectorField initial = make_initial(datum, shape, grid, {0, 0});
  const FlowResult flow = run_flow(initial, request.kappa, request.flow);
  ThresholdProbe p;
  p.b = b;
  p.classification = classify_final(flow.final_field);
  p.outcome = flow.outcome;
  p.steps = flow.steps;
  p.energy = flow.final_energy;
  return p;
}

ThresholdReport threshold_search(const ThresholdRequest& request,
                                 const std::function<void(const ThresholdProbe&)>& on_probe) {
  if (!(request.b_lo < request.b_hi)) {
    throw ValidationError("threshold search needs b_lo < b_hi");
  }
  if (!(request.tolerance > 0.0)) {
    throw ValidationError("threshold tolerance must be positive");
  }
  request.flow.validate();
  // Both endpoints must be valid tori before any flow is run.
  TorusShape::from_aspect(request.b_lo, request.r);
  TorusShape::from_aspect(request.b_hi, request.r);

  ThresholdReport rep;
  auto probe = [&](double b) {
    ThresholdProbe p = threshold_probe(request, b);
    rep.probes.push_back(p);
    if (on_probe) on_probe(p);
    return p;
  };

  const ThresholdProbe lo = probe(request.b_lo);
  if (lo.classification.is_constant()) {
    throw BracketInvalid("lower endpoint b = " + std::to_string(request.b_lo) +
                         " relaxes to a constant state; the range does not bracket b*");
  }
  const ThresholdProbe hi = probe(request.b_hi);
  if (!hi.classification.is_constant()) {
    throw BracketInvalid("upper endpoint b = " + std::to_string(request.b_hi) +
                         " relaxes to a non-constant state; the range does not bracket b*");
  }

  rep.lo = request.b_lo;
  rep.hi = request.b_hi;
  while (rep.hi - rep.lo > request.tolerance) {
    const double mid = 0.5 * (rep.lo + rep.hi);
    const ThresholdProbe p = probe(mid);
    if (p.classification.is_constant()) {
      rep.hi = mid;
    } else {
      rep.lo = mid;
    }
  }
  return rep;
}

}  // namespace nematorus
