#include "nematorus/stencil.hpp"

#include <algorithm>
#include <cmath>

#include "nematorus/detail/fast_trig.hpp"

namespace nematorus {

SectorStencil::SectorStencil(const TorusShape& shape, const PeriodicGrid& grid,
                             const WindingIndex& index)
    : shape_(shape), grid_(grid), index_(index) {
  const int nt = grid.n_theta(), np = grid.n_phi();
  const double r = shape.r();
  const double dt2 = grid.d_theta() * grid.d_theta();
  const double dp2 = grid.d_phi() * grid.d_phi();

  rho.resize(nt);
  weight.resize(nt);
  face_weight.resize(nt);
  c_plus.resize(nt);
  c_minus.resize(nt);
  c_phi.resize(nt);
  eta.resize(nt);
  c2.resize(nt);
  spin.resize(nt);
  psi_theta.resize(nt);
  dpsi_theta.resize(nt);
  lap_psi.resize(nt);
  psi_phi.resize(np);

  c1 = 1.0 / r;
  for (int i = 0; i < nt; ++i) {
    const double th = grid.theta(i);
    rho[i] = shape.rho(th);
    weight[i] = r * rho[i];
    eta[i] = eta_potential(shape, th);
    c2[i] = std::cos(th) / rho[i];
    spin[i] = std::sin(th) / rho[i];
    c_phi[i] = 1.0 / (rho[i] * rho[i] * dp2);
  }
  for (int i = 0; i < nt; ++i) face_weight[i] = 0.5 * (weight[i] + weight[ip(i)]);
  for (int i = 0; i < nt; ++i) {
    const double denom = weight[i] * r * r * dt2;
    c_plus[i] = face_weight[i] / denom;
    c_minus[i] = face_weight[im(i)] / denom;
  }

  const double ht = static_cast<double>(index.h_theta);
  for (int i = 0; i < nt; ++i) {
    psi_theta[i] = harmonic_lift(shape, {index.h_theta, 0}, grid.theta(i), 0.0);
  }
  for (int i = 0; i < nt; ++i) {
    // Increment towards theta_{i+1}; at the seam the neighbour is theta = 2pi,
    // where the lift has advanced by exactly 2pi h_theta.
    const double next =
        (i + 1 == nt) ? ht * kTwoPi
                      : harmonic_lift(shape, {index.h_theta, 0}, grid.theta(i + 1), 0.0);
    dpsi_theta[i] = next - psi_theta[i];
  }
  for (int i = 0; i < nt; ++i) {
    lap_psi[i] = c_plus[i] * dpsi_theta[i] - c_minus[i] * dpsi_theta[im(i)];
  }
  for (int j = 0; j < np; ++j) psi_phi[j] = static_cast<double>(index.h_phi) * grid.phi(j);
  dpsi_phi = static_cast<double>(index.h_phi) * grid.d_phi();
}

OneConstantPass one_constant_pass(const SectorStencil& st, const ScalarField& u, double kappa,
                                  ScalarField* rhs) {
  const PeriodicGrid& g = st.grid();
  const int nt = g.n_theta(), np = g.n_phi();
  const double r = st.shape().r();
  const double dt2 = g.d_theta() * g.d_theta();
  const double dp2 = g.d_phi() * g.d_phi();
  const double dpsi_phi = st.dpsi_phi;
  const double* psi_phi = st.psi_phi.data();

  std::vector<double> pad(static_cast<std::size_t>(np) + 2);
  double dir_theta = 0.0, dir_phi = 0.0, pot = 0.0, res_max = 0.0, res_sq = 0.0;

  for (int i = 0; i < nt; ++i) {
    const double* uc = u.row(i);
    const double* up = u.row(st.ip(i));
    const double* um = u.row(st.im(i));
    pad[0] = uc[np - 1];
    std::copy(uc, uc + np, pad.begin() + 1);
    pad[np + 1] = uc[0];
    const double* p = pad.data();
    double* out = rhs ? rhs->row(i) : nullptr;

    const double cp = st.c_plus[i], cm = st.c_minus[i], cphi = st.c_phi[i];
    const double lp = st.lap_psi[i], et = st.eta[i];
    const double dps = st.dpsi_theta[i], base = st.psi_theta[i];

    double acc_t = 0.0, acc_p = 0.0, acc_c = 0.0, acc_r2 = 0.0, acc_m = 0.0;
    if (out) {
#pragma omp simd reduction(+ : acc_t, acc_p, acc_c, acc_r2) reduction(max : acc_m)
      for (int j = 0; j < np; ++j) {
        const double uj = p[j + 1];
        const double inc_t = up[j] - uj + dps;
        const double inc_p = p[j + 2] - uj + dpsi_phi;
        const double lap = cp * (up[j] - uj) - cm * (uj - um[j]) + lp +
                           cphi * (p[j + 2] - 2.0 * uj + p[j]);
        double s, c;
        detail::fast_sincos(2.0 * (uj + base + psi_phi[j]), s, c);
        const double res = lap + et * s;
        out[j] = kappa * res;
        acc_t += inc_t * inc_t;
        acc_p += inc_p * inc_p;
        acc_c += c;
        acc_r2 += res * res;
        acc_m = std::max(acc_m, std::abs(res));
      }
    } else {
#pragma omp simd reduction(+ : acc_t, acc_p, acc_c, acc_r2) reduction(max : acc_m)
      for (int j = 0; j < np; ++j) {
        const double uj = p[j + 1];
        const double inc_t = up[j] - uj + dps;
        const double inc_p = p[j + 2] - uj + dpsi_phi;
        const double lap = cp * (up[j] - uj) - cm * (uj - um[j]) + lp +
                           cphi * (p[j + 2] - 2.0 * uj + p[j]);
        double s, c;
        detail::fast_sincos(2.0 * (uj + base + psi_phi[j]), s, c);
        const double res = lap + et * s;
        acc_t += inc_t * inc_t;
        acc_p += inc_p * inc_p;
        acc_c += c;
        acc_r2 += res * res;
        acc_m = std::max(acc_m, std::abs(res));
      }
    }

    const double w = st.weight[i];
    dir_theta += st.face_weight[i] * acc_t;
    dir_phi += w / (st.rho[i] * st.rho[i]) * acc_p;
    pot += w * et * acc_c;
    res_sq += w * acc_r2;
    res_max = std::max(res_max, acc_m);
  }

  const double cell = g.d_theta() * g.d_phi();
  OneConstantPass out;
  out.dirichlet = 0.5 * kappa * cell * (dir_theta / (r * r * dt2) + dir_phi / dp2);
  out.potential = 0.5 * kappa * cell * pot;
  out.residual_max = res_max;
  out.residual_l2 = std::sqrt(cell * res_sq);
  return out;
}

ScalarField stencil_laplacian(const SectorStencil& st, const ScalarField& u) {
  ScalarField lap(st.grid());
  for (int i = 0; i < st.n_theta(); ++i) {
    const int ip = st.ip(i), im = st.im(i);
    for (int j = 0; j < st.n_phi(); ++j) {
      const double uj = u.at(i, j);
      lap.at(i, j) = st.c_plus[i] * (u.at(ip, j) - uj) - st.c_minus[i] * (uj - u.at(im, j)) +
                     st.lap_psi[i] +
                     st.c_phi[i] * (u.at(i, st.jp(j)) - 2.0 * uj + u.at(i, st.jm(j)));
    }
  }
  return lap;
}

}  // namespace nematorus
