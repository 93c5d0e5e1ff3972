// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nematorus/commands.hpp"
#include "nematorus/energy.hpp"
#include "nematorus/errors.hpp"
#include "nematorus/flow.hpp"
#include "nematorus/initial.hpp"
#include "nematorus/stationary.hpp"

using namespace nematorus;

namespace {

constexpr double kPi2 = kPi * kPi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() /
           ("nematorus-acceptance-" + std::to_string(::getpid()) + "-" + name);
  std::filesystem::remove_all(p);
  return p;
}

RunConfig preset_config(const std::string& preset, const std::filesystem::path& out, Settings extra = {}) {
  Settings flags{{"preset", preset}, {"output-dir", out.string()}};
  for (const auto& [k, v] : extra) flags[k] = v;
  return build_config(resolve_settings({}, flags));
}

Outcome closed_form_oracle() {
  const double bs[] = {1.1, 2.0 / std::sqrt(3.0), 1.25, 1.6, 2.0, 2.5};
  const ElasticConstants Ks[] = {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, 1}};
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double b : bs) {
    const TorusShape s = TorusShape::from_aspect(b);
    const PeriodicGrid g(512, 8);
    for (const ElasticConstants& K : Ks) {
      for (int k = 0; k < 36; ++k) {
        const double a = kPi * k / 36.0;
        const double exact = energy_constant_closed_form(s, K, a);
        const double quad = energy_full(SectorField(s, {0, 0}, ScalarField(g, a)), K).total;
        worst = std::max(worst, std::abs(quad - exact) / (1.0 + std::abs(exact)));
      }
    }
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst < 1e-8 && wall < 10.0,
          fmt("worst relative gap %.2e over 864 cases in %.2f s", worst, wall)};
}

Outcome integral_oracles_check() {
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double b = 1.01 + (10.0 - 1.01) * (k + 0.5) / 50.0;
    auto gk = [](const std::function<double(double)>& f) {
      return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kTwoPi, 20, 1e-15);
    };
    const IntegralOracles o = integral_oracles(b);
    const double q[3] = {gk([b](double t) { return std::sin(t) * std::sin(t) / (b + std::cos(t)); }),
                         gk([b](double t) { return std::cos(t) * std::cos(t) / (b + std::cos(t)); }),
                         gk([b](double t) { return 1.0 / (b + std::cos(t)); })};
    const double c[3] = {o.I_sin2, o.I_cos2, o.I_inv};
    for (int m = 0; m < 3; ++m) worst = std::max(worst, std::abs(q[m] - c[m]) / std::max(1.0, std::abs(q[m])));
  }
  return {worst < 1e-12, fmt("worst gap %.2e over 50 aspect ratios", worst)};
}

Outcome gradient_oracle() {
  double worst = 0.0;
  SeededRandom pick(31);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const TorusShape s = TorusShape::from_aspect(1.1 + 2.0 * pick.uniform());
    const WindingIndex h{static_cast<long>(pick.uniform() * 5) - 2, static_cast<long>(pick.uniform() * 5) - 2};
    const PeriodicGrid g(32, 32);
    ScalarField u = smooth_random_field(g, seed, 4);
    SeededRandom noise(seed + 1000);
    for (auto& v : u.values()) v = 1.5 * v + 0.05 * noise.symmetric();
    const double kappa = 1.0;
    const SectorField f(s, h, u);
    const ScalarField rhs = flow_rhs(f, kappa);
    const double eps = 1e-5;
    double err = 0.0, scale = 0.0;
    for (int i = 0; i < g.n_theta(); ++i) {
      const double w = s.r() * s.rho(g.theta(i)) * g.d_theta() * g.d_phi();
      for (int j = 0; j < g.n_phi(); ++j) {
        ScalarField up = u, um = u;
        up.at(i, j) += eps;
        um.at(i, j) -= eps;
        const double fd = (energy_one_constant(SectorField(s, h, up), kappa).total -
                           energy_one_constant(SectorField(s, h, um), kappa).total) / (2 * eps);
        err = std::max(err, std::abs(fd + w * rhs.at(i, j)));
        scale = std::max(scale, std::abs(w * rhs.at(i, j)));
      }
    }
    worst = std::max(worst, err / scale);
  }
  return {worst < 1e-6, fmt("worst relative gradient mismatch %.2e over 10 fields", worst)};
}

Outcome dissipation_and_conservation() {
  long increases = 0, winding_changes = 0, steps = 0;
  SeededRandom pick(4);
  for (int run = 0; run < 20; ++run) {
    const TorusShape s = TorusShape::from_aspect(1.05 + 2.5 * pick.uniform());
    const WindingIndex h{static_cast<long>(pick.uniform() * 7) - 3, static_cast<long>(pick.uniform() * 7) - 3};
    const PeriodicGrid g(64, 64);
    InitialDatum d;
    d.kind = run % 2 ? InitialKind::Noise : InitialKind::SmoothNoise;
    d.amplitude = 0.1 + pick.uniform();
    d.seed = 100 + run;
    FlowParams p;
    p.max_steps = 5000;
    p.stop_tol = 1e-300;
    p.snapshot_every = 1;
    try {
      const FlowResult r = run_flow(make_initial(d, s, g, h), 1.0, p);
      const auto& snaps = r.trace.snapshots;
      for (std::size_t k = 1; k < snaps.size(); ++k) {
        if (snaps[k].energy > snaps[k - 1].energy + 1e-12 * (1.0 + std::abs(snaps[k - 1].energy))) ++increases;
        if (!(snaps[k].winding == h)) ++winding_changes;
      }
      if (!(winding_of(r.final_field.total()) == h)) ++winding_changes;
      steps += r.steps;
    } catch (const EnergyIncreased&) {
      ++increases;
    } catch (const NonIntegerWinding&) {
      ++winding_changes;
    }
  }
  return {increases == 0 && winding_changes == 0 && steps == 20 * 5000,
          fmt("%.0f energy increases, %.0f winding changes in %.0f steps", double(increases),
              double(winding_changes), double(steps))};
}

Outcome threshold_reproduction() {
  const auto out = scratch("threshold");
  const auto t0 = std::chrono::steady_clock::now();
  const ThresholdReport rep = cmd_threshold(preset_config("threshold", out));
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::filesystem::remove_all(out);
  return {rep.lo > 1.49 && rep.hi < 1.54,
          fmt("interval (%.6f, %.6f) after %.0f probes in %.1f s", rep.lo, rep.hi,
              double(rep.probes.size()), wall)};
}

// Bisects for the point where flag(x) changes between a and b.
double locate_change(const std::function<StabilityFlag(double)>& flag, double a, double b) {
  const StabilityFlag fa = flag(a);
  for (int k = 0; k < 200 && b - a > 1e-15; ++k) {
    const double m = 0.5 * (a + b);
    (flag(m) == fa ? a : b) = m;
  }
  return 0.5 * (a + b);
}

Outcome phase_diagram() {
  const ElasticConstants one = ElasticConstants::one_constant(1.0);
  auto flag_at = [](double b, const ElasticConstants& K, double angle) {
    for (const CriticalAngle& c : constant_state_analysis(TorusShape::from_aspect(b), K).critical_angles) {
      if (std::abs(c.angle - angle) < 1e-12) return c.stability;
    }
    return StabilityFlag::Marginal;
  };
  const double bc = 2.0 / std::sqrt(3.0);
  const double b_par = locate_change([&](double b) { return flag_at(b, one, kPi / 2); }, 1.05, 1.5);
  const double b_mer = locate_change([&](double b) { return flag_at(b, one, 0.0); }, 1.05, 1.5);
  const bool flips = flag_at(bc - 1e-6, one, kPi / 2) == StabilityFlag::Unstable &&
                     flag_at(bc + 1e-6, one, kPi / 2) == StabilityFlag::Stable &&
                     flag_at(bc - 1e-6, one, 0.0) == StabilityFlag::Stable &&
                     flag_at(bc + 1e-6, one, 0.0) == StabilityFlag::Unstable;
  const double wcross = energy_constant_closed_form(TorusShape::from_aspect(bc), one, 0.0) -
                        energy_constant_closed_form(TorusShape::from_aspect(bc), one, kPi / 2);

  auto fig3 = [](double lambda) { return ElasticConstants{lambda, 1.0, lambda, 1.0}; };
  const double l_mer = locate_change([&](double l) { return flag_at(1.25, fig3(l), 0.0); }, 0.5, 1.0);
  const double l_par = locate_change([&](double l) { return flag_at(1.25, fig3(l), kPi / 2); }, 1.0, 2.0);
  const double err = std::max({std::abs(b_par - bc), std::abs(b_mer - bc), std::abs(l_mer - 5.0 / 6.0),
                               std::abs(l_par - 1.25)});
  return {err < 1e-9 && flips && std::abs(wcross) < 1e-12,
          fmt("b flips at %.12f / %.12f, lambda flips at %.12f / %.12f", b_par, b_mer, l_mer, l_par)};
}

Outcome banded_collapse() {
  const TorusShape s = TorusShape::from_aspect(2.0);
  const PeriodicGrid g(64, 64);
  double worst = 0.0;
  int constant = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    ScalarField u = smooth_random_field(g, seed, 1 + static_cast<int>(seed % 4));
    for (auto& v : u.values()) v = kPi + 0.5 * kPi * v;
    FlowParams p;
    p.stop_tol = 1e-12;
    p.max_steps = 2000000;
    const FlowResult r = run_flow(SectorField(s, {0, 0}, u), 1.0, p);
    const Classification c = classify_final(r.final_field);
    double dev = 0.0;
    const ScalarField total = r.final_field.total();
    for (double v : total.values()) {
      dev = std::max(dev, std::abs(std::remainder(v - kPi / 2, kPi)));
    }
    worst = std::max(worst, dev);
    if (c.is_constant() && r.outcome == FlowOutcome::Converged) ++constant;
  }
  return {constant == 10 && worst < 1e-3,
          fmt("%.0f of 10 constant, worst deviation from pi/2 mod pi %.2e", constant, worst)};
}

Outcome table_orderings() {
  const auto out = scratch("table1");
  const int jobs = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
  const SweepResult res = cmd_sweep_sectors(preset_config("table1", out, {{"jobs", std::to_string(jobs)}}));
  std::filesystem::remove_all(out);
  bool ok = true;
  for (const SweepCell& c : res.cells) ok = ok && c.ok;
  if (!ok) return {false, "a sector cell failed"};
  for (int a = 0; a <= res.h_max; ++a) {
    for (int k = 1; k <= res.h_max; ++k) {
      ok = ok && res.cell(k, a).summary.energy > res.cell(k - 1, a).summary.energy;
      ok = ok && res.cell(a, k).summary.energy > res.cell(a, k - 1).summary.energy;
    }
  }
  double min_other = INFINITY;
  for (const SweepCell& c : res.cells) {
    if (!(c.h == WindingIndex{0, 0})) min_other = std::min(min_other, c.summary.energy);
  }
  ok = ok && res.cell(0, 0).summary.energy < min_other;
  return {ok, fmt("W(0,0) = %.4f, W(3,0) = %.4f, W(0,3) = %.4f, W(3,3) = %.4f", res.cell(0, 0).summary.energy,
                  res.cell(3, 0).summary.energy, res.cell(0, 3).summary.energy, res.cell(3, 3).summary.energy)};
}

Outcome inner_outer_structure() {
  const auto out = scratch("fig7");
  const RunConfig cfg = preset_config("fig7", out, {{"emit-fields", "false"}, {"emit-trace", "false"}});
  const FlowResult r = run_flow(initial_field(cfg), cfg.constants.kappa, cfg.flow);
  std::filesystem::remove_all(out);
  const int n = r.final_field.grid().n_theta();
  std::vector<double> ring;
  for (int i = 0; i <= n / 2; ++i) ring.push_back(ring_circular_mean(r.final_field, i));
  bool monotone = true;
  for (std::size_t k = 1; k < ring.size(); ++k) monotone = monotone && ring[k] <= ring[k - 1] + 1e-12;
  const double inner = ring.back(), outer = ring.front();
  return {r.outcome == FlowOutcome::Converged && inner < 0.2 && outer > kPi / 2 - 0.2 && monotone,
          fmt("outer ring %.4f, inner ring %.4f, monotone %.0f, steps %.0f", outer, inner, monotone,
              double(r.steps))};
}

ScalarField prolong(const ScalarField& u) {
  const int nt = u.grid().n_theta(), np = u.grid().n_phi();
  auto cubic = [](double a, double b, double c, double d) { return (-a + 9 * b + 9 * c - d) / 16.0; };
  ScalarField rows(PeriodicGrid(2 * nt, np));
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < np; ++j) {
      rows.at(2 * i, j) = u.at(i, j);
      rows.at(2 * i + 1, j) = cubic(u.at((i + nt - 1) % nt, j), u.at(i, j), u.at((i + 1) % nt, j),
                                    u.at((i + 2) % nt, j));
    }
  }
  ScalarField out(PeriodicGrid(2 * nt, 2 * np));
  for (int i = 0; i < 2 * nt; ++i) {
    for (int j = 0; j < np; ++j) {
      out.at(i, 2 * j) = rows.at(i, j);
      out.at(i, 2 * j + 1) = cubic(rows.at(i, (j + np - 1) % np), rows.at(i, j), rows.at(i, (j + 1) % np),
                                   rows.at(i, (j + 2) % np));
    }
  }
  return out;
}

Outcome refinement_order() {
  const TorusShape s(2.0, 1.0);
  const WindingIndex h{1, 0};
  ScalarField u(PeriodicGrid(64, 64));
  std::vector<double> residual, defect;
  for (int n : {64, 128, 256}) {
    if (n > 64) u = prolong(u);
    FlowParams p;
    p.stop_tol = 1e-13;
    p.stop_residual = 1e-7 * (64.0 / n) * (64.0 / n);
    p.max_steps = 5000000;
    p.snapshot_every = 50;
    const FlowResult r = run_flow(SectorField(s, h, u), 1.0, p);
    if (r.outcome != FlowOutcome::Converged) return {false, fmt("no convergence at n = %.0f", n)};
    u = r.final_field.u();
    residual.push_back(el_residual_one_constant(r.final_field, ResidualStencil::FourthOrder).max_norm);
    defect.push_back(discrete_laplacian(SectorField(s, h, ScalarField(u.grid()))).max_abs());
  }
  const double o1 = std::log2(residual[0] / residual[1]), o2 = std::log2(residual[1] / residual[2]);
  const double d1 = std::log2(defect[0] / defect[1]), d2 = std::log2(defect[1] / defect[2]);
  return {std::min({o1, o2, d1, d2}) >= 1.9,
          fmt("residual orders %.3f, %.3f; lift defect orders %.3f, %.3f", o1, o2, d1, d2)};
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"closed-form vs quadrature oracle", closed_form_oracle},
      {"integral closed forms vs adaptive quadrature", integral_oracles_check},
      {"discrete gradient oracle", gradient_oracle},
      {"dissipation and winding conservation", dissipation_and_conservation},
      {"threshold interval", threshold_reproduction},
      {"constant-state phase diagram", phase_diagram},
      {"banded-data collapse", banded_collapse},
      {"sector table orderings", table_orderings},
      {"b = 1.2 sector-(0,0) structure", inner_outer_structure},
      {"refinement order", refinement_order},
  };
  int failures = 0, index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d: %s | %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", index, name,
                o.detail.c_str(), wall);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
