#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nematorus/energy.hpp"
#include "nematorus/errors.hpp"
#include "nematorus/flow.hpp"
#include "nematorus/initial.hpp"

using namespace nematorus;

namespace {

constexpr double kPi2 = kPi * kPi;

double gk(const std::function<double(double)>& f) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, kTwoPi, 20, 1e-15);
}

SectorField random_field(double b, WindingIndex h, int n, std::uint64_t seed, double amp = 1.0) {
  const PeriodicGrid g(n, n);
  ScalarField u = smooth_random_field(g, seed, 3);
  for (auto& v : u.values()) v = amp * v + 0.4;
  return SectorField(TorusShape::from_aspect(b), h, std::move(u));
}

SectorField constant_field(double b, int nt, int np, double alpha) {
  return SectorField(TorusShape::from_aspect(b), {0, 0}, ScalarField(PeriodicGrid(nt, np), alpha));
}

double weighted_dot(const SectorField& f, const ScalarField& a, const ScalarField& v) {
  const PeriodicGrid& g = f.grid();
  double sum = 0.0;
  for (int i = 0; i < g.n_theta(); ++i) {
    const double w = f.shape().r() * f.shape().rho(g.theta(i)) * g.d_theta() * g.d_phi();
    for (int j = 0; j < g.n_phi(); ++j) sum += w * a.at(i, j) * v.at(i, j);
  }
  return sum;
}

SectorField shifted(const SectorField& f, const ScalarField& v, double eps) {
  ScalarField u = f.u();
  for (std::size_t k = 0; k < u.size(); ++k) u[k] += eps * v[k];
  return SectorField(f.shape(), f.index(), std::move(u));
}

}  // namespace

TEST_CASE("integral closed forms against adaptive quadrature") {
  for (int k = 0; k < 50; ++k) {
    const double b = 1.01 + (10.0 - 1.01) * (k + 0.5) / 50.0;
    const IntegralOracles o = integral_oracles(b);
    const double s2 = gk([b](double t) { return std::sin(t) * std::sin(t) / (b + std::cos(t)); });
    const double c2 = gk([b](double t) { return std::cos(t) * std::cos(t) / (b + std::cos(t)); });
    const double inv = gk([b](double t) { return 1.0 / (b + std::cos(t)); });
    CHECK(std::abs(o.I_sin2 - s2) < 1e-12 * std::max(1.0, std::abs(s2)));
    CHECK(std::abs(o.I_cos2 - c2) < 1e-12 * std::max(1.0, std::abs(c2)));
    CHECK(std::abs(o.I_inv - inv) < 1e-12 * std::max(1.0, std::abs(inv)));
  }
  const IntegralOracles two = integral_oracles(2.0);
  CHECK(two.I_inv == doctest::Approx(kTwoPi / std::sqrt(3.0)));
  CHECK(two.I_sin2 == doctest::Approx(kTwoPi * (2.0 - std::sqrt(3.0))));
  CHECK_THROWS_AS(integral_oracles(1.0), ValidationError);
}

TEST_CASE("bifurcation scalars") {
  const BifurcationScalars q = bifurcation_scalars(1.25);
  CHECK(q.A == doctest::Approx(0.5));
  CHECK(q.B == doctest::Approx(1.5625 / 0.75));
  CHECK(q.eta_scalar == doctest::Approx(0.2));
  CHECK(q.lambda1 == doctest::Approx(5.0 / 6.0));
  CHECK(q.lambda2 == doctest::Approx(1.25));
  CHECK(std::abs(bifurcation_scalars(2.0 / std::sqrt(3.0)).eta_scalar) < 1e-14);
  for (double b : {1.001, 1.3, 2.0, 7.0, 100.0}) {
    const BifurcationScalars s = bifurcation_scalars(b);
    CHECK(s.A > 0.0);
    CHECK(s.B > 0.0);
    CHECK(s.B + s.C == doctest::Approx(2.0 * b));
    CHECK(s.eta_scalar > -1.0);
    CHECK(s.eta_scalar < 1.0);
    CHECK(s.eta_scalar == doctest::Approx(s.C / s.B));
  }
}

TEST_CASE("elastic constants validation") {
  CHECK_THROWS_AS((ElasticConstants{-1.0, 1.0, 1.0, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS((ElasticConstants{0.0, 0.0, 0.0, 1.0}.validate()), ValidationError);
  CHECK_THROWS_AS((ElasticConstants{1.0, 1.0, NAN, 1.0}.validate()), ValidationError);
  CHECK_NOTHROW((ElasticConstants{1.0, 0.0, 0.0, 1.0}.validate()));
}

TEST_CASE("one-constant energy of the parallel state at b = 2") {
  const EnergyBreakdown e = energy_one_constant(constant_field(2.0, 32, 8, kPi / 2), 1.0);
  CHECK(e.model == EnergyModel::OneConstant);
  CHECK(e.total_over_pi2 == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-13));
  CHECK(e.total == doctest::Approx(e.dirichlet + e.potential + e.geometric_const));
  CHECK(e.total_over_pi2 == doctest::Approx(e.total / kPi2));
  CHECK(std::abs(e.dirichlet) < 1e-14);
  CHECK(e.geometric_const == doctest::Approx(geometric_constant(TorusShape(2.0, 1.0), 1.0)));
  CHECK(geometric_constant(TorusShape(2.0, 1.0), 3.0) ==
        doctest::Approx(3.0 * kPi2 * (-2.0 / std::sqrt(3.0) + 4.0)));
}

TEST_CASE("one-constant energy symmetries") {
  const SectorField z = constant_field(1.7, 24, 12, 0.0), p = constant_field(1.7, 24, 12, kPi);
  CHECK(energy_one_constant(z, 1.0).total == doctest::Approx(energy_one_constant(p, 1.0).total));

  const SectorField f = random_field(1.4, {0, 0}, 32, 4);
  ScalarField neg = f.u();
  for (auto& v : neg.values()) v = -v;
  CHECK(energy_one_constant(f, 1.0).total ==
        doctest::Approx(energy_one_constant(SectorField(f.shape(), {0, 0}, neg), 1.0).total)
            .epsilon(1e-13));

  // 2-odd reflection alpha(theta, phi) -> -alpha(-theta, -phi), in a nonzero sector.
  const SectorField g = random_field(1.4, {1, 2}, 32, 9);
  const PeriodicGrid& grid = g.grid();
  const ScalarField total = g.total();
  ScalarField refl(grid);
  for (int i = 0; i < grid.n_theta(); ++i) {
    for (int j = 0; j < grid.n_phi(); ++j) {
      const int ri = (grid.n_theta() - i) % grid.n_theta(), rj = (grid.n_phi() - j) % grid.n_phi();
      refl.at(i, j) = -total.at(ri, rj);
    }
  }
  // The reflected field has raw values that differ from the lift by whole turns at i = 0, j = 0;
  // decompose handles the multivalued samples.
  const SectorField r = decompose(refl, g.shape());
  CHECK(r.index() == g.index());
  CHECK(energy_one_constant(r, 1.0).total ==
        doctest::Approx(energy_one_constant(g, 1.0).total).epsilon(1e-12));
}

TEST_CASE("full energy collapses to the one-constant energy when the moduli agree") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SectorField f = random_field(1.6, {static_cast<long>(seed % 3), 1}, 32, seed);
    for (double kappa : {1.0, 2.5}) {
      const EnergyBreakdown one = energy_one_constant(f, kappa);
      const EnergyBreakdown full = energy_full(f, ElasticConstants::one_constant(kappa));
      CHECK(full.model == EnergyModel::Full);
      CHECK(std::abs(full.total - one.total) < 1e-10 * (1.0 + std::abs(one.total)));
      CHECK(full.total == doctest::Approx(full.splay + full.twist + full.bend));
      CHECK(full.splay >= 0.0);
      CHECK(full.twist >= 0.0);
      CHECK(full.bend >= 0.0);
    }
  }
}

TEST_CASE("full energy of constant angles equals the closed form") {
  const ElasticConstants sets[] = {{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, 1}, {0.4, 2.0, 1.3, 1}};
  for (double b : {1.1, 1.6, 2.5}) {
    for (const ElasticConstants& K : sets) {
      for (double a : {0.0, 0.3, kPi / 4, 1.2, kPi / 2, 2.9}) {
        const double exact = energy_constant_closed_form(TorusShape::from_aspect(b), K, a);
        const double quad = energy_full(constant_field(b, 256, 8, a), K).total;
        CHECK(std::abs(quad - exact) / (1.0 + std::abs(exact)) < 1e-8);
      }
    }
  }
  // K = (1,0,0) at alpha = 0 is pure splay.
  const EnergyBreakdown sp = energy_full(constant_field(1.6, 128, 8, 0.0), {1, 0, 0, 1});
  CHECK(sp.twist == 0.0);
  CHECK(sp.bend == 0.0);
  CHECK(sp.splay > 0.0);
}

TEST_CASE("closed form properties") {
  const TorusShape crit = TorusShape::from_aspect(2.0 / std::sqrt(3.0));
  const ElasticConstants one{1, 1, 1, 1};
  CHECK(energy_constant_closed_form(crit, one, 0.0) ==
        doctest::Approx(energy_constant_closed_form(crit, one, kPi / 2)).epsilon(1e-13));
  const TorusShape s = TorusShape::from_aspect(2.0);
  CHECK(energy_constant_closed_form(s, one, kPi / 2) / kPi2 ==
        doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-14));
  const ElasticConstants any{0.3, 1.7, 0.9, 1};
  const ElasticConstants twist{0, 1, 0, 1};
  for (double a = 0.0; a < kPi; a += 0.1) {
    CHECK(energy_constant_closed_form(s, any, a) ==
          doctest::Approx(energy_constant_closed_form(s, any, a + kPi)));
    CHECK(energy_constant_closed_form(s, twist, a) ==
          doctest::Approx(energy_constant_closed_form(s, twist, a + kPi / 2)));
  }
  // Twist is largest at alpha = pi/4 among constants.
  double best = -1.0, arg = 0.0;
  for (int k = 0; k <= 360; ++k) {
    const double a = kPi * k / 360.0, w = energy_constant_closed_form(s, twist, a);
    if (w > best) best = w, arg = a;
  }
  CHECK(std::fmod(arg, kPi / 2) == doctest::Approx(kPi / 4));
}

TEST_CASE("closed-form derivative agrees with finite differences") {
  SeededRandom rng(21);
  for (int draw = 0; draw < 20; ++draw) {
    const ElasticConstants K{2 * rng.uniform(), 2 * rng.uniform(), 2 * rng.uniform(), 1};
    const TorusShape s = TorusShape::from_aspect(1.02 + 4 * rng.uniform());
    for (int k = 0; k < 360; ++k) {
      const double a = kPi * k / 360.0, h = 1e-6;
      const double fd = (energy_constant_closed_form(s, K, a + h) -
                         energy_constant_closed_form(s, K, a - h)) / (2 * h);
      CHECK(std::abs(fd - energy_constant_derivative(s, K, a)) < 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("energies are scale invariant") {
  const ElasticConstants K{0.7, 1.1, 1.9, 1};
  const TorusShape small(2.0, 1.0), large(4.0, 2.0);
  for (double a : {0.0, 0.5, 1.4}) {
    CHECK(energy_constant_closed_form(small, K, a) ==
          doctest::Approx(energy_constant_closed_form(large, K, a)).epsilon(1e-12));
  }
  const SectorField f = random_field(2.0, {1, 1}, 32, 8);
  const SectorField g(large, f.index(), f.u());
  CHECK(energy_one_constant(f, 1.0).total ==
        doctest::Approx(energy_one_constant(g, 1.0).total).epsilon(1e-12));
  CHECK(energy_full(f, K).total == doctest::Approx(energy_full(g, K).total).epsilon(1e-12));
}

TEST_CASE("discrete gradient of the one-constant energy is minus the flow right-hand side") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SectorField f = random_field(1.2 + 0.3 * seed, {static_cast<long>(seed) - 3, 1}, 32, seed);
    const ScalarField v = smooth_random_field(f.grid(), seed + 100, 5);
    const double kappa = 0.5 + 0.25 * seed, eps = 1e-5;
    const double fd = (energy_one_constant(shifted(f, v, eps), kappa).total -
                       energy_one_constant(shifted(f, v, -eps), kappa).total) / (2 * eps);
    const double ip = -weighted_dot(f, flow_rhs(f, kappa), v);
    CHECK(std::abs(fd - ip) <= 1e-6 * std::abs(ip));
  }
}

TEST_CASE("full residual field is minus the discrete gradient of the full energy") {
  const ElasticConstants K{0.6, 1.4, 2.1, 1};
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SectorField f = random_field(1.5, {1, static_cast<long>(seed % 2)}, 24, seed);
    const ScalarField v = smooth_random_field(f.grid(), seed + 50, 4);
    const double eps = 1e-5;
    const double fd = (energy_full(shifted(f, v, eps), K).total -
                       energy_full(shifted(f, v, -eps), K).total) / (2 * eps);
    const double ip = -weighted_dot(f, full_residual_field(f, K), v);
    CHECK(std::abs(fd - ip) <= 1e-6 * std::abs(ip));
  }
}

TEST_CASE("one-constant energy converges at second order for smooth fields") {
  const TorusShape s = TorusShape::from_aspect(1.8);
  auto energy_at = [&](int n) {
    const PeriodicGrid g(n, n);
    ScalarField u(g);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        u.at(i, j) = 0.6 * std::sin(g.theta(i)) * std::cos(g.phi(j)) + 0.3 * std::cos(2 * g.theta(i));
      }
    }
    return energy_one_constant(SectorField(s, {1, 0}, u), 1.0).total;
  };
  const double e16 = energy_at(16), e32 = energy_at(32), e64 = energy_at(64), e128 = energy_at(128);
  CHECK(std::log2(std::abs(e16 - e32) / std::abs(e32 - e64)) > 1.9);
  CHECK(std::log2(std::abs(e32 - e64) / std::abs(e64 - e128)) > 1.9);
}
