#include <doctest.h>

#include <cmath>

#include "motifsearch/errors.hpp"
#include "motifsearch/expectation.hpp"
#include "motifsearch/trig.hpp"

using namespace motifsearch;

TEST_SUITE("thermo") {
  TEST_CASE("fixed points of the energy surfaces") {
    CHECK(thermo_energy(Model::tfim, 0.0, 0.0, 0.7) == doctest::Approx(-0.25).epsilon(1e-15));
    // ferromagnetic LMG branch: theta=0, T=2h
    const double h = 0.3;
    CHECK(thermo_energy(Model::lmg, 0.0, 2 * h, h) ==
          doctest::Approx(-(h * h + 0.25) / 2).epsilon(1e-14));
    CHECK(thermo_energy(Model::lmg, 0.0, 2 * h, h) == doctest::Approx(-0.17).epsilon(1e-14));
    CHECK_THROWS_AS(thermo_energy(Model::lmg, 1.0, 1.0, 0.1), Error);
  }

  TEST_CASE("finite-size closed forms converge to the thermodynamic values") {
    const Angles ang{0.35, 1.0};
    const TrigBundle t = TrigBundle::from(ang);
    const double st = std::abs(t.sin_t * t.sin_tp);
    const double bulk_x = t.cos_t * t.cos_t * (t.sin_t - t.sin_tp) / (t.sin_t * t.sin_tp - 1);
    const double err64 = std::abs(expval_translational(ang, 64, Observable::x) - bulk_x);
    const double err128 = std::abs(expval_translational(ang, 128, Observable::x) - bulk_x);
    CHECK(err64 < 10 * std::pow(st, 64));
    CHECK(err128 < 10 * std::pow(st, 128) + 1e-15);
    CHECK(err128 <= err64);
  }

  TEST_CASE("lmg minimiser walks the printed branches") {
    for (int i = 0; i <= 50; ++i) {
      const double h = 1.2 * i / 50;
      const auto r = minimize_lmg_thermo(h);
      const double expect = std::abs(h) <= 0.5 ? -(h * h + 0.25) / 2 : -std::abs(h) / 2;
      CHECK(r.theta == 0.0);
      CHECK(std::abs(r.energy - expect) < 1e-12);
      const double mag = std::abs(2 * h) <= 1 ? 0.5 * std::sqrt(1 - 4 * h * h) : 0.0;
      CHECK(r.magnetisation == doctest::Approx(mag).epsilon(1e-12));
      CHECK(r.magnetisation_minus == doctest::Approx(-mag).epsilon(1e-12));
    }
    CHECK(minimize_lmg_thermo(0.0).energy == doctest::Approx(-0.125).epsilon(1e-15));
    CHECK(minimize_lmg_thermo(1.0).energy == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(minimize_lmg_thermo(1.0).magnetisation == 0.0);
  }

  TEST_CASE("lmg branches join continuously at the critical field") {
    const auto below = minimize_lmg_thermo(0.5 - 1e-9);
    const auto above = minimize_lmg_thermo(0.5 + 1e-9);
    CHECK(std::abs(below.energy - above.energy) < 1e-8);
    CHECK(std::abs(below.magnetisation - above.magnetisation) < 1e-4);
  }

  TEST_CASE("numeric gradient vanishes at the lmg minimiser") {
    for (double h : {0.1, 0.3, 0.45}) {
      const auto r = minimize_lmg_thermo(h);
      const double eps = 1e-6;
      const double t_star = std::sin(r.theta + r.phi);
      auto e = [&](double s, double t) { return thermo_energy(Model::lmg, s, t, h); };
      const double gs = (e(eps, t_star) - e(-eps, t_star)) / (2 * eps);
      const double gt = (e(0.0, t_star + eps) - e(0.0, t_star - eps)) / (2 * eps);
      CHECK(std::abs(gs) < 1e-7);
      CHECK(std::abs(gt) < 1e-7);
    }
  }

  TEST_CASE("tfim minimiser: quartic root and critical field") {
    const auto at0 = minimize_tfim_thermo(0.0);
    CHECK(at0.sin_t == 0.0);
    CHECK(at0.sin_tp == 0.0);
    CHECK(at0.energy == doctest::Approx(-0.25).epsilon(1e-14));

    const double hc = (1 + std::sqrt(2.0)) / 4;
    CHECK(minimize_tfim_thermo(0.3).critical_field == doctest::Approx(hc).epsilon(1e-15));

    for (int i = 0; i <= 20; ++i) {
      const double h = hc * i / 20;
      const auto r = minimize_tfim_thermo(h);
      const double residual = std::abs(h * std::pow(1 + r.sin_t * r.sin_t, 2) - 2 * r.sin_t);
      CHECK(residual < 1e-12);
      CHECK(std::abs(r.sin_t) <= std::sqrt(2.0) - 1 + 1e-12);
    }
  }

  TEST_CASE("magnetisation vanishes above the tfim critical field") {
    const double hc = (1 + std::sqrt(2.0)) / 4;
    for (double h : {hc + 1e-6, 0.7, 1.0, 3.0}) {
      const auto r = minimize_tfim_thermo(h);
      CHECK(r.sin_tp == 1.0);
      CHECK(r.sin_t == doctest::Approx(1 / (4 * h)).epsilon(1e-14));
      CHECK(r.z_expectation == 0.0);
      CHECK(r.energy == doctest::Approx(-h / 2 - 1 / (32 * h)).epsilon(1e-14));
    }
    const auto below = minimize_tfim_thermo(0.5);
    CHECK(below.z_expectation > 0.1);
  }

  TEST_CASE("tfim stationary comparison keeps the lower branch") {
    // just under h_c the quartic branch still wins; just above it disappears
    const double hc = (1 + std::sqrt(2.0)) / 4;
    const auto under = minimize_tfim_thermo(hc - 1e-4);
    CHECK(std::abs(under.sin_tp) < 1.0);
    const auto over = minimize_tfim_thermo(hc + 1e-4);
    CHECK(over.sin_tp == 1.0);
    CHECK(under.energy == doctest::Approx(over.energy).epsilon(1e-3));
  }
}
