#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dsg/cosmology.hpp"

using namespace dsg;

namespace {

constexpr double kPi = 3.14159265358979323846;

CosmoParams generic_desitter() {
  CosmoParams par;
  par.a0 = 1.3;
  par.t0 = 2.0;
  par.rho0 = 0.02;
  par.c0 = 0.01;
  par.mode = Mode::deSitter;
  return par;
}

CosmoParams generic_poincare() {
  CosmoParams par;
  par.a0 = 1.0;
  par.t0 = 1.0;
  par.rho0 = 0.05;
  par.b0 = 1.3;
  par.mode = Mode::poincare;
  return par;
}

}  // namespace

TEST_CASE("closed-form derivatives agree with finite differences") {
  for (bool poincare : {false, true}) {
    CosmoParams par = poincare ? generic_poincare() : generic_desitter();
    if (poincare) par.a0 = 1.4;  // exercise the general normalization
    for (double t : {0.7 * par.t0, par.t0, 3.1 * par.t0}) {
      CAPTURE(poincare);
      CAPTURE(t);
      const double h = 1e-5 * t;
      const CosmoState st = closed_form_state(par, t);
      const CosmoState lo = closed_form_state(par, t - h);
      const CosmoState hi = closed_form_state(par, t + h);
      CHECK(st.bdot == doctest::Approx((hi.b - lo.b) / (2 * h)).epsilon(1e-8));
      CHECK(st.bddot ==
            doctest::Approx((hi.b - 2 * st.b + lo.b) / (h * h)).epsilon(1e-4));
      CHECK(st.cdot == doctest::Approx((hi.c - lo.c) / (2 * h)).epsilon(1e-8));
      CHECK(st.rhodot ==
            doctest::Approx((hi.rho - lo.rho) / (2 * h)).epsilon(1e-8));
      CHECK(st.adot == doctest::Approx(par.a0 / par.t0));
      CHECK(st.a == doctest::Approx(par.a0 * t / par.t0));
    }
  }
}

TEST_CASE("rank-3 amplitude and fluid identities vanish on every closed form") {
  for (bool poincare : {false, true}) {
    CosmoParams par = poincare ? generic_poincare() : generic_desitter();
    for (double t : {0.5 * par.t0, par.t0, 2.0 * par.t0, 7.3 * par.t0}) {
      CAPTURE(poincare);
      CAPTURE(t);
      const CosmoResiduals res = closed_form_residuals(par, t);
      CHECK(std::abs(res.abs_val[3]) <= 1e-12);  // space-space amplitude
      CHECK(std::abs(res.abs_val[4]) <= 1e-12);  // fluid law
      CHECK(res.rel[4] <= 1e-12);
    }
  }
}

TEST_CASE("energy-constraint residual matches its analytic profile") {
  SUBCASE("curved mode") {
    const CosmoParams par = generic_desitter();
    for (double t : {0.8, 2.0, 5.0, 11.0}) {
      const double t0 = par.t0;
      const double expected =
          2.0 *
          (3.0 * par.c0 * t + kPi * par.rho0 * t * std::pow(t0, 5) -
           2.0 * kPi * par.rho0 * t * std::pow(t0, 4) +
           kPi * par.rho0 * std::pow(t0, 5)) /
          (t * t * t0);
      const CosmoResiduals res = closed_form_residuals(par, t);
      CHECK(res.abs_val[0] == doctest::Approx(expected).epsilon(1e-10));
    }
  }
  SUBCASE("flat mode, general scale normalization") {
    CosmoParams par = generic_poincare();
    par.a0 = 1.5;
    for (double t : {1.0, 3.0, 9.0}) {
      const double a04 = std::pow(par.a0, 4);
      const double expected = -8.0 * kPi * par.rho0 * std::pow(par.t0, 4) *
                              (par.a0 - 1.0) * (par.a0 + 1.0) *
                              (par.a0 * par.a0 + 1.0) / (a04 * t * t * t * t);
      const CosmoResiduals res = closed_form_residuals(par, t);
      CHECK(res.abs_val[0] == doctest::Approx(expected).epsilon(1e-10));
    }
  }
  SUBCASE("flat mode with unit scale satisfies the constraint exactly") {
    const CosmoParams par = generic_poincare();  // a0 = 1
    for (double t : {0.5, 1.0, 4.0, 20.0}) {
      const CosmoResiduals res = closed_form_residuals(par, t);
      CHECK(std::abs(res.abs_val[0]) <= 1e-12);
      CHECK(res.rel[0] <= 1e-12);
    }
  }
}

TEST_CASE("time-space amplitude residual matches its analytic profile") {
  SUBCASE("curved mode") {
    const CosmoParams par = generic_desitter();
    for (double t : {1.0, 2.0, 6.0}) {
      const double t0 = par.t0;
      const double t03 = t0 * t0 * t0;
      const double expected =
          -2.0 * par.a0 * par.a0 *
          (3.0 * par.c0 * t * t * t +
           kPi * par.rho0 * t * t * t * std::pow(t0, 5) -
           2.0 * kPi * par.rho0 * t * t * t * std::pow(t0, 4) +
           kPi * par.rho0 * t * t * std::pow(t0, 5) +
           3.0 * kPi * par.rho0 * t * std::pow(t0, 5) +
           4.0 * kPi * par.rho0 * std::pow(t0, 5)) /
          (3.0 * t * t03);
      const CosmoResiduals res = closed_form_residuals(par, t);
      CHECK(res.abs_val[2] == doctest::Approx(expected).epsilon(1e-10));
    }
  }
  SUBCASE("flat mode") {
    CosmoParams par = generic_poincare();
    par.a0 = 1.2;
    for (double t : {1.0, 5.0}) {
      const double expected = -8.0 * kPi * par.rho0 * par.t0 * par.t0 /
                              (3.0 * par.a0 * par.a0 * t);
      const CosmoResiduals res = closed_form_residuals(par, t);
      CHECK(res.abs_val[2] == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("empty curved universe: constant conformal amplitude") {
  CosmoParams par;
  par.mode = Mode::deSitter;
  par.rho0 = 0.0;
  par.c0 = 0.0;
  par.a0 = 1.7;
  par.t0 = 1.3;
  for (double t : {0.4, 1.3, 5.0}) {
    const CosmoState st = closed_form_state(par, t);
    CHECK(st.b == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(st.c) <= 1e-14);
    const CosmoResiduals res = closed_form_residuals(par, t);
    CHECK(std::abs(res.abs_val[0]) <= 1e-13);
    CHECK(std::abs(res.abs_val[2]) <= 1e-13);
    // The pressure equation keeps a curvature remnant -1/t^2 even here.
    CHECK(res.abs_val[1] == doctest::Approx(-1.0 / (t * t)).epsilon(1e-12));
  }
}

TEST_CASE("curved closed form ignores the flat-mode amplitude input") {
  CosmoParams a = generic_desitter();
  CosmoParams b = a;
  b.b0 = 42.0;
  const CosmoState sa = closed_form_state(a, 3.0);
  const CosmoState sb = closed_form_state(b, 3.0);
  CHECK(sa.b == sb.b);
  CHECK(sa.c == sb.c);
}

TEST_CASE("flat closed form passes through its initial amplitude") {
  CosmoParams par = generic_poincare();
  par.a0 = 2.0;
  par.b0 = 0.8;
  const CosmoState st = closed_form_state(par, par.t0);
  CHECK(st.b == doctest::Approx(par.b0).epsilon(1e-14));
}

TEST_CASE("time-space amplitude decreases linearly in the curved mode") {
  const CosmoParams par = generic_desitter();
  const double cc = (-12.0 * par.c0 +
                     8.0 * kPi * par.rho0 * std::pow(par.t0, 4)) /
                    (3.0 * par.t0);
  const CosmoState s1 = closed_form_state(par, 1.0);
  const CosmoState s2 = closed_form_state(par, 4.0);
  CHECK(s1.cdot == doctest::Approx(-cc / 4.0).epsilon(1e-13));
  CHECK(s2.cdot == doctest::Approx(-cc / 4.0).epsilon(1e-13));
  CHECK((s2.c - s1.c) / 3.0 == doctest::Approx(-cc / 4.0).epsilon(1e-12));
}

TEST_CASE("alternative fluid law leaves a reported residual") {
  const CosmoParams par = generic_desitter();
  const CosmoState st = closed_form_state(par, 3.0);
  const CosmoResiduals res = closed_form_residuals(par, 3.0);
  const double p = st.rho / 3.0;
  const double expected = st.rhodot + 3.0 * p * st.c * std::pow(st.a, 4);
  CHECK(res.matter_alt == doctest::Approx(expected).epsilon(1e-13));
  CHECK(std::abs(res.matter_alt) > 1e-6);  // genuinely different law
  CHECK(std::abs(res.abs_val[4]) <= 1e-13);
}

TEST_CASE("integrator tracks the flat closed form") {
  const CosmoParams par = generic_poincare();  // a0 = 1: constraint exact
  const auto states = integrate_cosmology(par, par.t0, 10.0 * par.t0, 19);
  REQUIRE(states.size() == 19);
  for (const CosmoState& st : states) {
    const CosmoState ref = closed_form_state(par, st.t);
    CAPTURE(st.t);
    CHECK(std::abs(st.b - ref.b) <= 1e-6);
    CHECK(std::abs(st.rho - ref.rho) <= 1e-6);
    CHECK(std::abs(st.bdot - ref.bdot) <= 1e-6);
  }
}

TEST_CASE("integrator keeps the empty curved universe static") {
  CosmoParams par;
  par.mode = Mode::deSitter;
  par.rho0 = 0.0;
  par.c0 = 0.0;
  const auto states = integrate_cosmology(par, 1.0, 8.0, 8);
  for (const CosmoState& st : states) {
    CHECK(std::abs(st.b - 1.0) <= 1e-9);
    CHECK(std::abs(st.c) <= 1e-9);
    CHECK(std::abs(st.d) <= 1e-9);
  }
}

TEST_CASE("integrated states satisfy the evolved equations") {
  const CosmoParams par = generic_desitter();
  const auto states = integrate_cosmology(par, par.t0, 5.0 * par.t0, 9);
  for (const CosmoState& st : states) {
    CAPTURE(st.t);
    const double a2 = st.a * st.a;
    const double cddot = (-3.0 * st.cdot * st.adot * st.a +
                          3.0 * st.adot * st.adot * st.c +
                          st.adot * st.a * st.b - st.a * st.adot +
                          st.bdot * a2 + st.c * a2) /
                         a2;
    const double dddot = (st.adot * st.adot * st.d -
                          st.a * st.adot * st.ddot + a2 * st.b * st.b * st.d) /
                         a2;
    const CosmoResiduals res = state_residuals(st, cddot, dddot);
    CHECK(res.rel[0] <= 1e-8);  // energy constraint enforced by construction
    CHECK(res.rel[2] <= 1e-8);
    CHECK(res.rel[3] <= 1e-8);
    CHECK(res.rel[4] <= 1e-10);
  }
}

TEST_CASE("late-time apparent expansion accelerates in the curved mode") {
  CosmoParams par;
  par.mode = Mode::deSitter;
  par.a0 = 1.2;
  par.t0 = 1.0;
  par.rho0 = 0.01;
  par.c0 = 0.0;
  const double cc =
      (-12.0 * par.c0 + 8.0 * kPi * par.rho0 * std::pow(par.t0, 4)) /
      (3.0 * par.t0);
  REQUIRE(cc > 0.0);
  const double limit = 2.0 * std::sqrt(cc / 12.0) * par.a0 / par.t0;
  const CosmoState st = closed_form_state(par, 1e3 * par.t0);
  const ApparentQuantities q = apparent(st);
  CHECK(q.sddot > 0.0);
  CHECK(std::abs(q.sddot - limit) <= 2e-2 * limit);
}

TEST_CASE("late-time apparent expansion coasts in the flat mode") {
  CosmoParams par = generic_poincare();
  const ApparentQuantities early = apparent(closed_form_state(par, 10.0));
  const ApparentQuantities late = apparent(closed_form_state(par, 1e4));
  CHECK(std::abs(late.sddot) < 1e-10);
  CHECK(std::abs(late.sddot) < 1e-3 * std::abs(early.sddot));
  // b relaxes to one with a 1/t tail of fixed strength.
  const double kk = (par.b0 +
                     8.0 * kPi * par.rho0 * par.t0 * par.t0 /
                         (3.0 * std::pow(par.a0, 4)) -
                     1.0) *
                    par.t0;
  const CosmoState s1 = closed_form_state(par, 1e3);
  const CosmoState s2 = closed_form_state(par, 1e5);
  CHECK(std::abs(s2.b - 1.0) < std::abs(s1.b - 1.0));
  CHECK(1e5 * (s2.b - 1.0) == doctest::Approx(kk).epsilon(1e-4));
}

TEST_CASE("apparent rate combines conformal and coordinate pieces") {
  CosmoState st;
  st.t = 2.0;
  st.a = 3.0;
  st.adot = 1.5;
  st.b = 4.0;
  st.bdot = 0.8;
  st.bddot = 0.1;
  const ApparentQuantities q = apparent(st);
  CHECK(q.hubble == doctest::Approx(0.5));
  CHECK(q.apparent_hubble == doctest::Approx(0.8 / 8.0 + 0.5));
  CHECK(q.s == doctest::Approx(6.0));
  CHECK(q.sdot == doctest::Approx(0.8 / 4.0 * 3.0 + 2.0 * 1.5));
  const double betaddot = 0.1 / 4.0 - 0.64 / 32.0;
  CHECK(q.sddot == doctest::Approx(betaddot * 3.0 + 2.0 * 0.2 * 1.5));
}

TEST_CASE("domain errors are rejected") {
  const CosmoParams par = generic_desitter();
  CHECK_THROWS_AS(closed_form_state(par, 0.0), std::domain_error);
  CHECK_THROWS_AS(closed_form_state(par, -1.0), std::domain_error);
  CHECK_THROWS_AS(integrate_cosmology(par, 2.0, 1.0, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate_cosmology(par, 1.0, 2.0, 1),
                  std::invalid_argument);
  CosmoState bad;
  bad.b = -1.0;
  bad.a = 1.0;
  CHECK_THROWS_AS(apparent(bad), std::domain_error);
}
