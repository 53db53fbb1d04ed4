#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dsg/radiation.hpp"

using namespace dsg;

namespace {

TwoBodyTrajectory rotated(const TwoBodyTrajectory& traj, const Mat3& rot) {
  TwoBodyTrajectory out = traj;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out.x1[k] = rot * traj.x1[k];
    out.x2[k] = rot * traj.x2[k];
  }
  return out;
}

TwoBodyTrajectory translated(const TwoBodyTrajectory& traj, const Vec3& c) {
  TwoBodyTrajectory out = traj;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out.x1[k] = traj.x1[k] + c;
    out.x2[k] = traj.x2[k] + c;
  }
  return out;
}

}  // namespace

TEST_CASE("second-moment matrix and its trace-free reduction") {
  CHECK(quadrupole_moment({{1.0, Vec3::Zero(), Vec3::Zero()}})
            .cwiseAbs()
            .maxCoeff() == 0.0);

  const Mat3 q = quadrupole_moment({{1.0, Vec3(1, 0, 0), Vec3::Zero()}});
  CHECK(q(0, 0) == 1.0);
  CHECK(q.cwiseAbs().sum() == 1.0);  // single nonzero entry

  const Mat3 reduced = reduced_quadrupole(q);
  CHECK(std::abs(reduced.trace()) <= 1e-12);
  CHECK(reduced(0, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(reduced(1, 1) == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("trajectory builder closes the orbit and conserves momentum") {
  const TwoBodyTrajectory traj = kepler_trajectory(0.6, 0.4, 1.0, 0.3, 256);
  REQUIRE(traj.times.size() == 256);
  CHECK(traj.periodic);

  // Samples span one period: the next sample after the last is the first.
  const double m = traj.m1 + traj.m2;
  const double period = 2.0 * M_PI * std::sqrt(1.0 / m);
  CHECK(traj.dt == doctest::Approx(period / 256).epsilon(1e-12));

  // Center of mass pinned at the origin, periapsis distance a(1 - e).
  for (std::size_t k = 0; k < traj.times.size(); k += 17) {
    CHECK((traj.m1 * traj.x1[k] + traj.m2 * traj.x2[k]).norm() <= 1e-12);
    const double r = (traj.x2[k] - traj.x1[k]).norm();
    CHECK(r >= 0.7 * (1.0 - 1e-9));
    CHECK(r <= 1.3 * (1.0 + 1e-9));
  }
  CHECK((traj.x2[0] - traj.x1[0]).norm() == doctest::Approx(0.7));

  CHECK_THROWS_AS(kepler_trajectory(1, 1, 1, 1.2, 256),
                  std::invalid_argument);
  CHECK_THROWS_AS(kepler_trajectory(1, 1, -1, 0.2, 256),
                  std::invalid_argument);

  // Vis-viva at a sampled point using finite-difference velocity.
  const std::size_t k = 40;
  const Vec3 vrel = (traj.x2[k + 1] - traj.x1[k + 1] - traj.x2[k - 1] +
                     traj.x1[k - 1]) /
                    (2.0 * traj.dt);
  const double r = (traj.x2[k] - traj.x1[k]).norm();
  CHECK(vrel.squaredNorm() ==
        doctest::Approx(m * (2.0 / r - 1.0)).epsilon(1e-3));
}

TEST_CASE("numeric power matches the closed form across eccentricities") {
  for (double e : {0.0, 0.3, 0.6}) {
    CAPTURE(e);
    const double m1 = 0.5, m2 = 0.5, a = 1.0;
    const TwoBodyTrajectory traj = kepler_trajectory(m1, m2, a, e, 512);
    const PowerSeries series = radiated_power_numeric(traj);
    const double closed = quadrupole_closed_form_power(m1, m2, a, e);
    CHECK(series.average < 0.0);
    CHECK(std::abs(series.average - closed) <= 0.01 * std::abs(closed));

    // Every sample is a loss, and the series covers the whole orbit.
    CHECK(series.power.size() == 512);
    for (double p : series.power) CHECK(p <= 0.0);

    // The pointwise two-body form averages to the same number.
    const double pm = peters_matthews_average(traj);
    CHECK(std::abs(pm - closed) <= 0.01 * std::abs(closed));
  }
}

TEST_CASE("halving the step moves the average by less than a part in 1e3") {
  const double m1 = 0.3, m2 = 0.7, a = 2.0, e = 0.5;
  const double coarse =
      radiated_power_numeric(kepler_trajectory(m1, m2, a, e, 512)).average;
  const double fine =
      radiated_power_numeric(kepler_trajectory(m1, m2, a, e, 1024)).average;
  CHECK(std::abs(fine - coarse) <= 1e-3 * std::abs(fine));

  CHECK_THROWS_AS(radiated_power_numeric(kepler_trajectory(m1, m2, a, e, 32)),
                  std::invalid_argument);
}

TEST_CASE("pointwise loss formula: rest, circular, eccentric cross-check") {
  CHECK(peters_matthews_power(1.0, 2.0, 3.0, 0.0, 0.0) == 0.0);

  // Circular orbit: rdot = 0 and v^2 = m / r.
  const double m1 = 0.5, m2 = 0.5, r = 1.0;
  const double m = m1 + m2, mu = m1 * m2 / m;
  const double v = std::sqrt(m / r);
  CHECK(peters_matthews_power(m1, m2, r, v, 0.0) ==
        doctest::Approx(-(8.0 / 15.0) * 12.0 * mu * mu * m * m * v * v /
                        std::pow(r, 4))
            .epsilon(1e-15));

  // e = 0.5 ellipse: orbit-averaged pointwise form vs stencil pipeline.
  const TwoBodyTrajectory traj = kepler_trajectory(0.4, 0.6, 1.5, 0.5, 512);
  const double pm = peters_matthews_average(traj);
  const double numeric = radiated_power_numeric(traj).average;
  CHECK(std::abs(pm - numeric) <= 0.01 * std::abs(numeric));
}

TEST_CASE("period decay formula: enhancement factor and scaling law") {
  CHECK(eccentricity_enhancement(0.0) == 1.0);
  CHECK(eccentricity_enhancement(0.5) ==
        doctest::Approx(std::pow(0.75, -3.5) *
                        (1.0 + 73.0 / 96.0 + 37.0 / 1536.0))
            .epsilon(1e-15));
  CHECK_THROWS_AS(eccentricity_enhancement(1.0), std::domain_error);

  // Log-log slope in the period is exactly -5/3.
  KeplerBinary b1{2.8e30, 2.8e30, 27000.0, 0.6};
  KeplerBinary b2 = b1;
  b2.p_b *= 10.0;
  const double slope = std::log(std::abs(orbital_speedup(b2)) /
                                std::abs(orbital_speedup(b1))) /
                       std::log(b2.p_b / b1.p_b);
  CHECK(slope == doctest::Approx(-5.0 / 3.0).epsilon(1e-6));

  CHECK_THROWS_AS(orbital_speedup({1.0, 1.0, 1.0, 1.5}), std::domain_error);
}

TEST_CASE("binary pulsar parameters reproduce the classic decay rate") {
  const double sun_kg = kSunGM / kGravConstSI;
  const KeplerBinary pulsar{1.4 * sun_kg, 1.4 * sun_kg, 27907.0, 0.617};
  const double pdot = orbital_speedup(pulsar);
  CHECK(pdot < 0.0);
  CHECK(std::abs(pdot - (-2.4e-12)) <= 0.2 * 2.4e-12);
}

TEST_CASE("closed-form decay equals the energy-balance route exactly") {
  const double m1 = 0.45, m2 = 0.85, a = 3.0, e = 0.37;
  const KeplerBinary geo{
      m1, m2, 2.0 * M_PI * std::sqrt(std::pow(a, 3) / (m1 + m2)), e};
  const double direct = orbital_speedup(geo, 1.0, 1.0);
  const double balanced = energy_balance_speedup(m1, m2, a, e);
  CHECK(direct == doctest::Approx(balanced).epsilon(1e-12));

  // And within 1% when the energy loss comes from the stencil pipeline.
  const TwoBodyTrajectory traj = kepler_trajectory(m1, m2, a, e, 512);
  const double numeric = radiated_power_numeric(traj).average;
  const double mu = m1 * m2 / (m1 + m2);
  const double via_numeric =
      3.0 * geo.p_b * a * numeric / (mu * (m1 + m2));
  CHECK(std::abs(via_numeric - direct) <= 0.01 * std::abs(direct));
}

TEST_CASE("monopole and dipole stay silent; quadrupole radiates") {
  const TwoBodyTrajectory traj = kepler_trajectory(0.3, 0.7, 1.0, 0.4, 512);
  const MomentContent mc = moment_content(traj);
  CHECK(mc.monopole_rate == 0.0);
  CHECK(mc.quadrupole_rate > 0.1);
  CHECK(mc.dipole_rate <= 1e-9 * mc.quadrupole_rate);

  // Center-of-mass frame: the dipole itself starts at zero.
  CHECK((traj.m1 * traj.x1[0] + traj.m2 * traj.x2[0]).norm() <= 1e-14);

  // An artificially pinned companion breaks momentum conservation and the
  // detector reports it.
  TwoBodyTrajectory broken = traj;
  for (Vec3& x : broken.x2) x = Vec3(0.5, 0.0, 0.0);
  const MomentContent bad = moment_content(broken);
  CHECK(bad.dipole_rate > 1e-3);
}

TEST_CASE("scalar outputs are unchanged by rotations and translations") {
  const TwoBodyTrajectory traj = kepler_trajectory(0.5, 0.5, 1.2, 0.3, 512);
  const double base = radiated_power_numeric(traj).average;

  const Mat3 rot =
      Eigen::AngleAxisd(0.7, Vec3(1, 2, 3).normalized()).toRotationMatrix();
  const double turned = radiated_power_numeric(rotated(traj, rot)).average;
  CHECK(std::abs(turned - base) <= 1e-10 * std::abs(base));

  const double shifted =
      radiated_power_numeric(translated(traj, Vec3(2.0, -1.0, 0.5))).average;
  CHECK(std::abs(shifted - base) <= 1e-7 * std::abs(base));

  // Trace-free at every sample, rotated or not.
  for (std::size_t k = 0; k < traj.times.size(); k += 31) {
    const Mat3 q = quadrupole_moment(
        {{traj.m1, traj.x1[k], Vec3::Zero()},
         {traj.m2, traj.x2[k], Vec3::Zero()}});
    CHECK(std::abs(reduced_quadrupole(q).trace()) <= 1e-12);
    CHECK(std::abs(reduced_quadrupole(rot * q * rot.transpose()).trace()) <=
          1e-12);
  }
}

TEST_CASE("far-zone amplitude falls off as one over distance, retarded") {
  const TwoBodyTrajectory traj = kepler_trajectory(0.5, 0.5, 1.0, 0.2, 512);
  const double tau = 64 * traj.dt;  // retarded phase, exact sample multiple

  const double r1 = 50.0, r2 = 100.0;
  const Mat3 h1 = wave_strain(traj, r1, r1 + tau);
  const Mat3 h2 = wave_strain(traj, r2, r2 + tau);
  CHECK((r1 * h1 - r2 * h2).cwiseAbs().maxCoeff() <=
        1e-12 * (r1 * h1).cwiseAbs().maxCoeff());

  CHECK(std::abs(h1.trace()) <= 1e-12 * h1.cwiseAbs().maxCoeff());
  CHECK((h1 - h1.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK_THROWS_AS(wave_strain(traj, -1.0, 0.0), std::domain_error);
}
