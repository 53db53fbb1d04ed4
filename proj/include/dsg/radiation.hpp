#pragma once

#include <vector>

#include "dsg/post_newtonian.hpp"
#include "dsg/tensors.hpp"
#include "dsg/units.hpp"

namespace dsg {

// Bound two-body system described by masses, orbital period, and
// eccentricity. Units are the caller's; the speedup formula takes the
// gravitational constant and light speed explicitly.
struct KeplerBinary {
  double m_p = 1.0;  // primary mass
  double m_c = 1.0;  // companion mass
  double p_b = 1.0;  // orbital period
  double e = 0.0;    // eccentricity in [0, 1)
};

// Uniformly sampled two-body motion. `periodic` marks a closed orbit
// sampled over exactly one period (the last sample precedes the first by
// one step), letting stencils wrap around.
struct TwoBodyTrajectory {
  double m1 = 1.0;
  double m2 = 1.0;
  double dt = 0.0;
  bool periodic = false;
  std::vector<double> times;
  std::vector<Vec3> x1;
  std::vector<Vec3> x2;
};

// One closed orbit of the relative Kepler ellipse split about the center of
// mass (geometric units, orbital plane z = 0, periapsis on +x at t = 0).
TwoBodyTrajectory kepler_trajectory(double m1, double m2, double semi_major,
                                    double ecc, int samples);

// Second moment of the mass distribution q_ij = sum m x_i x_j and its
// trace-free reduction Q = q - (tr q / 3) I.
Mat3 quadrupole_moment(const std::vector<Body>& bodies);
Mat3 reduced_quadrupole(const Mat3& q);

struct PowerSeries {
  std::vector<double> times;
  std::vector<double> power;  // instantaneous -(1/5) <dddQ_jk dddQ_jk>
  double average = 0.0;
};

// Energy-loss rate from third time derivatives of the reduced quadrupole,
// taken by 7-point central differences on the uniform samples. Requires at
// least 64 samples; non-periodic trajectories average over the interior
// window only.
PowerSeries radiated_power_numeric(const TwoBodyTrajectory& traj);

// Pointwise two-body energy-loss rate from separation r, relative speed v,
// and radial speed rdot; orbit averaging is the caller's job.
double peters_matthews_power(double m1, double m2, double r, double v,
                             double rdot);

// Time average of the pointwise form over a sampled trajectory, with
// relative velocities from 5-point differences.
double peters_matthews_average(const TwoBodyTrajectory& traj);

// Orbit-averaged closed form for a Kepler ellipse (geometric units).
double quadrupole_closed_form_power(double m1, double m2, double semi_major,
                                    double e);

// (1 - e^2)^{-7/2} (1 + 73 e^2 / 24 + 37 e^4 / 96).
double eccentricity_enhancement(double e);

// Dimensionless orbital period decay rate of a binary. Defaults evaluate SI
// inputs (masses in kg, period in seconds); pass 1, 1 for geometric units.
double orbital_speedup(const KeplerBinary& b,
                       double grav_const = kGravConstSI,
                       double light_speed = kSpeedOfLight);

// Period decay implied by the closed-form energy loss plus the third-law
// relation between period and orbit size (geometric units).
double energy_balance_speedup(double m1, double m2, double semi_major,
                              double e);

struct MomentContent {
  double monopole_rate = 0.0;    // max |d/dt sum m|
  double dipole_rate = 0.0;      // max |d^2/dt^2 sum m x|
  double quadrupole_rate = 0.0;  // max Frobenius norm of dddQ
};

// Radiative content of the lowest moments along a trajectory: the monopole
// and dipole rates vanish for mass- and momentum-conserving systems, so
// the quadrupole is the leading radiative moment.
MomentContent moment_content(const TwoBodyTrajectory& traj);

// Far-zone wave amplitude (2 / distance) * ddQ evaluated at the retarded
// time t - distance, linearly interpolated between samples.
Mat3 wave_strain(const TwoBodyTrajectory& traj, double distance, double t);

}  // namespace dsg
