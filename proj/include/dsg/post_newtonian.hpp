#pragma once

#include <utility>
#include <vector>

#include "dsg/tensors.hpp"

namespace dsg {

// Compact, slowly moving, spherically symmetric source for the weak-field
// expansion; moves as a test particle, so internal structure never enters.
struct Body {
  double mass = 1.0;  // geometric units
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();  // |v| < 1
};

// Weak-field potentials and assembled field components at one point, in the
// gauge where the displayed components take their standard form. The field
// components relate to the displayed metric through g = eta + 2h.
struct PNField {
  double u = 0.0;            // sum_a m_a / r_a
  Vec3 vpot = Vec3::Zero();  // sum_a m_a v_aj / r_a
  double psi = 0.0;          // sum_a m_a (v_a^2 + u_other(x_a)) / r_a
  double phi = 0.0;          // sum_a (m_a/r_a)[(n.v_a)^2 - v_a^2]
  double chi = 0.0;          // sum_a m_a r_a (gauge potential)

  double h00 = 0.0;          // u + 2 psi
  Vec3 h0j = Vec3::Zero();   // -2 vpot
  Mat3 hij = Mat3::Zero();   // delta_ij u

  double g00() const { return -1.0 + 2.0 * h00; }
  Vec3 g0j() const { return 2.0 * h0j; }
  Mat3 gij() const { return Mat3::Identity() + 2.0 * hij; }
};

// Scalar potential U(x); throws std::invalid_argument at a body position.
double newtonian_potential(const std::vector<Body>& bodies, const Vec3& x);

// Momentum-density potential V_j(x).
Vec3 vector_potential(const std::vector<Body>& bodies, const Vec3& x);

// Second-order scalar potentials (Psi, Phi). Psi carries each body's kinetic
// term plus the potential of the other bodies evaluated at the body itself
// (self-energy excluded).
std::pair<double, double> psi_phi_potentials(const std::vector<Body>& bodies,
                                             const Vec3& x);

// Gauge potential chi = sum m_a |x - x_a| and its exact derivatives for
// bodies drifting at constant velocity.
double gauge_chi(const std::vector<Body>& bodies, const Vec3& x);
Vec3 chi_time_gradient(const std::vector<Body>& bodies, const Vec3& x);
double chi_second_time(const std::vector<Body>& bodies, const Vec3& x);
Mat3 chi_hessian(const std::vector<Body>& bodies, const Vec3& x);

// Field components before the chi gauge: the time-time component still
// carries Phi and the time-space component its longitudinal projection.
double raw_h00(const std::vector<Body>& bodies, const Vec3& x);
Vec3 raw_h0j(const std::vector<Body>& bodies, const Vec3& x);

// All potentials and gauge-fixed components at x.
PNField assemble_1pn_field(const std::vector<Body>& bodies, const Vec3& x);

// Fixed-point sweeps of the integral form of the time-time equation, seeded
// with the static potential: each sweep re-evaluates every body's effective
// source strength m(1 + 2v^2 + 2h_other) from the previous sweep. One sweep
// reproduces assemble_1pn_field's h00 on the grid; further sweeps change it
// only at sixth order in the expansion parameter. Throws if iterations < 1
// or the grid touches a body position.
std::vector<double> iterate_integral_field(const std::vector<Body>& bodies,
                                           const std::vector<Vec3>& grid,
                                           int iterations);

// Quadratic-order time-time potentials at the same isotropic radius: this
// theory's value, the standard curved-space value, and their difference,
// which is a pure coordinate effect of the radius redefinition.
struct IsotropicComparison {
  double ym_h00 = 0.0;        // x - 2 x^2 with x = m / r_bar
  double gr_h00 = 0.0;        // exact ((1 - x/2)/(1 + x/2))^2 form
  double difference = 0.0;    // ym_h00 - gr_h00, -> -x^2 as x -> 0
};
IsotropicComparison isotropic_comparison(double m, double r_bar);

// Radius map r = r_bar (1 + m / 2 r_bar)^2 and its numeric inverse.
double areal_radius_from_isotropic(double m, double r_bar);
double isotropic_radius(double m, double r);

}  // namespace dsg
