#include "dsg/post_newtonian.hpp"

#include <cmath>
#include <stdexcept>

namespace dsg {

namespace {

Vec3 offset_checked(const Body& b, const Vec3& x) {
  const Vec3 d = x - b.position;
  if (d.squaredNorm() == 0.0)
    throw std::invalid_argument("field point coincides with a body position");
  return d;
}

// Potential of every body except `self` at that body's own position.
double potential_at_body(const std::vector<Body>& bodies, std::size_t self) {
  double u = 0.0;
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    if (b == self) continue;
    const double r = (bodies[self].position - bodies[b].position).norm();
    if (r == 0.0)
      throw std::invalid_argument("two bodies share a position");
    u += bodies[b].mass / r;
  }
  return u;
}

}  // namespace

double newtonian_potential(const std::vector<Body>& bodies, const Vec3& x) {
  double u = 0.0;
  for (const Body& b : bodies) u += b.mass / offset_checked(b, x).norm();
  return u;
}

Vec3 vector_potential(const std::vector<Body>& bodies, const Vec3& x) {
  Vec3 v = Vec3::Zero();
  for (const Body& b : bodies)
    v += b.mass * b.velocity / offset_checked(b, x).norm();
  return v;
}

std::pair<double, double> psi_phi_potentials(const std::vector<Body>& bodies,
                                             const Vec3& x) {
  double psi = 0.0;
  double phi = 0.0;
  for (std::size_t a = 0; a < bodies.size(); ++a) {
    const Vec3 d = offset_checked(bodies[a], x);
    const double r = d.norm();
    const Vec3 n = d / r;
    const double v2 = bodies[a].velocity.squaredNorm();
    const double nv = n.dot(bodies[a].velocity);
    psi += bodies[a].mass * (v2 + potential_at_body(bodies, a)) / r;
    phi += bodies[a].mass / r * (nv * nv - v2);
  }
  return {psi, phi};
}

double gauge_chi(const std::vector<Body>& bodies, const Vec3& x) {
  double chi = 0.0;
  for (const Body& b : bodies) chi += b.mass * offset_checked(b, x).norm();
  return chi;
}

Vec3 chi_time_gradient(const std::vector<Body>& bodies, const Vec3& x) {
  Vec3 out = Vec3::Zero();
  for (const Body& b : bodies) {
    const Vec3 d = offset_checked(b, x);
    const double r = d.norm();
    const Vec3 n = d / r;
    out += b.mass * (-b.velocity + n * n.dot(b.velocity)) / r;
  }
  return out;
}

double chi_second_time(const std::vector<Body>& bodies, const Vec3& x) {
  double out = 0.0;
  for (const Body& b : bodies) {
    const Vec3 d = offset_checked(b, x);
    const double r = d.norm();
    const double nv = d.dot(b.velocity) / r;
    out += b.mass * (b.velocity.squaredNorm() - nv * nv) / r;
  }
  return out;
}

Mat3 chi_hessian(const std::vector<Body>& bodies, const Vec3& x) {
  Mat3 out = Mat3::Zero();
  for (const Body& b : bodies) {
    const Vec3 d = offset_checked(b, x);
    const double r = d.norm();
    out += b.mass * (Mat3::Identity() / r - d * d.transpose() / (r * r * r));
  }
  return out;
}

double raw_h00(const std::vector<Body>& bodies, const Vec3& x) {
  const auto [psi, phi] = psi_phi_potentials(bodies, x);
  return newtonian_potential(bodies, x) + 2.0 * psi + phi;
}

Vec3 raw_h0j(const std::vector<Body>& bodies, const Vec3& x) {
  Vec3 out = Vec3::Zero();
  for (const Body& b : bodies) {
    const Vec3 d = offset_checked(b, x);
    const double r = d.norm();
    const Vec3 n = d / r;
    out -= b.mass * (b.velocity + n * n.dot(b.velocity)) / r;
  }
  return out;
}

PNField assemble_1pn_field(const std::vector<Body>& bodies, const Vec3& x) {
  PNField f;
  f.u = newtonian_potential(bodies, x);
  f.vpot = vector_potential(bodies, x);
  std::tie(f.psi, f.phi) = psi_phi_potentials(bodies, x);
  f.chi = gauge_chi(bodies, x);
  f.h00 = f.u + 2.0 * f.psi;
  f.h0j = -2.0 * f.vpot;
  f.hij = Mat3::Identity() * f.u;
  return f;
}

std::vector<double> iterate_integral_field(const std::vector<Body>& bodies,
                                           const std::vector<Vec3>& grid,
                                           int iterations) {
  if (iterations < 1)
    throw std::invalid_argument("at least one sweep is required");
  for (const Vec3& x : grid)
    for (const Body& b : bodies)
      if ((x - b.position).squaredNorm() == 0.0)
        throw std::invalid_argument("grid touches a body position");

  // Per-body field of the other bodies, refreshed each sweep.
  std::vector<double> h_at(bodies.size(), 0.0);
  for (std::size_t a = 0; a < bodies.size(); ++a)
    h_at[a] = potential_at_body(bodies, a);
  for (int k = 1; k < iterations; ++k) {
    std::vector<double> next(bodies.size(), 0.0);
    for (std::size_t a = 0; a < bodies.size(); ++a)
      for (std::size_t b = 0; b < bodies.size(); ++b) {
        if (b == a) continue;
        const double r = (bodies[a].position - bodies[b].position).norm();
        next[a] += bodies[b].mass *
                   (1.0 + 2.0 * bodies[b].velocity.squaredNorm() +
                    2.0 * h_at[b]) /
                   r;
      }
    h_at = next;
  }

  std::vector<double> out;
  out.reserve(grid.size());
  for (const Vec3& x : grid) {
    double h = 0.0;
    for (std::size_t a = 0; a < bodies.size(); ++a) {
      const double r = (x - bodies[a].position).norm();
      h += bodies[a].mass *
           (1.0 + 2.0 * bodies[a].velocity.squaredNorm() + 2.0 * h_at[a]) / r;
    }
    out.push_back(h);
  }
  return out;
}

IsotropicComparison isotropic_comparison(double m, double r_bar) {
  if (!(r_bar > 0.5 * m))
    throw std::domain_error("isotropic radius must exceed half the mass");
  const double x = m / r_bar;
  IsotropicComparison cmp;
  cmp.ym_h00 = x - 2.0 * x * x;
  const double ratio = (1.0 - 0.5 * x) / (1.0 + 0.5 * x);
  cmp.gr_h00 = 0.5 * (1.0 - ratio * ratio);
  cmp.difference = cmp.ym_h00 - cmp.gr_h00;
  return cmp;
}

double areal_radius_from_isotropic(double m, double r_bar) {
  if (!(r_bar > 0.0)) throw std::domain_error("radius must be positive");
  const double f = 1.0 + 0.5 * m / r_bar;
  return r_bar * f * f;
}

double isotropic_radius(double m, double r) {
  if (!(r > 2.0 * m))
    throw std::domain_error("map is invertible outside twice the mass");
  double rb = r;  // the map shrinks the radius by O(m)
  for (int it = 0; it < 100; ++it) {
    const double f = 1.0 + 0.5 * m / rb;
    const double val = rb * f * f - r;
    const double slope = (1.0 + 0.5 * m / rb) * (1.0 - 0.5 * m / rb);
    const double step = val / slope;
    rb -= step;
    if (std::abs(step) <= 1e-15 * rb) break;
  }
  return rb;
}

}  // namespace dsg
