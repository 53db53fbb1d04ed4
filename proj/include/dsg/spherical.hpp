#pragma once

#include <functional>
#include <vector>

#include "dsg/field.hpp"
#include "dsg/tensors.hpp"

namespace dsg {

// Static spherically symmetric solution around a point mass (geometric
// units): G_00 = -(1 - 2M/r), spatial block delta_ij + 2M x_i x_j / r^3
// (radial stretch 1 + 2M/r), H = 0.
struct SphericalSolution {
  double mass = 0.0;

  double g00_radial(double r) const { return -(1.0 - 2.0 * mass / r); }
  double grr_radial(double r) const { return 1.0 + 2.0 * mass / r; }

  Mat4 metric(const Vec4& x) const;
  Mat4 metric_deriv(const Vec4& x, int m) const;

  // Potential closure (exact derivatives included) for the field machinery.
  Potential potential() const;
};

SphericalSolution solve_spherical(double mass);

// 3D Laplacian finite-difference stencils of order 2 or 4.
double laplacian3(const std::function<double(const Vec3&)>& f, const Vec3& p,
                  double h, int order);

struct RefinementStudy {
  std::vector<double> steps;
  std::vector<double> residuals;
  double fitted_order = 0.0;  // least-squares slope of log res vs log step
};

// Evaluate the harmonic-gauge vacuum equations (Laplacians of the time-time
// component and of the radial stretch profile) at an off-origin point over a
// sequence of stencil steps.
RefinementStudy spherical_harmonic_study(double mass, const Vec3& point,
                                         const std::vector<double>& steps,
                                         int order);

double fitted_order(const std::vector<double>& steps,
                    const std::vector<double>& residuals);

struct RadialComparison {
  double additive;    // 1 + 2M/r
  double geometric;   // 1 / (1 - 2M/r)
  double difference;  // geometric - additive
};

RadialComparison radial_potential_comparison(double mass, double r);

// Fractional frequency shift z = nu_emit/nu_obs - 1 between static
// observers; pass r_obs = infinity for an observer at rest far away.
double gravitational_redshift(double mass, double r_emit, double r_obs);

}  // namespace dsg
