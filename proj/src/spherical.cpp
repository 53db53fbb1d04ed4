#include "dsg/spherical.hpp"

#include <cmath>
#include <stdexcept>

namespace dsg {

Mat4 SphericalSolution::metric(const Vec4& x) const {
  const double r = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  if (r <= 0.0) throw std::domain_error("metric evaluated at the origin");
  Mat4 g = Mat4::Zero();
  g(0, 0) = g00_radial(r);
  const double q = 2.0 * mass / (r * r * r);
  for (int i = 1; i < 4; ++i) {
    g(i, i) = 1.0;
    for (int j = 1; j < 4; ++j) g(i, j) += q * x[i] * x[j];
  }
  return g;
}

Mat4 SphericalSolution::metric_deriv(const Vec4& x, int m) const {
  Mat4 d = Mat4::Zero();
  if (m == 0) return d;
  const double r = std::sqrt(x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
  const double r3 = r * r * r;
  const double r5 = r3 * r * r;
  const double xk = x[m];
  d(0, 0) = -2.0 * mass * xk / r3;
  for (int i = 1; i < 4; ++i)
    for (int j = 1; j < 4; ++j) {
      const double di = (m == i) ? 1.0 : 0.0;
      const double dj = (m == j) ? 1.0 : 0.0;
      d(i, j) = 2.0 * mass *
                ((di * x[j] + dj * x[i]) / r3 - 3.0 * x[i] * x[j] * xk / r5);
    }
  return d;
}

Potential SphericalSolution::potential() const {
  Potential p;
  const SphericalSolution self = *this;
  p.g = [self](const Vec4& x) { return self.metric(x); };
  p.dg = [self](const Vec4& x, int m) { return self.metric_deriv(x, m); };
  return p;
}

SphericalSolution solve_spherical(double mass) {
  if (mass < 0.0) throw std::invalid_argument("mass must be non-negative");
  return SphericalSolution{mass};
}

double laplacian3(const std::function<double(const Vec3&)>& f, const Vec3& p,
                  double h, int order) {
  const auto at = [&](int axis, double d) {
    Vec3 q = p;
    q[axis] += d;
    return f(q);
  };
  double lap = 0.0;
  if (order == 2) {
    const double c = f(p);
    for (int i = 0; i < 3; ++i)
      lap += (at(i, h) - 2.0 * c + at(i, -h)) / (h * h);
    return lap;
  }
  if (order != 4) throw std::invalid_argument("stencil order must be 2 or 4");
  const double c = f(p);
  for (int i = 0; i < 3; ++i)
    lap += (-at(i, 2 * h) + 16.0 * at(i, h) - 30.0 * c + 16.0 * at(i, -h) -
            at(i, -2 * h)) /
           (12.0 * h * h);
  return lap;
}

RefinementStudy spherical_harmonic_study(double mass, const Vec3& point,
                                         const std::vector<double>& steps,
                                         int order) {
  const SphericalSolution sol = solve_spherical(mass);
  const auto g00 = [&](const Vec3& p) {
    const Vec4 x(0.0, p[0], p[1], p[2]);
    return sol.metric(x)(0, 0);
  };
  const auto grr = [&](const Vec3& p) { return sol.grr_radial(p.norm()); };
  RefinementStudy study;
  study.steps = steps;
  for (double h : steps) {
    const double r1 = std::abs(laplacian3(g00, point, h, order));
    const double r2 = std::abs(laplacian3(grr, point, h, order));
    study.residuals.push_back(std::max(r1, r2));
  }
  study.fitted_order = fitted_order(study.steps, study.residuals);
  return study;
}

double fitted_order(const std::vector<double>& steps,
                    const std::vector<double>& residuals) {
  // Least-squares slope of log(residual) against log(step).
  const size_t n = steps.size();
  if (n < 2 || residuals.size() != n) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double lx = std::log(steps[i]);
    const double ly = std::log(std::max(residuals[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

RadialComparison radial_potential_comparison(double mass, double r) {
  RadialComparison c;
  c.additive = 1.0 + 2.0 * mass / r;
  c.geometric = 1.0 / (1.0 - 2.0 * mass / r);
  c.difference = c.geometric - c.additive;
  return c;
}

double gravitational_redshift(double mass, double r_emit, double r_obs) {
  const double num = std::isinf(r_obs) ? 1.0 : 1.0 - 2.0 * mass / r_obs;
  const double den = 1.0 - 2.0 * mass / r_emit;
  if (den <= 0.0 || num <= 0.0)
    throw std::domain_error("redshift undefined inside the horizon scale");
  return std::sqrt(num / den) - 1.0;
}

}  // namespace dsg
