#include "dsg/radiation.hpp"

#include <cmath>
#include <stdexcept>

namespace dsg {

namespace {

// Eccentric anomaly from mean anomaly by Newton iteration.
double solve_kepler(double mean_anomaly, double e) {
  double ecc_anom = mean_anomaly;
  for (int it = 0; it < 50; ++it) {
    const double f = ecc_anom - e * std::sin(ecc_anom) - mean_anomaly;
    const double step = f / (1.0 - e * std::cos(ecc_anom));
    ecc_anom -= step;
    if (std::abs(step) <= 1e-15) break;
  }
  return ecc_anom;
}

void require_stencil_ready(const TwoBodyTrajectory& traj) {
  const std::size_t n = traj.times.size();
  if (n < 64)
    throw std::invalid_argument(
        "third derivatives need at least 64 uniform samples");
  if (traj.x1.size() != n || traj.x2.size() != n)
    throw std::invalid_argument("trajectory arrays differ in length");
  if (!(traj.dt > 0.0))
    throw std::invalid_argument("sample spacing must be positive");
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (std::abs(traj.times[k + 1] - traj.times[k] - traj.dt) > 1e-9 * traj.dt)
      throw std::invalid_argument("samples are not uniform");
}

long wrap(long i, long n) {
  i %= n;
  return i < 0 ? i + n : i;
}

std::vector<Mat3> reduced_series(const TwoBodyTrajectory& traj) {
  std::vector<Mat3> q;
  q.reserve(traj.times.size());
  for (std::size_t k = 0; k < traj.times.size(); ++k)
    q.push_back(reduced_quadrupole(
        traj.m1 * traj.x1[k] * traj.x1[k].transpose() +
        traj.m2 * traj.x2[k] * traj.x2[k].transpose()));
  return q;
}

// 7-point central third derivative on a uniform series.
Mat3 third_derivative(const std::vector<Mat3>& s, long k, double dt,
                      bool periodic) {
  const long n = static_cast<long>(s.size());
  const auto at = [&](long i) -> const Mat3& {
    return s[periodic ? wrap(i, n) : i];
  };
  return (at(k - 3) - 8.0 * at(k - 2) + 13.0 * at(k - 1) - 13.0 * at(k + 1) +
          8.0 * at(k + 2) - at(k + 3)) /
         (8.0 * dt * dt * dt);
}

// 5-point central second derivative.
template <typename T>
T second_derivative(const std::vector<T>& s, long k, double dt,
                    bool periodic) {
  const long n = static_cast<long>(s.size());
  const auto at = [&](long i) -> const T& {
    return s[periodic ? wrap(i, n) : i];
  };
  return (-at(k - 2) + 16.0 * at(k - 1) - 30.0 * at(k) + 16.0 * at(k + 1) -
          at(k + 2)) /
         (12.0 * dt * dt);
}

// 5-point central first derivative.
Vec3 first_derivative(const std::vector<Vec3>& s, long k, double dt,
                      bool periodic) {
  const long n = static_cast<long>(s.size());
  const auto at = [&](long i) -> const Vec3& {
    return s[periodic ? wrap(i, n) : i];
  };
  return (at(k - 2) - 8.0 * at(k - 1) + 8.0 * at(k + 1) - at(k + 2)) /
         (12.0 * dt);
}

}  // namespace

TwoBodyTrajectory kepler_trajectory(double m1, double m2, double semi_major,
                                    double ecc, int samples) {
  if (!(m1 > 0.0) || !(m2 > 0.0))
    throw std::invalid_argument("masses must be positive");
  if (!(semi_major > 0.0))
    throw std::invalid_argument("orbit size must be positive");
  if (!(ecc >= 0.0 && ecc < 1.0))
    throw std::invalid_argument("eccentricity must lie in [0, 1)");
  if (samples < 8) throw std::invalid_argument("too few samples");

  TwoBodyTrajectory traj;
  traj.m1 = m1;
  traj.m2 = m2;
  traj.periodic = true;
  const double m = m1 + m2;
  const double mean_motion = std::sqrt(m / std::pow(semi_major, 3));
  const double period = 2.0 * M_PI / mean_motion;
  traj.dt = period / samples;
  const double sq = std::sqrt(1.0 - ecc * ecc);
  for (int k = 0; k < samples; ++k) {
    const double t = k * traj.dt;
    const double ecc_anom = solve_kepler(mean_motion * t, ecc);
    const Vec3 rel(semi_major * (std::cos(ecc_anom) - ecc),
                   semi_major * sq * std::sin(ecc_anom), 0.0);
    traj.times.push_back(t);
    traj.x1.push_back(-(m2 / m) * rel);
    traj.x2.push_back((m1 / m) * rel);
  }
  return traj;
}

Mat3 quadrupole_moment(const std::vector<Body>& bodies) {
  Mat3 q = Mat3::Zero();
  for (const Body& b : bodies)
    q += b.mass * b.position * b.position.transpose();
  return q;
}

Mat3 reduced_quadrupole(const Mat3& q) {
  return q - Mat3::Identity() * (q.trace() / 3.0);
}

PowerSeries radiated_power_numeric(const TwoBodyTrajectory& traj) {
  require_stencil_ready(traj);
  const std::vector<Mat3> q = reduced_series(traj);
  const long n = static_cast<long>(q.size());
  PowerSeries out;
  const long lo = traj.periodic ? 0 : 3;
  const long hi = traj.periodic ? n : n - 3;
  double sum = 0.0;
  for (long k = lo; k < hi; ++k) {
    const Mat3 ddd = third_derivative(q, k, traj.dt, traj.periodic);
    const double p = -0.2 * ddd.squaredNorm();
    out.times.push_back(traj.times[k]);
    out.power.push_back(p);
    sum += p;
  }
  out.average = sum / static_cast<double>(hi - lo);
  return out;
}

double peters_matthews_power(double m1, double m2, double r, double v,
                             double rdot) {
  if (!(r > 0.0)) throw std::domain_error("separation must be positive");
  const double m = m1 + m2;
  const double mu = m1 * m2 / m;
  return -(8.0 / 15.0) * mu * mu * m * m / std::pow(r, 4) *
         (12.0 * v * v - 11.0 * rdot * rdot);
}

double peters_matthews_average(const TwoBodyTrajectory& traj) {
  require_stencil_ready(traj);
  const long n = static_cast<long>(traj.times.size());
  std::vector<Vec3> rel(n);
  for (long k = 0; k < n; ++k) rel[k] = traj.x2[k] - traj.x1[k];
  const long lo = traj.periodic ? 0 : 2;
  const long hi = traj.periodic ? n : n - 2;
  double sum = 0.0;
  for (long k = lo; k < hi; ++k) {
    const Vec3 vrel = first_derivative(rel, k, traj.dt, traj.periodic);
    const double r = rel[k].norm();
    const double rdot = rel[k].dot(vrel) / r;
    sum += peters_matthews_power(traj.m1, traj.m2, r, vrel.norm(), rdot);
  }
  return sum / static_cast<double>(hi - lo);
}

double eccentricity_enhancement(double e) {
  if (!(e >= 0.0 && e < 1.0))
    throw std::domain_error("eccentricity must lie in [0, 1)");
  const double e2 = e * e;
  return std::pow(1.0 - e2, -3.5) *
         (1.0 + (73.0 / 24.0) * e2 + (37.0 / 96.0) * e2 * e2);
}

double quadrupole_closed_form_power(double m1, double m2, double semi_major,
                                    double e) {
  const double m = m1 + m2;
  const double mu = m1 * m2 / m;
  return -(32.0 / 5.0) * mu * mu * std::pow(m, 3) /
         std::pow(semi_major, 5) * eccentricity_enhancement(e);
}

double orbital_speedup(const KeplerBinary& b, double grav_const,
                       double light_speed) {
  if (!(b.e >= 0.0 && b.e < 1.0))
    throw std::domain_error("eccentricity must lie in [0, 1)");
  if (!(b.m_p > 0.0) || !(b.m_c > 0.0) || !(b.p_b > 0.0))
    throw std::domain_error("masses and period must be positive");
  const double m = b.m_p + b.m_c;
  return -(192.0 * M_PI / 5.0) * std::pow(grav_const, 5.0 / 3.0) /
         std::pow(light_speed, 5) *
         std::pow(b.p_b / (2.0 * M_PI), -5.0 / 3.0) *
         eccentricity_enhancement(b.e) * b.m_p * b.m_c / std::cbrt(m);
}

double energy_balance_speedup(double m1, double m2, double semi_major,
                              double e) {
  const double m = m1 + m2;
  const double mu = m1 * m2 / m;
  const double period = 2.0 * M_PI * std::sqrt(std::pow(semi_major, 3) / m);
  const double dedt = quadrupole_closed_form_power(m1, m2, semi_major, e);
  return 3.0 * period * semi_major * dedt / (mu * m);
}

MomentContent moment_content(const TwoBodyTrajectory& traj) {
  require_stencil_ready(traj);
  const long n = static_cast<long>(traj.times.size());
  std::vector<double> mass(n, traj.m1 + traj.m2);
  std::vector<Vec3> dipole(n);
  for (long k = 0; k < n; ++k)
    dipole[k] = traj.m1 * traj.x1[k] + traj.m2 * traj.x2[k];
  const std::vector<Mat3> q = reduced_series(traj);

  MomentContent out;
  const long lo = traj.periodic ? 0 : 3;
  const long hi = traj.periodic ? n : n - 3;
  for (long k = lo; k < hi; ++k) {
    const double mdot =
        (mass[traj.periodic ? wrap(k + 1, n) : k + 1] -
         mass[traj.periodic ? wrap(k - 1, n) : k - 1]) /
        (2.0 * traj.dt);
    out.monopole_rate = std::max(out.monopole_rate, std::abs(mdot));
    out.dipole_rate =
        std::max(out.dipole_rate,
                 second_derivative(dipole, k, traj.dt, traj.periodic).norm());
    out.quadrupole_rate =
        std::max(out.quadrupole_rate,
                 third_derivative(q, k, traj.dt, traj.periodic).norm());
  }
  return out;
}

Mat3 wave_strain(const TwoBodyTrajectory& traj, double distance, double t) {
  require_stencil_ready(traj);
  if (!(distance > 0.0))
    throw std::domain_error("field distance must be positive");
  const std::vector<Mat3> q = reduced_series(traj);
  const long n = static_cast<long>(q.size());
  double retarded = t - distance;
  const double span = n * traj.dt;
  if (traj.periodic) {
    retarded = std::fmod(retarded - traj.times.front(), span);
    if (retarded < 0.0) retarded += span;
    retarded += traj.times.front();
  } else if (retarded < traj.times[2] || retarded > traj.times[n - 4]) {
    throw std::domain_error("retarded time outside the sampled window");
  }
  const double u = (retarded - traj.times.front()) / traj.dt;
  const long k0 = static_cast<long>(std::floor(u));
  const double w = u - k0;
  const Mat3 dd0 = second_derivative(q, k0, traj.dt, traj.periodic);
  const Mat3 dd1 = second_derivative(q, k0 + 1, traj.dt, traj.periodic);
  return (2.0 / distance) * ((1.0 - w) * dd0 + w * dd1);
}

}  // namespace dsg
