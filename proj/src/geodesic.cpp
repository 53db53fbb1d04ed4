#include "dsg/geodesic.hpp"

#include <array>

#include <cmath>
#include <stdexcept>

#include "dsg/spherical.hpp"

namespace dsg {

Rank3 christoffel(const Potential& pot, const Vec4& x) {
  const Mat4 g = pot.eval_g(x);
  std::array<Mat4, 4> dg;
  for (int m = 0; m < 4; ++m) dg[m] = pot.eval_dg(x, m);
  const Mat4 ginv = g.inverse();
  Rank3 gamma;
  for (int l = 0; l < 4; ++l)
    for (int mu = 0; mu < 4; ++mu)
      for (int rho = 0; rho < 4; ++rho) {
        double v = 0.0;
        for (int nu = 0; nu < 4; ++nu)
          v += ginv(l, nu) *
               (dg[rho](mu, nu) + dg[mu](rho, nu) - dg[nu](mu, rho));
        gamma(l, mu, rho) = 0.5 * v;
      }
  return gamma;
}

namespace {

Vec4 acceleration(const Potential& pot, const Vec4& x, const Vec4& u,
                  bool rank3_force) {
  const Rank3 gamma = christoffel(pot, x);
  Vec4 a = Vec4::Zero();
  for (int l = 0; l < 4; ++l) {
    double v = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int rho = 0; rho < 4; ++rho) v += gamma(l, mu, rho) * u[mu] * u[rho];
    a[l] = -v;
  }
  if (rank3_force && pot.h) {
    // Leading-order force from the cubic worldline term: vary
    // H_{(mu nu lam)} u^mu u^nu u^lam and drop the H * (du) back-reaction.
    const Rank3 h = pot.eval_h(x);
    std::array<Rank3, 4> dh;
    for (int m = 0; m < 4; ++m) dh[m] = pot.eval_dh(x, m);
    const auto hsym = [&](const Rank3& t, int i, int j, int k) {
      return (t(i, j, k) + t(i, k, j) + t(j, i, k) + t(j, k, i) + t(k, i, j) +
              t(k, j, i)) /
             6.0;
    };
    Vec4 f = Vec4::Zero();
    for (int l = 0; l < 4; ++l) {
      double v = 0.0;
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n)
          for (int s = 0; s < 4; ++s) {
            v += 3.0 * hsym(dh[s], l, m, n) * u[s] * u[m] * u[n];
            v -= hsym(dh[l], s, m, n) * u[s] * u[m] * u[n];
          }
      f[l] = v;
    }
    const Mat4 ginv = pot.eval_g(x).inverse();
    for (int l = 0; l < 4; ++l) {
      double v = 0.0;
      for (int n = 0; n < 4; ++n) v += ginv(l, n) * f[n];
      a[l] -= 0.5 * v;
    }
  }
  return a;
}

}  // namespace

GeodesicState make_state(const Potential& pot, const Vec4& x, const Vec3& v,
                         bool timelike) {
  const Mat4 g = pot.eval_g(x);
  double a = 0.0, b = 0.0;
  const double c = g(0, 0);
  for (int i = 0; i < 3; ++i) {
    b += 2.0 * g(0, i + 1) * v[i];
    for (int j = 0; j < 3; ++j) a += g(i + 1, j + 1) * v[i] * v[j];
  }
  GeodesicState st;
  st.x = x;
  const double quad = a + b + c;  // G_{mu nu} (1,v)^mu (1,v)^nu
  double u0;
  if (timelike) {
    if (quad >= 0.0)
      throw std::invalid_argument("3-velocity is not inside the light cone");
    u0 = 1.0 / std::sqrt(-quad);
  } else {
    // Null rays: rescale the spatial direction so the vector is exactly
    // null, keeping u^0 = 1 normalization of the affine parameter.
    if (a <= 0.0) throw std::invalid_argument("null direction needs spatial part");
    const double disc = b * b - 4.0 * a * c;
    const double k = (-b + std::sqrt(disc)) / (2.0 * a);
    st.u[0] = 1.0;
    for (int i = 0; i < 3; ++i) st.u[i + 1] = k * v[i];
    return st;
  }
  st.u[0] = u0;
  for (int i = 0; i < 3; ++i) st.u[i + 1] = u0 * v[i];
  return st;
}

GeodesicState propagate(
    const Potential& pot, const GeodesicState& start, double tau_end,
    const GeodesicOptions& opt,
    const std::function<void(double, const GeodesicState&)>& observer) {
  OdeOptions oopt;
  oopt.abs_tol = opt.abs_tol;
  oopt.rel_tol = opt.rel_tol;
  oopt.max_step = opt.max_step;
  oopt.initial_step = std::min(opt.max_step, 1e-3 * std::abs(tau_end) + 1e-12);
  const bool r3 = opt.rank3_force;
  DormandPrince solver(
      [&pot, r3](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        Vec4 x, u;
        for (int i = 0; i < 4; ++i) {
          x[i] = y[i];
          u[i] = y[4 + i];
        }
        const Vec4 a = acceleration(pot, x, u, r3);
        for (int i = 0; i < 4; ++i) {
          dy[i] = u[i];
          dy[4 + i] = a[i];
        }
      },
      oopt);
  Eigen::VectorXd y(8);
  for (int i = 0; i < 4; ++i) {
    y[i] = start.x[i];
    y[4 + i] = start.u[i];
  }
  const auto obs = observer
                       ? std::function<void(double, const Eigen::VectorXd&)>(
                             [&observer](double t, const Eigen::VectorXd& s) {
                               GeodesicState st;
                               for (int i = 0; i < 4; ++i) {
                                 st.x[i] = s[i];
                                 st.u[i] = s[4 + i];
                               }
                               observer(t, st);
                             })
                       : std::function<void(double, const Eigen::VectorXd&)>();
  const Eigen::VectorXd yf = solver.integrate(0.0, y, tau_end, obs);
  GeodesicState out;
  for (int i = 0; i < 4; ++i) {
    out.x[i] = yf[i];
    out.u[i] = yf[4 + i];
  }
  return out;
}

namespace {

struct OrbitSample {
  double tau, t, r, phi, rr_dot;  // rr_dot = spatial x . spatial u = r r'
};

double lagrange4(const std::array<double, 4>& xs,
                 const std::array<double, 4>& ys, double x) {
  double out = 0.0;
  for (int i = 0; i < 4; ++i) {
    double term = ys[i];
    for (int j = 0; j < 4; ++j)
      if (j != i) term *= (x - xs[j]) / (xs[i] - xs[j]);
    out += term;
  }
  return out;
}

}  // namespace

PerihelionResult perihelion_advance(double mass, double a, double e,
                                    int orbits, const GeodesicOptions& opt_in) {
  const SphericalSolution sol = solve_spherical(mass);
  const Potential pot = sol.potential();
  const double r_peri = a * (1.0 - e);
  // Newtonian periapsis speed for the requested ellipse.
  const double v_peri = std::sqrt(mass * (1.0 + e) / (a * (1.0 - e)));
  const Vec4 x0(0.0, r_peri, 0.0, 0.0);
  const GeodesicState start =
      make_state(pot, x0, Vec3(0.0, v_peri, 0.0), true);

  const double period_newton = 2.0 * M_PI * std::sqrt(a * a * a / mass);
  GeodesicOptions opt = opt_in;
  opt.max_step = period_newton / 1500.0;

  std::vector<OrbitSample> samples;
  samples.reserve(static_cast<size_t>(1600.0 * (orbits + 1)));
  double prev_phi = 0.0;
  double winding = 0.0;
  const auto observer = [&](double tau, const GeodesicState& st) {
    const double r = std::hypot(st.x[1], st.x[2]);
    double phi = std::atan2(st.x[2], st.x[1]);
    if (!samples.empty()) {
      while (phi + winding < prev_phi - M_PI) winding += 2.0 * M_PI;
      while (phi + winding > prev_phi + M_PI) winding -= 2.0 * M_PI;
    }
    phi += winding;
    prev_phi = phi;
    const double rr_dot = st.x.tail<3>().dot(st.u.tail<3>());
    samples.push_back({tau, st.x[0], r, phi, rr_dot});
  };
  propagate(pot, start, period_newton * (orbits + 0.5), opt, observer);

  PerihelionResult res;
  double rmin = samples.front().r, rmax = samples.front().r;
  std::vector<double> peri_phi;
  for (size_t i = 0; i < samples.size(); ++i)
    rmin = std::min(rmin, samples[i].r), rmax = std::max(rmax, samples[i].r);
  // Periapsis passages are upward zero crossings of r r'. That signal has a
  // steep slope there, so locating its root conditions far better than
  // hunting the flat minimum of r itself: invert the cubic through the four
  // bracketing samples at zero, then read the angle off the matching cubic.
  for (size_t i = 1; i + 2 < samples.size(); ++i) {
    if (!(samples[i].rr_dot < 0.0 && samples[i + 1].rr_dot >= 0.0)) continue;
    const std::array<const OrbitSample*, 4> s = {
        &samples[i - 1], &samples[i], &samples[i + 1], &samples[i + 2]};
    bool monotone = true;
    for (int k = 0; k + 1 < 4; ++k)
      monotone = monotone && s[k]->rr_dot < s[k + 1]->rr_dot;
    double tau_star;
    if (monotone) {
      tau_star = lagrange4({s[0]->rr_dot, s[1]->rr_dot, s[2]->rr_dot, s[3]->rr_dot},
                           {s[0]->tau, s[1]->tau, s[2]->tau, s[3]->tau}, 0.0);
    } else {
      const double span = samples[i + 1].tau - samples[i].tau;
      tau_star = samples[i].tau -
                 samples[i].rr_dot * span /
                     (samples[i + 1].rr_dot - samples[i].rr_dot);
    }
    peri_phi.push_back(
        lagrange4({s[0]->tau, s[1]->tau, s[2]->tau, s[3]->tau},
                  {s[0]->phi, s[1]->phi, s[2]->phi, s[3]->phi}, tau_star));
  }
  res.periapses = static_cast<int>(peri_phi.size());
  if (res.periapses >= 2) {
    const double total = peri_phi.back() - peri_phi.front();
    const int gaps = res.periapses - 1;
    res.advance_per_orbit = total / gaps - 2.0 * M_PI;
  }
  res.a_measured = 0.5 * (rmin + rmax);
  res.e_measured = (rmax - rmin) / (rmax + rmin);
  res.oracle = 6.0 * M_PI * mass /
               (res.a_measured * (1.0 - res.e_measured * res.e_measured));
  return res;
}

DeflectionResult light_deflection(double mass, double b, double range_factor,
                                  const GeodesicOptions& opt_in) {
  const SphericalSolution sol = solve_spherical(mass);
  const Potential pot = sol.potential();
  const double range = range_factor * b;
  const Vec4 x0(0.0, -range, b, 0.0);
  const GeodesicState start = make_state(pot, x0, Vec3(1.0, 0.0, 0.0), false);
  GeodesicOptions opt = opt_in;
  opt.max_step = range / 4.0;
  const GeodesicState end = propagate(pot, start, 2.0 * range, opt);
  const Vec3 vin(start.u[1], start.u[2], start.u[3]);
  const Vec3 vout(end.u[1], end.u[2], end.u[3]);
  DeflectionResult res;
  res.angle = std::acos(vin.dot(vout) / (vin.norm() * vout.norm()));
  res.oracle = 4.0 * mass / b;
  return res;
}

CircularOrbitResult circular_orbit_period(double mass, double r,
                                          const GeodesicOptions& opt_in) {
  const SphericalSolution sol = solve_spherical(mass);
  const Potential pot = sol.potential();
  const double v = std::sqrt(mass / r);
  const Vec4 x0(0.0, r, 0.0, 0.0);
  const GeodesicState start = make_state(pot, x0, Vec3(0.0, v, 0.0), true);
  CircularOrbitResult res;
  res.kepler_period = 2.0 * M_PI * std::sqrt(r * r * r / mass);

  GeodesicOptions opt = opt_in;
  opt.max_step = res.kepler_period / 200.0;
  std::vector<OrbitSample> samples;
  double prev_phi = 0.0, winding = 0.0;
  const auto observer = [&](double tau, const GeodesicState& st) {
    double phi = std::atan2(st.x[2], st.x[1]);
    if (!samples.empty()) {
      while (phi + winding < prev_phi - M_PI) winding += 2.0 * M_PI;
      while (phi + winding > prev_phi + M_PI) winding -= 2.0 * M_PI;
    }
    phi += winding;
    prev_phi = phi;
    samples.push_back({tau, st.x[0], 0.0, phi});
  };
  // Proper-time span: dt/dtau = u^0, so one coordinate period needs
  // tau of roughly P / u^0.
  propagate(pot, start, 1.2 * res.kepler_period / start.u[0], opt, observer);
  for (size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].phi >= 2.0 * M_PI && samples[i - 1].phi < 2.0 * M_PI) {
      const auto& s0 = samples[i - 1];
      const auto& s1 = samples[i];
      const double w = (2.0 * M_PI - s0.phi) / (s1.phi - s0.phi);
      res.period = s0.t + w * (s1.t - s0.t);
      break;
    }
  }
  return res;
}

}  // namespace dsg
