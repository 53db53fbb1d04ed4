#include "dsg/cosmology.hpp"

#include <cmath>
#include <stdexcept>

#include "dsg/ode.hpp"

namespace dsg {

namespace {

double quartic_scale(const CosmoParams& par) {
  // Leading coefficient of the deSitter b(t) numerator.
  return (-12.0 * par.c0 + 8.0 * M_PI * par.rho0 * std::pow(par.t0, 4)) /
         (3.0 * par.t0);
}

}  // namespace

CosmoState closed_form_state(const CosmoParams& par, double t) {
  if (t <= 0.0) throw std::domain_error("cosmology defined for t > 0");
  CosmoState st;
  st.t = t;
  st.a = par.a0 * t / par.t0;
  st.adot = par.a0 / par.t0;
  const double rt = par.t0 / t;
  st.rho = par.rho0 * rt * rt * rt * rt;
  st.rhodot = -4.0 * st.rho / t;
  if (par.mode == Mode::poincare) {
    const double t04 = std::pow(par.t0, 4);
    const double alpha = 8.0 * M_PI * par.rho0 * t04 / (3.0 * std::pow(par.a0, 4));
    const double k = (par.b0 +
                      8.0 * M_PI * par.rho0 /
                          (3.0 * std::pow(par.a0, 4) / (par.t0 * par.t0)) -
                      1.0) *
                     par.a0;
    const double kk = k * par.t0 / par.a0;
    st.b = 1.0 - alpha / (t * t) + kk / t;
    st.bdot = 2.0 * alpha / (t * t * t) - kk / (t * t);
    st.bddot = -6.0 * alpha / (t * t * t * t) + 2.0 * kk / (t * t * t);
    st.c = st.cdot = st.d = st.ddot = 0.0;
    return st;
  }
  // deSitter (and so5 treated identically at the ansatz level).
  const double cc = quartic_scale(par);
  const double t04 = std::pow(par.t0, 4);
  const double p0 = 8.0 * M_PI * par.rho0 * t04;
  // b = (cc t^4 - 3 cc t^3 + (12 + p0) t^2 - 5 p0 t - 4 p0) / (12 t^2)
  const double b2 = 12.0 + p0;
  const double b1 = -5.0 * p0;
  const double b0c = -4.0 * p0;
  const double t2 = t * t;
  st.b = (cc * t2 * t2 - 3.0 * cc * t2 * t + b2 * t2 + b1 * t + b0c) /
         (12.0 * t2);
  // derivative of (cc t^2 - 3 cc t + b2 + b1/t + b0c/t^2) / 12
  st.bdot = (2.0 * cc * t - 3.0 * cc - b1 / t2 - 2.0 * b0c / (t2 * t)) / 12.0;
  st.bddot = (2.0 * cc + 2.0 * b1 / (t2 * t) + 6.0 * b0c / (t2 * t2)) / 12.0;
  st.c = (-3.0 * cc * t + p0) / 12.0;
  st.cdot = -cc / 4.0;
  st.d = 0.0;
  st.ddot = 0.0;
  return st;
}

CosmoResiduals state_residuals(const CosmoState& st, double cddot,
                               double dddot) {
  const double a = st.a, b = st.b, c = st.c, d = st.d, rho = st.rho;
  const double ad = st.adot, bd = st.bdot, cd = st.cdot, dd = st.ddot;
  const double add = 0.0;  // the scale factor is linear in t
  const double bdd = st.bddot;
  const double p = rho / 3.0;
  const double a2 = a * a;

  CosmoResiduals out;
  const auto fill = [&](int idx, std::initializer_list<double> terms) {
    double sum = 0.0, big = 0.0;
    for (double v : terms) {
      sum += v;
      big = std::max(big, std::abs(v));
    }
    out.abs_val[idx] = sum;
    out.rel[idx] = std::abs(sum) / std::max(big, 1e-30);
  };

  fill(0, {3.0 * ad * (a * bd) / a2, 3.0 * ad * (b * ad) / a2,
           3.0 * ad * (-ad) / a2, 3.0 * ad * (c * a) / a2,
           -8.0 * M_PI * rho});
  fill(1, {-3.0 * ad * bd * a / a2, -bdd, -add * b / a, -ad * ad * b / a2,
           add / a, -bdd, -cd, -2.0 * ad * c / a, -8.0 * M_PI * p});
  fill(2, {cddot * a2, 3.0 * cd * ad * a, -3.0 * ad * ad * c, add * a * c,
           -ad * a * b, a * ad, -bd * a2, -c * a2});
  fill(3, {dddot * a2, -ad * ad * d, a * ad * dd, -a2 * b * b * d});
  fill(4, {st.rhodot, 4.0 * (ad / a) * rho});
  out.matter_alt = st.rhodot + 3.0 * p * c * a2 * a2;
  return out;
}

CosmoResiduals closed_form_residuals(const CosmoParams& par, double t) {
  const CosmoState st = closed_form_state(par, t);
  // Closed forms: c is linear in t and d = 0, so cddot = dddot = 0.
  return state_residuals(st, 0.0, 0.0);
}

namespace {

// First-order reduction right-hand side helpers.
double bdot_from_energy(const CosmoParams& par, double t, double b, double c,
                        double rho) {
  const double a = par.a0 * t / par.t0;
  const double ad = par.a0 / par.t0;
  // 3 ad (a bdot + b ad - ad + c a) / a^2 = 8 pi rho
  return (8.0 * M_PI * rho * a * a / (3.0 * ad) - b * ad + ad - c * a) / a;
}

}  // namespace

std::vector<CosmoState> integrate_cosmology(const CosmoParams& par,
                                            double t_start, double t_end,
                                            int samples, double tol) {
  if (t_start <= 0.0 || t_end <= t_start)
    throw std::invalid_argument("need 0 < t_start < t_end");
  if (samples < 2) throw std::invalid_argument("need at least two samples");

  const bool full = (par.mode != Mode::poincare);
  const CosmoState init = closed_form_state(par, t_start);

  // State layout: deSitter (b, c, cdot, d, ddot, rho); poincare (b, rho).
  Eigen::VectorXd y(full ? 6 : 2);
  if (full) y << init.b, init.c, init.cdot, init.d, init.ddot, init.rho;
  else y << init.b, init.rho;

  const auto rhs = [&par, full](double t, const Eigen::VectorXd& s,
                                Eigen::VectorXd& ds) {
    const double a = par.a0 * t / par.t0;
    const double ad = par.a0 / par.t0;
    const double a2 = a * a;
    if (full) {
      const double b = s[0], c = s[1], cd = s[2], d = s[3], dd = s[4],
                   rho = s[5];
      const double bd = bdot_from_energy(par, t, b, c, rho);
      const double cdd =
          (-3.0 * cd * ad * a + 3.0 * ad * ad * c + ad * a * b - a * ad +
           bd * a2 + c * a2) /
          a2;
      const double ddd = (ad * ad * d - a * ad * dd + a2 * b * b * d) / a2;
      ds[0] = bd;
      ds[1] = cd;
      ds[2] = cdd;
      ds[3] = dd;
      ds[4] = ddd;
      ds[5] = -4.0 * rho / t;
    } else {
      const double b = s[0], rho = s[1];
      ds[0] = bdot_from_energy(par, t, b, 0.0, rho);
      ds[1] = -4.0 * rho / t;
    }
  };

  OdeOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  opt.initial_step = (t_end - t_start) / (100.0 * samples);
  DormandPrince solver(rhs, opt);

  std::vector<CosmoState> out;
  out.reserve(samples);
  double t = t_start;
  for (int k = 0; k < samples; ++k) {
    const double tk =
        t_start + (t_end - t_start) * static_cast<double>(k) / (samples - 1);
    if (k > 0) y = solver.integrate(t, y, tk);
    t = tk;
    CosmoState st;
    st.t = tk;
    st.a = par.a0 * tk / par.t0;
    st.adot = par.a0 / par.t0;
    if (full) {
      st.b = y[0];
      st.c = y[1];
      st.cdot = y[2];
      st.d = y[3];
      st.ddot = y[4];
      st.rho = y[5];
    } else {
      st.b = y[0];
      st.rho = y[1];
    }
    st.rhodot = -4.0 * st.rho / tk;
    st.bdot = bdot_from_energy(par, tk, st.b, st.c, st.rho);
    // Differentiate the energy-constraint expression along the flow.
    const double a = st.a, ad = st.adot;
    st.bddot = 8.0 * M_PI * st.rho / 3.0 - ad * ad * (1.0 - st.b) / (a * a) -
               (ad / a) * st.bdot - st.cdot +
               8.0 * M_PI * a / (3.0 * ad) * st.rhodot;
    out.push_back(st);
  }
  return out;
}

ApparentQuantities apparent(const CosmoState& st) {
  if (st.b <= 0.0)
    throw std::domain_error("conformal amplitude must stay positive");
  ApparentQuantities q;
  q.hubble = st.adot / st.a;
  const double beta = std::sqrt(st.b);
  const double betadot = st.bdot / (2.0 * beta);
  const double betaddot =
      st.bddot / (2.0 * beta) - st.bdot * st.bdot / (4.0 * beta * st.b);
  q.apparent_hubble = betadot / beta + q.hubble;
  q.s = beta * st.a;
  q.sdot = betadot * st.a + beta * st.adot;
  q.sddot = betaddot * st.a + 2.0 * betadot * st.adot;
  return q;
}

}  // namespace dsg
