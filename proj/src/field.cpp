#include "dsg/field.hpp"

#include <cmath>
#include <stdexcept>

namespace dsg {

namespace {

Vec4 shifted(const Vec4& x, int m, double d) {
  Vec4 y = x;
  y[m] += d;
  return y;
}

template <typename F>
auto central_diff(const F& f, const Vec4& x, int m, double h, int order)
    -> decltype(f(x)) {
  if (order == 2) {
    auto hi = f(shifted(x, m, h));
    auto lo = f(shifted(x, m, -h));
    for (size_t i = 0; i < hi.v.size(); ++i) hi.v[i] = (hi.v[i] - lo.v[i]) / (2 * h);
    return hi;
  }
  auto p2 = f(shifted(x, m, 2 * h));
  auto p1 = f(shifted(x, m, h));
  auto m1 = f(shifted(x, m, -h));
  auto m2 = f(shifted(x, m, -2 * h));
  for (size_t i = 0; i < p1.v.size(); ++i)
    p1.v[i] = (-p2.v[i] + 8 * p1.v[i] - 8 * m1.v[i] + m2.v[i]) / (12 * h);
  return p1;
}

Mat4 central_diff_mat(const std::function<Mat4(const Vec4&)>& f, const Vec4& x,
                      int m, double h, int order) {
  if (order == 2) return (f(shifted(x, m, h)) - f(shifted(x, m, -h))) / (2 * h);
  return (-f(shifted(x, m, 2 * h)) + 8 * f(shifted(x, m, h)) -
          8 * f(shifted(x, m, -h)) + f(shifted(x, m, -2 * h))) /
         (12 * h);
}

bool desitter_terms(Mode mode) { return mode != Mode::poincare; }

double eta_of(Mode mode, int i) { return mode == Mode::so5 ? 1.0 : kEta[i]; }

}  // namespace

Mat4 Potential::eval_dg(const Vec4& x, int m) const {
  if (dg) return dg(x, m);
  return central_diff_mat(g, x, m, fd_step, fd_order);
}

Rank3 Potential::eval_dh(const Vec4& x, int m) const {
  if (!h) return Rank3{};
  if (dh) return dh(x, m);
  return central_diff([this](const Vec4& y) { return h(y); }, x, m, fd_step,
                      fd_order);
}

Potential Potential::flat() {
  Potential p;
  p.g = [](const Vec4&) { return minkowski(); };
  p.dg = [](const Vec4&, int) { return Mat4::Zero().eval(); };
  return p;
}

Rank3 field_e(const Potential& pot, const Vec4& x, Mode mode) {
  const Mat4 g = pot.eval_g(x);
  const Rank3 h = pot.eval_h(x);
  std::array<Mat4, 4> dg;
  for (int m = 0; m < 4; ++m) dg[m] = pot.eval_dg(x, m);
  Rank3 e;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int l = 0; l < 4; ++l) {
        double v = dg[m](n, l) - dg[n](m, l);
        for (int s = 0; s < 4; ++s)
          v += eta_of(mode, s) * (g(n, s) * h(m, s, l) - g(m, s) * h(n, s, l));
        e(m, n, l) = v;
      }
  return e;
}

Rank4 field_f(const Potential& pot, const Vec4& x, Mode mode) {
  const Mat4 g = pot.eval_g(x);
  const Rank3 h = pot.eval_h(x);
  std::array<Rank3, 4> dh;
  for (int m = 0; m < 4; ++m) dh[m] = pot.eval_dh(x, m);
  const bool gg = desitter_terms(mode);
  Rank4 f;
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          double v = dh[m](n, a, b) - dh[n](m, a, b);
          if (gg) v += g(m, a) * g(n, b) - g(m, b) * g(n, a);
          for (int s = 0; s < 4; ++s)
            v += eta_of(mode, s) *
                 (h(m, s, a) * h(n, s, b) - h(m, s, b) * h(n, s, a));
          f(m, n, a, b) = v;
        }
  return f;
}

Mat4 eq_t_residual(const Potential& pot, const SourceField& src, const Vec4& x,
                   Mode mode, double d_step, int d_order) {
  const Mat4 g = pot.eval_g(x);
  const Rank3 h = pot.eval_h(x);
  const Rank3 e = field_e(pot, x, mode);
  const Rank4 f = field_f(pot, x, mode);
  std::array<Rank3, 4> de;
  for (int m = 0; m < 4; ++m)
    de[m] = central_diff(
        [&](const Vec4& y) { return field_e(pot, y, mode); }, x, m, d_step,
        d_order);
  const Mat4 t = src.eval_t(x);
  Mat4 res;
  for (int n = 0; n < 4; ++n)
    for (int l = 0; l < 4; ++l) {
      double v = 0.0;
      for (int m = 0; m < 4; ++m) v += eta_of(mode, m) * de[m](m, n, l);
      for (int m = 0; m < 4; ++m)
        for (int s = 0; s < 4; ++s)
          v += eta_of(mode, m) * eta_of(mode, s) *
               (e(m, n, s) * h(m, s, l) - g(m, s) * f(m, n, s, l));
      res(n, l) = v - 8.0 * M_PI * t(n, l);
    }
  return res;
}

Rank3 eq_s_residual(const Potential& pot, const SourceField& src, const Vec4& x,
                    Mode mode, double d_step, int d_order) {
  const Mat4 g = pot.eval_g(x);
  const Rank3 h = pot.eval_h(x);
  const Rank3 e = field_e(pot, x, mode);
  const Rank4 f = field_f(pot, x, mode);
  std::array<Rank4, 4> df;
  for (int m = 0; m < 4; ++m)
    df[m] = central_diff(
        [&](const Vec4& y) { return field_f(pot, y, mode); }, x, m, d_step,
        d_order);
  const Rank3 s_src = src.eval_s(x);
  const bool eg = desitter_terms(mode);
  Rank3 res;
  for (int n = 0; n < 4; ++n)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double v = 0.0;
        for (int m = 0; m < 4; ++m) v += eta_of(mode, m) * df[m](m, n, a, b);
        if (eg)
          for (int m = 0; m < 4; ++m)
            v -= eta_of(mode, m) *
                 (e(m, n, a) * g(m, b) - e(m, n, b) * g(m, a));
        for (int m = 0; m < 4; ++m)
          for (int s = 0; s < 4; ++s)
            v -= eta_of(mode, m) * eta_of(mode, s) *
                 (f(m, n, s, a) * h(m, s, b) - f(m, n, s, b) * h(m, s, a));
        res(n, a, b) = v - 8.0 * M_PI * s_src(n, a, b);
      }
  return res;
}

Vec4 continuity_v_residual(const Potential& pot, const SourceField& src,
                           const Vec4& x, Mode mode, double d_step,
                           int d_order) {
  const Mat4 g = pot.eval_g(x);
  const Rank3 h = pot.eval_h(x);
  const Mat4 t = src.eval_t(x);
  const Rank3 s = src.eval_s(x);
  std::array<Mat4, 4> dt;
  for (int m = 0; m < 4; ++m)
    dt[m] = central_diff_mat([&](const Vec4& y) { return src.eval_t(y); }, x,
                             m, d_step, d_order);
  Vec4 res;
  for (int l = 0; l < 4; ++l) {
    double v = 0.0;
    for (int m = 0; m < 4; ++m) v += eta_of(mode, m) * dt[m](m, l);
    for (int m = 0; m < 4; ++m)
      for (int ss = 0; ss < 4; ++ss)
        v += eta_of(mode, m) * eta_of(mode, ss) *
             (t(m, ss) * h(m, ss, l) - g(m, ss) * s(m, ss, l));
    res[l] = v;
  }
  return res;
}

Mat4 continuity_m_residual(const Potential& pot, const SourceField& src,
                           const Vec4& x, Mode mode, double d_step,
                           int d_order) {
  const Mat4 g = pot.eval_g(x);
  const Rank3 h = pot.eval_h(x);
  const Mat4 t = src.eval_t(x);
  const Rank3 s = src.eval_s(x);
  std::array<Rank3, 4> ds;
  for (int m = 0; m < 4; ++m)
    ds[m] = central_diff([&](const Vec4& y) { return src.eval_s(y); }, x, m,
                         d_step, d_order);
  const bool tg = desitter_terms(mode);
  Mat4 res;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double v = 0.0;
      for (int m = 0; m < 4; ++m) v += eta_of(mode, m) * ds[m](m, a, b);
      if (tg)
        for (int m = 0; m < 4; ++m)
          v -= eta_of(mode, m) * (t(m, a) * g(m, b) - t(m, b) * g(m, a));
      for (int m = 0; m < 4; ++m)
        for (int ss = 0; ss < 4; ++ss)
          v -= eta_of(mode, m) * eta_of(mode, ss) *
               (s(m, ss, a) * h(m, ss, b) - s(m, ss, b) * h(m, ss, a));
      res(a, b) = v;
    }
  return res;
}

Potential gauge_transformed(const Potential& pot, const GaugeField& gauge,
                            double lambda, Mode mode) {
  if (!gauge.xi || !gauge.chi || !gauge.dxi || !gauge.dchi)
    throw std::invalid_argument("gauge field requires xi, chi and first derivatives");
  const bool xg = desitter_terms(mode);
  const auto so5 = (mode == Mode::so5);
  const auto eta = [so5](int i) { return so5 ? 1.0 : kEta[i]; };

  Potential out;
  out.fd_step = pot.fd_step;
  out.fd_order = pot.fd_order;
  out.g = [pot, gauge, lambda, eta](const Vec4& x) {
    const Mat4 g = pot.eval_g(x);
    const Rank3 h = pot.eval_h(x);
    const Vec4 xi = gauge.xi(x);
    const Mat4 chi = gauge.chi(x);
    const Mat4 dxi = gauge.dxi(x);
    Mat4 gp = g;
    for (int m = 0; m < 4; ++m)
      for (int n = 0; n < 4; ++n) {
        double corr = dxi(m, n);
        for (int s = 0; s < 4; ++s)
          corr += eta(s) * (xi[s] * h(m, s, n) - chi(s, n) * g(m, s));
        gp(m, n) += lambda * corr;
      }
    return gp;
  };
  out.h = [pot, gauge, lambda, eta, xg](const Vec4& x) {
    const Mat4 g = pot.eval_g(x);
    const Rank3 h = pot.eval_h(x);
    const Vec4 xi = gauge.xi(x);
    const Mat4 chi = gauge.chi(x);
    const Rank3 dchi = gauge.dchi(x);
    Rank3 hp = h;
    for (int m = 0; m < 4; ++m)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          double corr = dchi(m, a, b);
          if (xg) corr -= xi[a] * g(m, b) - xi[b] * g(m, a);
          for (int s = 0; s < 4; ++s)
            corr -= eta(s) * (chi(s, a) * h(m, s, b) - chi(s, b) * h(m, s, a));
          hp(m, a, b) += lambda * corr;
        }
    return hp;
  };
  if (pot.dg && pot.dh && gauge.ddxi && gauge.ddchi) {
    out.dg = [pot, gauge, lambda, eta](const Vec4& x, int k) {
      const Mat4 g = pot.eval_g(x);
      const Rank3 h = pot.eval_h(x);
      const Mat4 dgk = pot.eval_dg(x, k);
      const Rank3 dhk = pot.eval_dh(x, k);
      const Vec4 xi = gauge.xi(x);
      const Mat4 chi = gauge.chi(x);
      const Mat4 dxi = gauge.dxi(x);
      const Rank3 dchi = gauge.dchi(x);
      const Rank3 ddxi = gauge.ddxi(x);
      Mat4 out_m = dgk;
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
          double corr = ddxi(k, m, n);
          for (int s = 0; s < 4; ++s)
            corr += eta(s) * (dxi(k, s) * h(m, s, n) + xi[s] * dhk(m, s, n) -
                              dchi(k, s, n) * g(m, s) - chi(s, n) * dgk(m, s));
          out_m(m, n) += lambda * corr;
        }
      return out_m;
    };
    out.dh = [pot, gauge, lambda, eta, xg](const Vec4& x, int k) {
      const Mat4 g = pot.eval_g(x);
      const Rank3 h = pot.eval_h(x);
      const Mat4 dgk = pot.eval_dg(x, k);
      const Rank3 dhk = pot.eval_dh(x, k);
      const Vec4 xi = gauge.xi(x);
      const Mat4 chi = gauge.chi(x);
      const Mat4 dxi = gauge.dxi(x);
      const Rank3 dchi = gauge.dchi(x);
      const Rank4 ddchi = gauge.ddchi(x);
      Rank3 out_h = dhk;
      for (int m = 0; m < 4; ++m)
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b) {
            double corr = ddchi(k, m, a, b);
            if (xg)
              corr -= dxi(k, a) * g(m, b) + xi[a] * dgk(m, b) -
                      dxi(k, b) * g(m, a) - xi[b] * dgk(m, a);
            for (int s = 0; s < 4; ++s)
              corr -= eta(s) *
                      (dchi(k, s, a) * h(m, s, b) + chi(s, a) * dhk(m, s, b) -
                       dchi(k, s, b) * h(m, s, a) - chi(s, b) * dhk(m, s, a));
            out_h(m, a, b) += lambda * corr;
          }
      return out_h;
    };
  }
  return out;
}

Mat5 curvature_matrix(const Generators& gen, const Potential& pot,
                      const Vec4& x, int m, int n) {
  const Mat4 g = pot.eval_g(x);
  const Rank3 h = pot.eval_h(x);
  const Mat4 dgm = pot.eval_dg(x, m);
  const Mat4 dgn = pot.eval_dg(x, n);
  const Rank3 dhm = pot.eval_dh(x, m);
  const Rank3 dhn = pot.eval_dh(x, n);
  const auto slice = [&](const Mat4& gg, const Rank3& hh, int mu) {
    Vec4 grow;
    Mat4 hrow;
    for (int a = 0; a < 4; ++a) {
      grow[a] = gg(mu, a);
      for (int b = 0; b < 4; ++b) hrow(a, b) = hh(mu, a, b);
    }
    return compose_potential_slice(gen, grow, hrow);
  };
  const Mat5 am = slice(g, h, m);
  const Mat5 an = slice(g, h, n);
  const Mat5 dm_an = slice(dgm, dhm, n);
  const Mat5 dn_am = slice(dgn, dhn, m);
  return dm_an - dn_am + commutator(am, an);
}

double action_density(const Potential& pot, const Vec4& x, Mode mode) {
  static thread_local Generators gen_ds = build_generators(Mode::deSitter);
  static thread_local Generators gen_so5 = build_generators(Mode::so5);
  static thread_local Generators gen_p = build_generators(Mode::poincare);
  const Generators& gen = (mode == Mode::so5)        ? gen_so5
                          : (mode == Mode::poincare) ? gen_p
                                                     : gen_ds;
  double s = 0.0;
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n) {
      const Mat5 f = curvature_matrix(gen, pot, x, m, n);
      s += 2.0 * eta_of(mode, m) * eta_of(mode, n) * (f * f).trace();
    }
  return 0.25 * s;
}

double action_box(const Potential& pot, const Vec4& lo, const Vec4& hi,
                  int intervals, Mode mode) {
  if (intervals % 2 != 0 || intervals < 2)
    throw std::invalid_argument("Simpson quadrature needs an even interval count");
  const int n = intervals;
  std::array<double, 4> step;
  for (int d = 0; d < 4; ++d) step[d] = (hi[d] - lo[d]) / n;
  const auto w1 = [n](int i) {
    if (i == 0 || i == n) return 1.0;
    return (i % 2 == 1) ? 4.0 : 2.0;
  };
  double total = 0.0;
  Vec4 x;
  for (int i0 = 0; i0 <= n; ++i0) {
    x[0] = lo[0] + i0 * step[0];
    for (int i1 = 0; i1 <= n; ++i1) {
      x[1] = lo[1] + i1 * step[1];
      for (int i2 = 0; i2 <= n; ++i2) {
        x[2] = lo[2] + i2 * step[2];
        for (int i3 = 0; i3 <= n; ++i3) {
          x[3] = lo[3] + i3 * step[3];
          const double w = w1(i0) * w1(i1) * w1(i2) * w1(i3);
          total += w * action_density(pot, x, mode);
        }
      }
    }
  }
  const double cell = step[0] * step[1] * step[2] * step[3] / 81.0;
  return total * cell;
}

Mat4 abelian_residual(const Potential& pot, const SourceField& src,
                      const Vec4& x, double d_step, int d_order) {
  // d^m (d_m G_{nl} - d_n G_{ml}) - 8 pi T_{nl}, second derivatives via
  // central differences of the (exact when available) first derivatives.
  std::array<std::array<Mat4, 4>, 4> d2g;  // d2g[k][m] = d_k d_m G
  for (int k = 0; k < 4; ++k)
    for (int m = 0; m < 4; ++m)
      d2g[k][m] = central_diff_mat(
          [&](const Vec4& y) { return pot.eval_dg(y, m); }, x, k, d_step,
          d_order);
  const Mat4 t = src.eval_t(x);
  Mat4 res;
  for (int n = 0; n < 4; ++n)
    for (int l = 0; l < 4; ++l) {
      double v = 0.0;
      for (int m = 0; m < 4; ++m)
        v += kEta[m] * (d2g[m][m](n, l) - d2g[n][m](m, l));
      res(n, l) = v - 8.0 * M_PI * t(n, l);
    }
  return res;
}

double abelian_limit_gap(const Potential& pot, const SourceField& src,
                         const std::vector<Vec4>& pts, Mode mode,
                         double d_step, int d_order) {
  double gap = 0.0;
  for (const Vec4& x : pts) {
    const Mat4 full = eq_t_residual(pot, src, x, mode, d_step, d_order);
    const Mat4 lin = abelian_residual(pot, src, x, d_step, d_order);
    gap = std::max(gap, (full - lin).cwiseAbs().maxCoeff());
  }
  return gap;
}

}  // namespace dsg
