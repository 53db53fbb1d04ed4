#include "dsg/lattice.hpp"

#include <cmath>
#include <deque>
#include <memory>
#include <random>
#include <stdexcept>

#include "dsg/spherical.hpp"  // fitted_order

namespace dsg {

namespace {

double eta_of(Mode mode, int i) { return mode == Mode::so5 ? 1.0 : kEta[i]; }

}  // namespace

Mat5 lattice_slice(const Generators& gen, const Vec4& g_row,
                   const Mat4& h_row) {
  Mat5 a = Mat5::Zero();
  for (int b = 0; b < 4; ++b) a += g_row[b] * gen.V[b];
  for (int b = 0; b < 4; ++b)
    for (int c = b + 1; c < 4; ++c) a += h_row(b, c) * gen.M[b][c];
  return a;
}

MatrixPotential matrix_potential(const Generators& gen, const Potential& pot) {
  return [gen, pot](const Vec4& x, int dir) {
    const Mat4 g = pot.eval_g(x);
    const Rank3 h = pot.eval_h(x);
    Vec4 grow;
    Mat4 hrow;
    for (int b = 0; b < 4; ++b) {
      grow[b] = g(dir, b);
      for (int c = 0; c < 4; ++c) hrow(b, c) = h(dir, b, c);
    }
    return lattice_slice(gen, grow, hrow);
  };
}

Mat5 group_inverse(Mode mode, const Mat5& u) {
  if (mode == Mode::poincare) {
    const Mat4 eta = minkowski();
    const Mat4 rot = u.topLeftCorner<4, 4>();
    const Eigen::Vector4d shift = u.topRightCorner<4, 1>();
    const Mat4 rinv = eta * rot.transpose() * eta;
    Mat5 inv = Mat5::Identity();
    inv.topLeftCorner<4, 4>() = rinv;
    inv.topRightCorner<4, 1>() = -rinv * shift;
    return inv;
  }
  const Mat5 form = carrier_form(mode);
  return form * u.transpose() * form;
}

long LinkField::site_index(const std::array<int, 4>& v) const {
  long idx = 0;
  for (int a = 0; a < 4; ++a) {
    int c = v[a];
    if (spec.periodic) {
      c %= verts[a];
      if (c < 0) c += verts[a];
    }
    idx = idx * verts[a] + c;
  }
  return idx;
}

const Mat5& LinkField::at(const std::array<int, 4>& v, int mu) const {
  return u[4 * site_index(v) + mu];
}

Mat5& LinkField::at(const std::array<int, 4>& v, int mu) {
  return u[4 * site_index(v) + mu];
}

LinkField build_links(const LatticeSpec& spec, const MatrixPotential& a) {
  LinkField lf;
  lf.spec = spec;
  long sites = 1;
  for (int d = 0; d < 4; ++d) {
    lf.verts[d] = spec.periodic ? spec.cells[d] : spec.cells[d] + 1;
    sites *= lf.verts[d];
  }
  lf.u.assign(4 * sites, Mat5::Identity());
  std::array<int, 4> v{};
  for (v[0] = 0; v[0] < lf.verts[0]; ++v[0])
    for (v[1] = 0; v[1] < lf.verts[1]; ++v[1])
      for (v[2] = 0; v[2] < lf.verts[2]; ++v[2])
        for (v[3] = 0; v[3] < lf.verts[3]; ++v[3])
          for (int mu = 0; mu < 4; ++mu) {
            if (!spec.periodic && v[mu] >= spec.cells[mu]) continue;
            Vec4 mid = spec.coarse_point(v);
            mid[mu] += 0.5 * spec.eps;
            lf.at(v, mu) = exp_map(spec.eps * a(mid, mu));
          }
  return lf;
}

Mat5 plaquette(const LinkField& links, const std::array<int, 4>& v, int m,
               int n) {
  std::array<int, 4> vm = v, vn = v;
  ++vm[m];
  ++vn[n];
  const Mode mode = links.spec.mode;
  return links.at(v, m) * links.at(vm, n) *
         group_inverse(mode, links.at(vn, m)) *
         group_inverse(mode, links.at(v, n));
}

WilsonResult wilson_action(const LinkField& links) {
  WilsonResult out;
  const LatticeSpec& spec = links.spec;
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n) {
      const double w = eta_of(spec.mode, m) * eta_of(spec.mode, n);
      std::array<int, 4> v{};
      std::array<int, 4> hi = links.verts;
      if (!spec.periodic) {
        hi[m] = spec.cells[m];
        hi[n] = spec.cells[n];
      }
      for (v[0] = 0; v[0] < hi[0]; ++v[0])
        for (v[1] = 0; v[1] < hi[1]; ++v[1])
          for (v[2] = 0; v[2] < hi[2]; ++v[2])
            for (v[3] = 0; v[3] < hi[3]; ++v[3]) {
              out.action += w * (plaquette(links, v, m, n).trace() - 5.0);
              ++out.plaquette_count;
            }
    }
  return out;
}

LinkField gauge_rotated(
    const LinkField& links,
    const std::function<Mat5(const std::array<int, 4>&)>& omega) {
  LinkField out = links;
  const Mode mode = links.spec.mode;
  std::array<int, 4> v{};
  for (v[0] = 0; v[0] < out.verts[0]; ++v[0])
    for (v[1] = 0; v[1] < out.verts[1]; ++v[1])
      for (v[2] = 0; v[2] < out.verts[2]; ++v[2])
        for (v[3] = 0; v[3] < out.verts[3]; ++v[3])
          for (int mu = 0; mu < 4; ++mu) {
            if (!links.spec.periodic && v[mu] >= links.spec.cells[mu])
              continue;
            std::array<int, 4> w = v;
            ++w[mu];
            if (links.spec.periodic) w[mu] %= links.spec.cells[mu];
            out.at(v, mu) =
                omega(v) * links.at(v, mu) * group_inverse(mode, omega(w));
          }
  return out;
}

double continuum_action_box(
    const std::function<Mat5(const Vec4&, int, int)>& fmat, const Vec4& lo,
    const Vec4& hi, int intervals, Mode mode) {
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
  for (int i0 = 0; i0 <= n; ++i0)
    for (int i1 = 0; i1 <= n; ++i1)
      for (int i2 = 0; i2 <= n; ++i2)
        for (int i3 = 0; i3 <= n; ++i3) {
          const Vec4 x(lo[0] + i0 * step[0], lo[1] + i1 * step[1],
                       lo[2] + i2 * step[2], lo[3] + i3 * step[3]);
          double dens = 0.0;
          for (int m = 0; m < 4; ++m)
            for (int p = m + 1; p < 4; ++p) {
              const Mat5 f = fmat(x, m, p);
              dens += 0.5 * eta_of(mode, m) * eta_of(mode, p) *
                      (f * f).trace();
            }
          total += w1(i0) * w1(i1) * w1(i2) * w1(i3) * dens;
        }
  return total * step[0] * step[1] * step[2] * step[3] / 81.0;
}

ConvergenceStudy wilson_convergence(
    const MatrixPotential& a,
    const std::function<Mat5(const Vec4&, int, int)>& fmat,
    const Vec4& origin, double extent, const std::vector<int>& divisions,
    int quad_intervals, Mode mode, bool periodic) {
  ConvergenceStudy study;
  const Vec4 hi = origin + Vec4::Constant(extent);
  study.continuum = continuum_action_box(fmat, origin, hi, quad_intervals, mode);
  for (int d : divisions) {
    LatticeSpec spec;
    spec.cells = {d, d, d, d};
    spec.eps = extent / d;
    spec.origin = origin;
    spec.mode = mode;
    spec.periodic = periodic;
    const WilsonResult w = wilson_action(build_links(spec, a));
    study.spacings.push_back(spec.eps);
    study.actions.push_back(w.action);
    study.errors.push_back(std::abs(w.action - study.continuum));
  }
  study.fitted_order = fitted_order(study.spacings, study.errors);
  return study;
}

AnalyticConfiguration plane_wave_configuration(Mode mode, unsigned seed,
                                               double extent,
                                               double amplitude) {
  if (extent <= 0.0) throw std::invalid_argument("extent must be positive");
  const Generators gen = build_generators(mode);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(-0.8, 0.8);

  struct Profile {
    std::array<Mat5, 4> dir;      // fixed algebra element per direction
    std::array<Vec4, 4> wave;     // integer wave vector scaled by 2 pi / L
    std::array<double, 4> phase;
    std::array<double, 4> scale;

    double s(const Vec4& x, int d) const {
      return scale[d] * std::sin(phase[d] + wave[d].dot(x));
    }
    double ds(const Vec4& x, int d, int m) const {
      return scale[d] * std::cos(phase[d] + wave[d].dot(x)) * wave[d][m];
    }
  };

  static constexpr int kWave[4][4] = {
      {1, 0, 0, 1}, {0, 1, 1, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}};
  static constexpr double kPhase[4] = {0.3, 1.1, 2.0, 0.7};
  static constexpr double kScale[4] = {1.0, 0.8, 1.2, 0.9};

  auto prof = std::make_shared<Profile>();
  const double omega = 2.0 * 3.14159265358979323846 / extent;
  for (int d = 0; d < 4; ++d) {
    Vec4 g_row;
    for (int b = 0; b < 4; ++b) g_row[b] = coef(rng);
    Mat4 h_row = Mat4::Zero();
    for (int b = 0; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) {
        h_row(b, c) = coef(rng);
        h_row(c, b) = -h_row(b, c);
      }
    prof->dir[d] = lattice_slice(gen, g_row, h_row);
    for (int m = 0; m < 4; ++m) prof->wave[d][m] = omega * kWave[d][m];
    prof->phase[d] = kPhase[d];
    prof->scale[d] = amplitude * kScale[d];
  }

  AnalyticConfiguration out;
  out.a = [prof](const Vec4& x, int d) -> Mat5 {
    return prof->s(x, d) * prof->dir[d];
  };
  out.fmat = [prof](const Vec4& x, int m, int n) -> Mat5 {
    Mat5 f = prof->ds(x, n, m) * prof->dir[n] -
             prof->ds(x, m, n) * prof->dir[m];
    f += prof->s(x, m) * prof->s(x, n) *
         commutator(prof->dir[m], prof->dir[n]);
    return f;
  };
  return out;
}

long LabelField::index(const std::array<int, 4>& f) const {
  long idx = 0;
  for (int a = 0; a < 4; ++a) idx = idx * fine_shape[a] + f[a];
  return idx;
}

const Vec4& LabelField::at(const std::array<int, 4>& f) const {
  return y[index(f)];
}

const Vec4& LabelField::at_coarse(const std::array<int, 4>& v) const {
  return y[index({2 * v[0], 2 * v[1], 2 * v[2], 2 * v[3]})];
}

LabelField propagate_labels(const LatticeSpec& spec, const Potential& pot,
                            const std::array<int, 4>& seed_coarse,
                            const Vec4& seed_y, double y4) {
  LabelField lab;
  lab.spec = spec;
  lab.y4 = y4;
  long fine_sites = 1;
  for (int a = 0; a < 4; ++a) {
    if (seed_coarse[a] < 0 || seed_coarse[a] > spec.cells[a])
      throw std::invalid_argument("seed vertex outside the lattice");
    lab.fine_shape[a] = 2 * spec.cells[a] + 1;
    fine_sites *= lab.fine_shape[a];
  }
  lab.y.assign(fine_sites, Vec4::Zero());

  const auto hop = [&](const Vec4& src, const std::array<int, 4>& fine_site,
                       int dir, double step) {
    const Vec4 x = spec.fine_point(fine_site);
    const Mat4 g = pot.eval_g(x);
    const Rank3 h = pot.eval_h(x);
    Vec4 w = src;
    for (int b = 0; b < 4; ++b) {
      double drift = g(dir, b) * y4;
      for (int c = 0; c < 4; ++c) drift += h(dir, b, c) * src[c];
      w[b] += step * drift;
    }
    return w;
  };

  // Breadth-first fill of the coarse (all-even) sublattice.
  std::vector<char> seen(fine_sites, 0);
  const auto fine_of = [](const std::array<int, 4>& v) {
    return std::array<int, 4>{2 * v[0], 2 * v[1], 2 * v[2], 2 * v[3]};
  };
  std::deque<std::array<int, 4>> queue;
  lab.y[lab.index(fine_of(seed_coarse))] = seed_y;
  seen[lab.index(fine_of(seed_coarse))] = 1;
  queue.push_back(seed_coarse);
  while (!queue.empty()) {
    const std::array<int, 4> v = queue.front();
    queue.pop_front();
    const Vec4 yv = lab.y[lab.index(fine_of(v))];
    for (int a = 0; a < 4; ++a)
      for (int s : {+1, -1}) {
        std::array<int, 4> w = v;
        w[a] += s;
        if (w[a] < 0 || w[a] > spec.cells[a]) continue;
        const long widx = lab.index(fine_of(w));
        if (seen[widx]) continue;
        std::array<int, 4> mid = fine_of(v);
        mid[a] += s;  // link midpoint in fine coordinates
        lab.y[widx] = hop(yv, mid, a, s * spec.eps);
        seen[widx] = 1;
        queue.push_back(w);
      }
  }

  // Remaining fine vertices: half hop from the predecessor along the first
  // odd axis, evaluated at the vertex itself.
  std::array<int, 4> f{};
  for (f[0] = 0; f[0] < lab.fine_shape[0]; ++f[0])
    for (f[1] = 0; f[1] < lab.fine_shape[1]; ++f[1])
      for (f[2] = 0; f[2] < lab.fine_shape[2]; ++f[2])
        for (f[3] = 0; f[3] < lab.fine_shape[3]; ++f[3]) {
          int axis = -1;
          for (int a = 0; a < 4; ++a)
            if (f[a] % 2 == 1) {
              axis = a;
              break;
            }
          if (axis < 0) continue;  // coarse vertex, already labeled
          std::array<int, 4> src = f;
          --src[axis];
          lab.y[lab.index(f)] =
              hop(lab.y[lab.index(src)], f, axis, 0.5 * spec.eps);
        }
  return lab;
}

}  // namespace dsg
