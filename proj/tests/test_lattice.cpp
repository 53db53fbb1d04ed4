#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "dsg/lattice.hpp"

using namespace dsg;

namespace {

// Smooth compactly supported profile centered in the unit box.
struct Bump {
  Vec4 center = Vec4::Constant(0.5);
  double radius = 0.45;

  double value(const Vec4& x) const {
    const double u = (x - center).squaredNorm() / (radius * radius);
    if (u >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - u));
  }
  double deriv(const Vec4& x, int a) const {
    const double u = (x - center).squaredNorm() / (radius * radius);
    if (u >= 1.0) return 0.0;
    const double du = 2.0 * (x[a] - center[a]) / (radius * radius);
    const double om = 1.0 - u;
    return value(x) * (-1.0 / (om * om)) * du;
  }
};

struct BumpPotential {
  Bump s;
  std::array<Mat5, 4> c;  // constant algebra directions

  Mat5 a(const Vec4& x, int dir) const { return s.value(x) * c[dir]; }
  Mat5 f(const Vec4& x, int m, int n) const {
    return s.deriv(x, m) * c[n] - s.deriv(x, n) * c[m] +
           s.value(x) * s.value(x) * commutator(c[m], c[n]);
  }
};

BumpPotential make_bump(Mode mode, unsigned seed) {
  const Generators gen = build_generators(mode);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coef(-0.8, 0.8);
  BumpPotential bp;
  for (int dir = 0; dir < 4; ++dir) {
    Vec4 grow;
    Mat4 hrow = Mat4::Zero();
    for (int b = 0; b < 4; ++b) grow[b] = coef(rng);
    for (int b = 0; b < 4; ++b)
      for (int cc = b + 1; cc < 4; ++cc) {
        hrow(b, cc) = coef(rng);
        hrow(cc, b) = -hrow(b, cc);
      }
    bp.c[dir] = lattice_slice(gen, grow, hrow);
  }
  return bp;
}

MatrixPotential as_closure(const BumpPotential& bp) {
  return [bp](const Vec4& x, int dir) { return bp.a(x, dir); };
}

std::function<Mat5(const Vec4&, int, int)> f_closure(const BumpPotential& bp) {
  return [bp](const Vec4& x, int m, int n) { return bp.f(x, m, n); };
}

// Unit-periodic plane-wave profile per direction times a constant algebra
// element; globally analytic with closed-form curvature.
struct TrigPotential {
  std::array<Mat5, 4> c;
  double amp = 0.15;
  static constexpr double kWave[4][4] = {
      {1, 0, 0, 1}, {0, 1, 1, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}};
  static constexpr double kPhase[4] = {0.3, 1.1, 2.0, 0.7};
  static constexpr double kScale[4] = {1.0, 0.8, 1.2, 0.9};

  double s(const Vec4& x, int d) const {
    double ph = kPhase[d];
    for (int b = 0; b < 4; ++b) ph += 2.0 * M_PI * kWave[d][b] * x[b];
    return amp * kScale[d] * std::sin(ph);
  }
  double ds(const Vec4& x, int d, int b) const {
    double ph = kPhase[d];
    for (int q = 0; q < 4; ++q) ph += 2.0 * M_PI * kWave[d][q] * x[q];
    return amp * kScale[d] * 2.0 * M_PI * kWave[d][b] * std::cos(ph);
  }
  Mat5 a(const Vec4& x, int dir) const { return s(x, dir) * c[dir]; }
  Mat5 f(const Vec4& x, int m, int n) const {
    return ds(x, n, m) * c[n] - ds(x, m, n) * c[m] +
           s(x, m) * s(x, n) * commutator(c[m], c[n]);
  }
};

TrigPotential make_trig(Mode mode, unsigned seed) {
  const BumpPotential bp = make_bump(mode, seed);
  TrigPotential tp;
  tp.c = bp.c;
  return tp;
}

}  // namespace

TEST_CASE("transport embedding places components on the expected generators") {
  for (Mode mode : {Mode::so5, Mode::deSitter, Mode::poincare}) {
    const Generators gen = build_generators(mode);
    for (int b = 0; b < 4; ++b) {
      Vec4 grow = Vec4::Zero();
      grow[b] = 1.0;
      const Mat5 a = lattice_slice(gen, grow, Mat4::Zero());
      CHECK((a - gen.V[b]).cwiseAbs().maxCoeff() <= 1e-15);
    }
    Mat4 hrow = Mat4::Zero();
    hrow(1, 3) = 2.0;
    hrow(3, 1) = -2.0;
    const Mat5 a = lattice_slice(gen, Vec4::Zero(), hrow);
    CHECK((a - 2.0 * gen.M[1][3]).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("links are group elements with form-based inverses") {
  for (Mode mode : {Mode::so5, Mode::deSitter, Mode::poincare}) {
    CAPTURE(mode_name(mode));
    const BumpPotential bp = make_bump(mode, 11);
    LatticeSpec spec;
    spec.cells = {2, 2, 2, 2};
    spec.eps = 0.3;
    spec.origin = Vec4::Constant(0.15);
    spec.mode = mode;
    const LinkField links = build_links(spec, as_closure(bp));
    const std::array<int, 4> v{1, 1, 1, 1};
    for (int mu = 0; mu < 4; ++mu) {
      const Mat5 u = links.at(v, mu);
      CHECK(group_element_residual(mode, u) <= 1e-12);
      CHECK((u * group_inverse(mode, u) - Mat5::Identity())
                .cwiseAbs()
                .maxCoeff() <= 1e-12);
    }
    if (mode == Mode::so5) {
      const Mat5 u = links.at(v, 0);
      CHECK((u * u.transpose() - Mat5::Identity()).cwiseAbs().maxCoeff() <=
            1e-12);
    }
  }
}

TEST_CASE("single plaquette reproduces half the squared curvature") {
  const BumpPotential bp = make_bump(Mode::so5, 23);
  const Vec4 base(0.42, 0.47, 0.55, 0.38);
  const double eps = 0.01;
  LatticeSpec spec;
  spec.cells = {1, 1, 1, 1};
  spec.eps = eps;
  spec.origin = base;
  const LinkField links = build_links(spec, as_closure(bp));
  for (int m = 0; m < 4; ++m)
    for (int n = m + 1; n < 4; ++n) {
      Vec4 xc = base;
      xc[m] += 0.5 * eps;
      xc[n] += 0.5 * eps;
      const Mat5 fm = bp.f(xc, m, n);
      const double expected = 0.5 * std::pow(eps, 4) * (fm * fm).trace();
      const double got =
          plaquette(links, {0, 0, 0, 0}, m, n).trace() - 5.0;
      // expected ~ eps^4, far below doctest::Approx's default scale of 1.0,
      // so the relative tolerance must be spelled out by hand.
      CHECK(std::abs(got - expected) <= 2e-3 * std::abs(expected));
    }
}

TEST_CASE("Wilson sum converges to the continuum action at second order") {
  const TrigPotential tp = make_trig(Mode::so5, 7);
  const auto a = [tp](const Vec4& x, int dir) { return tp.a(x, dir); };
  const auto f = [tp](const Vec4& x, int m, int n) { return tp.f(x, m, n); };
  const ConvergenceStudy study = wilson_convergence(
      a, f, Vec4::Zero(), 1.0, {4, 8, 16}, 32, Mode::so5, true);
  REQUIRE(study.errors.size() == 3);
  CHECK(std::abs(study.continuum) > 1e-2);  // nontrivial configuration
  CHECK(study.errors[1] < study.errors[0]);
  CHECK(study.errors[2] < study.errors[1]);
  CHECK(study.fitted_order >= 1.9);
  CHECK(study.fitted_order <= 2.3);
}

TEST_CASE("Wilson sum is invariant under per-vertex rotations") {
  for (Mode mode : {Mode::so5, Mode::deSitter}) {
    CAPTURE(mode_name(mode));
    const BumpPotential bp = make_bump(mode, 31);
    LatticeSpec spec;
    spec.cells = {3, 3, 3, 3};
    spec.eps = 0.25;
    spec.origin = Vec4::Constant(0.1);
    spec.mode = mode;
    const LinkField links = build_links(spec, as_closure(bp));
    const WilsonResult base = wilson_action(links);
    REQUIRE(std::abs(base.action) > 1e-8);

    const Generators gen = build_generators(mode);
    const auto omega = [&gen](const std::array<int, 4>& v) {
      // Deterministic per-vertex group element.
      Vec4 grow;
      Mat4 hrow = Mat4::Zero();
      for (int b = 0; b < 4; ++b)
        grow[b] = 0.4 * std::sin(1.7 * v[0] + 0.9 * v[1] + 0.5 * v[2] +
                                 1.3 * v[3] + 0.7 * b);
      for (int b = 0; b < 4; ++b)
        for (int c = b + 1; c < 4; ++c) {
          hrow(b, c) = 0.3 * std::cos(0.8 * v[0] + 1.1 * v[1] + 0.6 * v[2] +
                                      0.9 * v[3] + 0.4 * b + 1.9 * c);
          hrow(c, b) = -hrow(b, c);
        }
      return exp_map(lattice_slice(gen, grow, hrow));
    };
    const WilsonResult rotated = wilson_action(gauge_rotated(links, omega));
    CHECK(rotated.plaquette_count == base.plaquette_count);
    CHECK(std::abs(rotated.action - base.action) <=
          1e-10 * std::max(1.0, std::abs(base.action)));
  }
}

TEST_CASE("periodic Wilson sum is invariant under wrapped rotations") {
  const TrigPotential tp = make_trig(Mode::so5, 53);
  const auto a = [tp](const Vec4& x, int dir) { return tp.a(x, dir); };
  LatticeSpec spec;
  spec.cells = {4, 4, 4, 4};
  spec.eps = 0.25;
  spec.periodic = true;
  const LinkField links = build_links(spec, a);
  const WilsonResult base = wilson_action(links);
  REQUIRE(std::abs(base.action) > 1e-4);
  CHECK(base.plaquette_count == 6L * 4 * 4 * 4 * 4);

  const Generators gen = build_generators(Mode::so5);
  const auto omega = [&gen](const std::array<int, 4>& v) {
    Vec4 grow;
    Mat4 hrow = Mat4::Zero();
    for (int b = 0; b < 4; ++b)
      grow[b] = 0.5 * std::sin(2.3 * v[0] + 0.7 * v[1] + 1.9 * v[2] +
                               1.1 * v[3] + 0.6 * b);
    for (int b = 0; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c) {
        hrow(b, c) = 0.4 * std::cos(1.4 * v[0] + 0.9 * v[1] + 1.2 * v[2] +
                                    0.5 * v[3] + 1.7 * b + 0.8 * c);
        hrow(c, b) = -hrow(b, c);
      }
    return exp_map(lattice_slice(gen, grow, hrow));
  };
  const WilsonResult rotated = wilson_action(gauge_rotated(links, omega));
  CHECK(std::abs(rotated.action - base.action) <=
        1e-10 * std::max(1.0, std::abs(base.action)));
}

TEST_CASE("holonomies compose: a rectangle splits into transported squares") {
  const BumpPotential bp = make_bump(Mode::so5, 47);
  LatticeSpec spec;
  spec.cells = {2, 2, 2, 2};
  spec.eps = 0.2;
  spec.origin = Vec4::Constant(0.25);
  const LinkField links = build_links(spec, as_closure(bp));
  const std::array<int, 4> x{0, 0, 0, 0};
  const int m = 0, n = 2;

  std::array<int, 4> xm = x, xmm = x, xmn = x, xn = x;
  xm[m] += 1;
  xmm[m] += 2;
  xmn[m] += 1;
  xmn[n] += 1;
  xn[n] += 1;
  const Mode mode = spec.mode;
  const Mat5 rect = links.at(x, m) * links.at(xm, m) * links.at(xmm, n) *
                    group_inverse(mode, links.at(xmn, m)) *
                    group_inverse(mode, links.at(xn, m)) *
                    group_inverse(mode, links.at(x, n));
  const Mat5 near = plaquette(links, x, m, n);
  const Mat5 far = plaquette(links, xm, m, n);
  const Mat5 t = links.at(x, m);
  const Mat5 composed = t * far * group_inverse(mode, t) * near;
  CHECK((rect - composed).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("label transport reproduces coordinates for a unit drift potential") {
  Potential unit;
  unit.g = [](const Vec4&) { return Mat4(Mat4::Identity()); };
  unit.dg = [](const Vec4&, int) { return Mat4(Mat4::Zero()); };

  LatticeSpec spec;
  spec.cells = {3, 3, 3, 3};
  spec.eps = 0.25;  // binary-exact spacing
  const std::array<int, 4> seed{1, 2, 0, 1};
  const Vec4 seed_y(0.5, -0.25, 0.75, 0.0);
  const LabelField lab = propagate_labels(spec, unit, seed, seed_y, 1.0);

  const Vec4 x_seed = spec.coarse_point(seed);
  std::array<int, 4> f{};
  for (f[0] = 0; f[0] < lab.fine_shape[0]; ++f[0])
    for (f[1] = 0; f[1] < lab.fine_shape[1]; ++f[1])
      for (f[2] = 0; f[2] < lab.fine_shape[2]; ++f[2])
        for (f[3] = 0; f[3] < lab.fine_shape[3]; ++f[3]) {
          const Vec4 expected = seed_y + (spec.fine_point(f) - x_seed);
          const Vec4 got = lab.at(f);
          for (int b = 0; b < 4; ++b) CHECK(got[b] == expected[b]);  // exact
        }

  // Bitwise reproducibility across runs.
  const LabelField again = propagate_labels(spec, unit, seed, seed_y, 1.0);
  REQUIRE(again.y.size() == lab.y.size());
  CHECK(std::memcmp(again.y.data(), lab.y.data(),
                    lab.y.size() * sizeof(Vec4)) == 0);
}

TEST_CASE("a rotation component shears transported labels") {
  const double h = 0.3;
  Potential pot;
  pot.g = [](const Vec4&) { return Mat4(Mat4::Identity()); };
  pot.h = [h](const Vec4&) {
    Rank3 r;
    r(1, 1, 2) = h;
    r(1, 2, 1) = -h;
    return r;
  };
  pot.dg = [](const Vec4&, int) { return Mat4(Mat4::Zero()); };
  pot.dh = [](const Vec4&, int) { return Rank3{}; };

  LatticeSpec spec;
  spec.cells = {2, 2, 2, 2};
  spec.eps = 0.25;
  const Vec4 seed_y(0.2, 0.4, 0.6, 0.8);
  const double y4 = 1.0;
  const LabelField lab =
      propagate_labels(spec, pot, {0, 0, 0, 0}, seed_y, y4);

  // One full hop along axis 1.
  const Vec4 w = lab.at_coarse({0, 1, 0, 0});
  const double eps = spec.eps;
  CHECK(w[0] == doctest::Approx(seed_y[0]).epsilon(1e-15));
  CHECK(w[1] ==
        doctest::Approx(seed_y[1] + eps * (y4 + h * seed_y[2])).epsilon(1e-14));
  CHECK(w[2] ==
        doctest::Approx(seed_y[2] - eps * h * seed_y[1]).epsilon(1e-14));
  CHECK(w[3] == doctest::Approx(seed_y[3]).epsilon(1e-15));

  // The intermediate fine vertex is the same drift at half the step.
  const Vec4 mid = lab.at({0, 1, 0, 0});
  CHECK(mid[1] == doctest::Approx(seed_y[1] + 0.5 * eps * (y4 + h * seed_y[2]))
                      .epsilon(1e-14));
  CHECK(mid[2] ==
        doctest::Approx(seed_y[2] - 0.5 * eps * h * seed_y[1]).epsilon(1e-14));

  CHECK_THROWS_AS(propagate_labels(spec, pot, {5, 0, 0, 0}, seed_y, y4),
                  std::invalid_argument);
}
