#pragma once

#include <array>
#include <functional>
#include <vector>

#include "dsg/algebra.hpp"
#include "dsg/field.hpp"
#include "dsg/tensors.hpp"

namespace dsg {

// Matrix-valued potential: spacetime point and direction index to an
// algebra element.
using MatrixPotential = std::function<Mat5(const Vec4&, int)>;

// Hypercubic lattice of cells with side eps. Coarse vertices sit at
// origin + eps * (i0, i1, i2, i3) with 0 <= i_a <= cells[a]; the midpoints
// of links and cells form the fine sublattice at spacing eps / 2. With
// periodic = true vertex indices wrap modulo cells and every site carries
// four links; the potential is expected to share the period cells * eps.
struct LatticeSpec {
  std::array<int, 4> cells{4, 4, 4, 4};
  double eps = 0.25;
  Vec4 origin = Vec4::Zero();
  Mode mode = Mode::so5;
  bool periodic = false;

  Vec4 coarse_point(const std::array<int, 4>& v) const {
    Vec4 x = origin;
    for (int a = 0; a < 4; ++a) x[a] += eps * v[a];
    return x;
  }
  Vec4 fine_point(const std::array<int, 4>& f) const {
    Vec4 x = origin;
    for (int a = 0; a < 4; ++a) x[a] += 0.5 * eps * f[a];
    return x;
  }
};

// Algebra embedding of one potential row with lower-index components:
// A_a = sum_b G_{ab} V_b + sum_{b<c} H_{abc} M_{bc}.
Mat5 lattice_slice(const Generators& gen, const Vec4& g_row, const Mat4& h_row);

// Wrap component closures as a matrix potential through lattice_slice.
MatrixPotential matrix_potential(const Generators& gen, const Potential& pot);

// Exact group inverse obtained from the invariant structure of each mode
// (transpose conjugated by the carrier form; affine block inverse for
// commuting translations).
Mat5 group_inverse(Mode mode, const Mat5& u);

// Stored parallel transporters: u(v, mu) carries labels from coarse vertex
// v to v + e_mu and equals exp(eps * A_mu) evaluated at the link midpoint.
struct LinkField {
  LatticeSpec spec;
  std::array<int, 4> verts{};  // cells + 1 per axis (cells when periodic)
  std::vector<Mat5> u;

  long site_index(const std::array<int, 4>& v) const;
  const Mat5& at(const std::array<int, 4>& v, int mu) const;
  Mat5& at(const std::array<int, 4>& v, int mu);
};

LinkField build_links(const LatticeSpec& spec, const MatrixPotential& a);

// Holonomy around the unit square based at v in the (m, n) plane.
Mat5 plaquette(const LinkField& links, const std::array<int, 4>& v, int m,
               int n);

struct WilsonResult {
  double action = 0.0;  // sum over plaquettes of w_p (Re tr U_p - 5)
  long plaquette_count = 0;
};

// Plaquette weight w_p = eta^m eta^n (unity in the compact mode).
WilsonResult wilson_action(const LinkField& links);

// Links conjugated by per-vertex group elements:
// u(v, mu) -> omega(v) u(v, mu) omega(v + e_mu)^{-1}.
LinkField gauge_rotated(
    const LinkField& links,
    const std::function<Mat5(const std::array<int, 4>&)>& omega);

// Simpson quadrature of 1/4 sum_{mn} eta^m eta^n tr(F_{mn}^2) over a box,
// for an analytic curvature closure; continuum reference for Wilson sums.
double continuum_action_box(
    const std::function<Mat5(const Vec4&, int, int)>& fmat, const Vec4& lo,
    const Vec4& hi, int intervals, Mode mode);

struct ConvergenceStudy {
  std::vector<double> spacings;
  std::vector<double> actions;
  std::vector<double> errors;  // |wilson - continuum|
  double continuum = 0.0;
  double fitted_order = 0.0;
};

// Wilson action of the same potential over [origin, origin + extent]^4 at a
// sequence of cell counts, compared against the continuum quadrature. Pass
// periodic = true for potentials with period extent in every axis.
ConvergenceStudy wilson_convergence(
    const MatrixPotential& a,
    const std::function<Mat5(const Vec4&, int, int)>& fmat,
    const Vec4& origin, double extent, const std::vector<int>& divisions,
    int quad_intervals, Mode mode, bool periodic = false);

// Smooth globally analytic configuration with an exact curvature closure:
// each direction carries a fixed random algebra element scaled by a
// sinusoidal profile with an integer wave vector, so the potential is
// periodic with period `extent` in every axis. Suitable input for
// wilson_convergence with periodic = true.
struct AnalyticConfiguration {
  MatrixPotential a;
  std::function<Mat5(const Vec4&, int, int)> fmat;  // curvature F_{mn}
};

AnalyticConfiguration plane_wave_configuration(Mode mode, unsigned seed,
                                               double extent,
                                               double amplitude = 0.15);

// ---- label transport ----

struct LabelField {
  LatticeSpec spec;
  std::array<int, 4> fine_shape{};  // 2 * cells + 1 per axis
  std::vector<Vec4> y;              // label vectors, fine-site major
  double y4 = 1.0;                  // affine component, frozen at the seed

  long index(const std::array<int, 4>& f) const;
  const Vec4& at(const std::array<int, 4>& f) const;
  const Vec4& at_coarse(const std::array<int, 4>& v) const;
};

// Deterministic transport of labels outward from a coarse seed vertex.
// Even (coarse) vertices are filled breadth-first with full hops; every
// remaining fine vertex is filled by a half hop from its predecessor along
// its first odd axis. Both hops apply
//   w_b = y_b + step * (G_{ab} y4 + sum_c H_{abc} y_c)
// with the potential components evaluated at the hop's own fine site (the
// link midpoint for full hops, the vertex itself for half hops).
LabelField propagate_labels(const LatticeSpec& spec, const Potential& pot,
                            const std::array<int, 4>& seed_coarse,
                            const Vec4& seed_y, double y4);

}  // namespace dsg
