#pragma once

#include <array>
#include <string>
#include <vector>

#include "dsg/tensors.hpp"

namespace dsg {

// Gauge group variants sharing one generator layout: four "translation-like"
// generators V_0..V_3 and six rotation/boost generators M_ab (a < b).
enum class Mode { deSitter, so5, poincare };

std::string mode_name(Mode m);
Mode mode_from_name(const std::string& name);

// Invariant bilinear form on the 5-dimensional carrier space.
// deSitter: diag(-1,1,1,1,1); so5: identity; poincare uses the deSitter
// labels but its translations act affinely instead of preserving a form.
Mat5 carrier_form(Mode mode);

struct Generators {
  Mode mode;
  std::array<Mat5, 4> V;                  // indexed by spacetime label 0..3
  std::array<std::array<Mat5, 4>, 4> M;   // antisymmetric in (a,b); M[a][a]=0
};

Generators build_generators(Mode mode);

inline Mat5 commutator(const Mat5& x, const Mat5& y) { return x * y - y * x; }

struct AlgebraReport {
  Mode mode{};
  double sigma = 0.0;              // fitted scale of the commutator relations
  double max_vv_residual = 0.0;    // [V_a,V_b] family
  double max_mv_residual = 0.0;    // [M_ab,V_c] family
  double max_mm_residual = 0.0;    // [M_ab,M_cd] family
  double max_jacobi_residual = 0.0;
  double max_form_residual = 0.0;  // invariant-form / affine-structure check
  bool translations_commute = false;  // exact test of the [V,V] family
};

AlgebraReport verify_algebra(Mode mode);

// Potential components <-> algebra-valued matrix, one spacetime index at a
// time: A = sum_a G_a V^a - sum_{a<b} H_ab M^{ab}, indices raised with eta.
Mat5 compose_potential_slice(const Generators& gen, const Vec4& g_row,
                             const Mat4& h_row);

struct PotentialSlice {
  Vec4 g_row;   // G_{mu a} for fixed mu
  Mat4 h_row;   // H_{mu a b} for fixed mu, antisymmetric in (a,b)
};

PotentialSlice decompose_potential_slice(const Generators& gen, const Mat5& a);

// Curvature projections: the V-sector components and minus the M-sector
// components of an algebra-valued object.
Vec4 project_v_sector(const Generators& gen, const Mat5& omega);
Mat4 project_m_sector_negated(const Generators& gen, const Mat5& omega);

Mat5 exp_map(const Mat5& a);

// Group-element sanity checks. For deSitter/so5, max |g^T Eta g - Eta|.
// For poincare, the affine check: last row must be (0,0,0,0,1) and the 4x4
// block must preserve the Minkowski form.
double group_element_residual(Mode mode, const Mat5& g);

}  // namespace dsg
