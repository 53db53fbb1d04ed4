#pragma once

#include "dsg/tensors.hpp"

namespace dsg {

// Point source carrying circulation of momentum (p) and spin (s).
struct VortexSource {
  Vec3 p = Vec3::Zero();
  Vec3 s = Vec3::Zero();
};

// Antisymmetric circulation matrix: S_{0i} = p_i, S_{ij} = eps_{ijk} s_k.
Mat4 spin_matrix(const VortexSource& src);

// Quadratic stress-energy tensor (all indices down):
// T_{mu nu} = -[ S_{mu lam} S^{lam}_{nu} + 1/4 eta_{mu nu} S_{ab} S^{ab} ].
Mat4 stress_tensor(const Mat4& s);

// Same tensor assembled from its energy/flux/stress blocks:
// T_00 = (p^2+s^2)/2, T_{0i} = (p x s)_i, T_{ij} = -P_{ij} with
// P_{ij} = p_i p_j + s_i s_j - (p^2+s^2)/2 delta_ij.
Mat4 block_stress_tensor(const VortexSource& src);

Vec3 energy_flux(const VortexSource& src);  // p x s

// Mass normalization used by the point-source solutions.
double rest_mass(const VortexSource& src);  // p.p + s.s

// Lorentz boost with 3-velocity v (|v| < 1): returns Lambda T Lambda^T.
Mat4 boost_matrix(const Vec3& v);
Mat4 boost_stress_tensor(const Mat4& t, const Vec3& v);

double eta_trace(const Mat4& t);  // eta^{mu nu} T_{mu nu}

}  // namespace dsg
