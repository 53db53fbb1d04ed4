#pragma once

#include <functional>
#include <vector>

#include "dsg/algebra.hpp"
#include "dsg/tensors.hpp"

namespace dsg {

// Smooth gauge potential split into its translation components G_{mu nu}
// and rotation components H_{mu a b} (antisymmetric in a,b). Exact
// derivative closures are optional; finite differences fill in otherwise.
struct Potential {
  std::function<Mat4(const Vec4&)> g;
  std::function<Rank3(const Vec4&)> h;
  std::function<Mat4(const Vec4&, int)> dg;   // dg(x,m) = d_m G
  std::function<Rank3(const Vec4&, int)> dh;  // dh(x,m) = d_m H
  double fd_step = 1e-3;
  int fd_order = 4;  // 2 or 4

  Mat4 eval_g(const Vec4& x) const { return g(x); }
  Rank3 eval_h(const Vec4& x) const { return h ? h(x) : Rank3{}; }
  Mat4 eval_dg(const Vec4& x, int m) const;
  Rank3 eval_dh(const Vec4& x, int m) const;

  static Potential flat();
};

// External sources: rank-2 (energy-momentum) and rank-3 (angular momentum)
// current densities.
struct SourceField {
  std::function<Mat4(const Vec4&)> t;
  std::function<Rank3(const Vec4&)> s;
  Mat4 eval_t(const Vec4& x) const { return t ? t(x) : Mat4::Zero(); }
  Rank3 eval_s(const Vec4& x) const { return s ? s(x) : Rank3{}; }
  static SourceField vacuum() { return SourceField{}; }
};

// Field strengths. The translation-sector commutator contributes the GG
// antisymmetrization only when the mode's translations do not commute.
Rank3 field_e(const Potential& pot, const Vec4& x, Mode mode);
Rank4 field_f(const Potential& pot, const Vec4& x, Mode mode);

// Covariant field-equation residuals (source subtracted). Derivatives of
// the field strengths are taken by central differences with the given step
// and order, so smooth configurations converge at that stencil order.
Mat4 eq_t_residual(const Potential& pot, const SourceField& src, const Vec4& x,
                   Mode mode, double d_step = 1e-2, int d_order = 4);
Rank3 eq_s_residual(const Potential& pot, const SourceField& src,
                    const Vec4& x, Mode mode, double d_step = 1e-2,
                    int d_order = 4);

// Covariant divergence of the sources; vanishes identically when the
// sources are defined by the left-hand sides of the field equations.
Vec4 continuity_v_residual(const Potential& pot, const SourceField& src,
                           const Vec4& x, Mode mode, double d_step = 1e-2,
                           int d_order = 4);
Mat4 continuity_m_residual(const Potential& pot, const SourceField& src,
                           const Vec4& x, Mode mode, double d_step = 1e-2,
                           int d_order = 4);

// Infinitesimal gauge parameters with exact derivative closures, so that
// transformed potentials keep analytic first derivatives.
struct GaugeField {
  std::function<Vec4(const Vec4&)> xi;
  std::function<Mat4(const Vec4&)> chi;     // antisymmetric
  std::function<Mat4(const Vec4&)> dxi;     // (m,n) = d_m xi_n
  std::function<Rank3(const Vec4&)> dchi;   // (m,a,b) = d_m chi_ab
  std::function<Rank3(const Vec4&)> ddxi;   // (k,m,n) = d_k d_m xi_n
  std::function<Rank4(const Vec4&)> ddchi;  // (k,m,a,b) = d_k d_m chi_ab
};

Potential gauge_transformed(const Potential& pot, const GaugeField& gauge,
                            double lambda, Mode mode);

// Yang-Mills action density 1/4 sum eta^m eta^n tr(Fmat_{mn}^2) built from
// the matrix-valued curvature, and its Simpson quadrature over a box.
double action_density(const Potential& pot, const Vec4& x, Mode mode);
double action_box(const Potential& pot, const Vec4& lo, const Vec4& hi,
                  int intervals, Mode mode);

// Linearized (abelian) wave-operator residual of the rank-2 equation.
Mat4 abelian_residual(const Potential& pot, const SourceField& src,
                      const Vec4& x, double d_step = 1e-2, int d_order = 4);

// Max over sample points of |full rank-2 residual - abelian residual|:
// quantifies the translation-commutator coupling terms in the given mode.
double abelian_limit_gap(const Potential& pot, const SourceField& src,
                         const std::vector<Vec4>& pts, Mode mode,
                         double d_step = 1e-2, int d_order = 4);

// Matrix-valued curvature slice assembled through the generator basis;
// used to cross-check the component formulas against raw commutators.
Mat5 curvature_matrix(const Generators& gen, const Potential& pot,
                      const Vec4& x, int m, int n);

}  // namespace dsg
