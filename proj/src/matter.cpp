#include "dsg/matter.hpp"

#include <stdexcept>

namespace dsg {

Mat4 spin_matrix(const VortexSource& src) {
  Mat4 s = Mat4::Zero();
  for (int i = 0; i < 3; ++i) {
    s(0, i + 1) = src.p[i];
    s(i + 1, 0) = -src.p[i];
  }
  s(1, 2) = src.s[2];
  s(2, 1) = -src.s[2];
  s(1, 3) = -src.s[1];
  s(3, 1) = src.s[1];
  s(2, 3) = src.s[0];
  s(3, 2) = -src.s[0];
  return s;
}

Mat4 stress_tensor(const Mat4& s) {
  const Mat4 eta = minkowski();
  const Mat4 s_up = eta * s;  // S^{lam}_{nu} = eta^{lam kap} S_{kap nu}
  const Mat4 quad = s * s_up;
  double scalar = 0.0;  // S_{ab} S^{ab}
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      scalar += kEta[a] * kEta[b] * s(a, b) * s(a, b);
  return -(quad + 0.25 * scalar * eta);
}

Mat4 block_stress_tensor(const VortexSource& src) {
  const double m = src.p.squaredNorm() + src.s.squaredNorm();
  const Vec3 u = energy_flux(src);
  Mat4 t = Mat4::Zero();
  t(0, 0) = 0.5 * m;
  for (int i = 0; i < 3; ++i) {
    t(0, i + 1) = u[i];
    t(i + 1, 0) = u[i];
    for (int j = 0; j < 3; ++j) {
      const double pij = src.p[i] * src.p[j] + src.s[i] * src.s[j] -
                         0.5 * m * (i == j ? 1.0 : 0.0);
      t(i + 1, j + 1) = -pij;
    }
  }
  return t;
}

Vec3 energy_flux(const VortexSource& src) { return src.p.cross(src.s); }

double rest_mass(const VortexSource& src) {
  return src.p.squaredNorm() + src.s.squaredNorm();
}

Mat4 boost_matrix(const Vec3& v) {
  const double v2 = v.squaredNorm();
  if (v2 >= 1.0) throw std::invalid_argument("boost velocity must be < 1");
  Mat4 lam = Mat4::Identity();
  if (v2 == 0.0) return lam;
  const double gamma = 1.0 / std::sqrt(1.0 - v2);
  lam(0, 0) = gamma;
  for (int i = 0; i < 3; ++i) {
    lam(0, i + 1) = gamma * v[i];
    lam(i + 1, 0) = gamma * v[i];
    for (int j = 0; j < 3; ++j)
      lam(i + 1, j + 1) += (gamma - 1.0) * v[i] * v[j] / v2;
  }
  return lam;
}

Mat4 boost_stress_tensor(const Mat4& t, const Vec3& v) {
  const Mat4 lam = boost_matrix(v);
  return lam * t * lam.transpose();
}

double eta_trace(const Mat4& t) {
  double tr = 0.0;
  for (int a = 0; a < 4; ++a) tr += kEta[a] * t(a, a);
  return tr;
}

}  // namespace dsg
