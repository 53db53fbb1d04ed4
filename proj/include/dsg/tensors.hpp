#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>

namespace dsg {

using Mat4 = Eigen::Matrix4d;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;

// Minkowski signature used throughout: (-,+,+,+).
inline constexpr std::array<double, 4> kEta = {-1.0, 1.0, 1.0, 1.0};

inline Mat4 minkowski() {
  Mat4 eta = Mat4::Zero();
  for (int i = 0; i < 4; ++i) eta(i, i) = kEta[i];
  return eta;
}

// Rank-3 tensor with all spacetime indices, stored dense.
struct Rank3 {
  std::array<double, 64> v{};
  double& operator()(int m, int a, int b) { return v[(m * 4 + a) * 4 + b]; }
  double operator()(int m, int a, int b) const { return v[(m * 4 + a) * 4 + b]; }
  Rank3& operator+=(const Rank3& o) {
    for (int i = 0; i < 64; ++i) v[i] += o.v[i];
    return *this;
  }
  Rank3 operator-(const Rank3& o) const {
    Rank3 r;
    for (int i = 0; i < 64; ++i) r.v[i] = v[i] - o.v[i];
    return r;
  }
  double max_abs() const {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
};

// Rank-4 tensor with all spacetime indices, stored dense.
struct Rank4 {
  std::array<double, 256> v{};
  double& operator()(int m, int n, int a, int b) {
    return v[((m * 4 + n) * 4 + a) * 4 + b];
  }
  double operator()(int m, int n, int a, int b) const {
    return v[((m * 4 + n) * 4 + a) * 4 + b];
  }
  Rank4 operator-(const Rank4& o) const {
    Rank4 r;
    for (int i = 0; i < 256; ++i) r.v[i] = v[i] - o.v[i];
    return r;
  }
  double max_abs() const {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
};

}  // namespace dsg
