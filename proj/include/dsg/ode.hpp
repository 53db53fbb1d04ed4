#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace dsg {

// Adaptive Dormand-Prince 5(4) integrator for dense state vectors.
// Accuracy is controlled by a combined absolute/relative error target.
struct OdeOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double initial_step = 1e-3;
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 50'000'000;
};

struct OdeSample {
  double t;
  Eigen::VectorXd y;
};

using OdeRhs =
    std::function<void(double, const Eigen::VectorXd&, Eigen::VectorXd&)>;

class DormandPrince {
 public:
  explicit DormandPrince(OdeRhs rhs, OdeOptions opt = {})
      : rhs_(std::move(rhs)), opt_(opt) {}

  // Integrate from (t0, y0) to t_end; calls observer after each accepted
  // step (including the initial state).
  Eigen::VectorXd integrate(
      double t0, Eigen::VectorXd y, double t_end,
      const std::function<void(double, const Eigen::VectorXd&)>& observer =
          nullptr) const {
    const int n = static_cast<int>(y.size());
    Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);
    Eigen::VectorXd ytmp(n), y5(n), y4(n);
    double t = t0;
    const double dir = (t_end >= t0) ? 1.0 : -1.0;
    double h = dir * std::min(opt_.initial_step, std::abs(t_end - t0));
    if (observer) observer(t, y);
    rhs_(t, y, k1);
    long steps = 0;
    while (dir * (t_end - t) > 0) {
      if (++steps > opt_.max_steps)
        throw std::runtime_error("ode integrator exceeded max step count");
      if (dir * (t + h - t_end) > 0) h = t_end - t;

      ytmp = y + h * (a21 * k1);
      rhs_(t + c2 * h, ytmp, k2);
      ytmp = y + h * (a31 * k1 + a32 * k2);
      rhs_(t + c3 * h, ytmp, k3);
      ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
      rhs_(t + c4 * h, ytmp, k4);
      ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      rhs_(t + c5 * h, ytmp, k5);
      ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      rhs_(t + h, ytmp, k6);
      y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      rhs_(t + h, y5, k7);
      y4 = y + h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

      double err = 0.0;
      for (int i = 0; i < n; ++i) {
        const double sc =
            opt_.abs_tol +
            opt_.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
        const double e = (y5[i] - y4[i]) / sc;
        err += e * e;
      }
      err = std::sqrt(err / n);

      if (err <= 1.0) {
        t += h;
        y.swap(y5);
        k1.swap(k7);  // FSAL; on rejection k1 is still valid at (t, y)
        if (observer) observer(t, y);
      }
      const double fac =
          0.9 * std::pow(std::max(err, 1e-10), -0.2);
      h *= std::min(5.0, std::max(0.2, fac));
      if (std::abs(h) > opt_.max_step) h = dir * opt_.max_step;
      if (!(std::abs(h) > 0.0))
        throw std::runtime_error("ode integrator step underflow");
    }
    return y;
  }

 private:
  OdeRhs rhs_;
  OdeOptions opt_;

  // Dormand-Prince coefficients.
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double d1 = 5179.0 / 57600, d3 = 7571.0 / 16695,
                          d4 = 393.0 / 640, d5 = -92097.0 / 339200,
                          d6 = 187.0 / 2100, d7 = 1.0 / 40;
};

}  // namespace dsg
