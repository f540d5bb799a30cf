#ifndef KOENIGS_ODE_HPP
#define KOENIGS_ODE_HPP

// Backward Kolmogorov equation dF/dt = f(F), F(0,s) = s, solved by an
// embedded Dormand-Prince 5(4) pair with PI step control.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "koenigs/model.hpp"
#include "koenigs/numeric.hpp"

namespace koenigs {

struct OdeSolution {
  BranchingModel<double> model;
  double t = 0;
  double s0 = 0;
  double value = 0;
  int accepted = 0;
  int rejected = 0;
  double max_local_error = 0;
};

inline OdeSolution solve_F(const BranchingModel<double>& m, double t, double s,
                           double tol = 1e-11) {
  if (t < 0.0) throw std::invalid_argument("solve_F: t < 0");
  if (s < 0.0 || s > 1.0) throw std::invalid_argument("solve_F: s outside [0,1]");
  OdeSolution out{m, t, s, s, 0, 0, 0.0};
  if (t == 0.0) return out;

  auto f = [&](double x) { return m.big_k * (std::exp(m.lambda * (x - 1.0)) - x); };

  // Dormand-Prince coefficients
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  double x = s;
  double time = 0.0;
  double k1 = f(x);
  double hstep = std::min(t, 0.1 / (1.0 + std::abs(k1)));
  double errold = 1.0;
  const double hmin = t * 1e-15;

  while (time < t) {
    if (hstep > t - time) hstep = t - time;
    const double k2 = f(x + hstep * a21 * k1);
    const double k3 = f(x + hstep * (a31 * k1 + a32 * k2));
    const double k4 = f(x + hstep * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = f(x + hstep * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double k6 = f(x + hstep * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double xn = x + hstep * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = f(xn);
    const double errterm =
        hstep * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sc = tol + tol * std::max(std::abs(x), std::abs(xn));
    const double err = std::abs(errterm) / sc;

    if (err <= 1.0) {
      time += hstep;
      x = xn;
      k1 = k7;  // FSAL
      ++out.accepted;
      out.max_local_error = std::max(out.max_local_error, std::abs(errterm));
      const double fac = 0.9 * std::pow(err > 0 ? err : 1e-10, -0.7 / 5.0) *
                         std::pow(errold > 0 ? errold : 1e-10, 0.4 / 5.0);
      hstep *= std::clamp(fac, 0.2, 5.0);
      errold = std::max(err, 1e-10);
    } else {
      ++out.rejected;
      hstep *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (hstep < hmin) throw numerical_error("solve_F: step size underflow");
    }
  }

  if (x < -1e-12 || x > 1.0 + 1e-12)
    throw numerical_error("solve_F: solution left [0,1] beyond clamp tolerance");
  out.value = std::clamp(x, 0.0, 1.0);
  return out;
}

}  // namespace koenigs

#endif  // KOENIGS_ODE_HPP
