#pragma once

// Test-only reference computations. None of these call into the code paths
// they are used to check.

#include <cmath>
#include <functional>

#include "clines/trajectory.hpp"

namespace clines::oracle {

inline double central_difference(const std::function<double(double)>& g, double s, double eps) {
  return (g(s + eps) - g(s - eps)) / (2.0 * eps);
}

inline double second_difference(const std::function<double(double)>& g, double s, double eps) {
  return (g(s + eps) - 2.0 * g(s) + g(s - eps)) / (eps * eps);
}

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& g, double a, double b, int n) {
  const double h = (b - a) / n;
  double acc = g(a) + g(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * g(a + i * h);
  return acc * h / 3.0;
}

/// Exact solution of p'' + lambda w(x) p = 0 (f(s) = s) with p(omega1) = r,
/// p'(omega1) = 0: cosh on the left piece (w = -alpha), cos/sin on the right.
inline PhasePoint linear_exact(double alpha, double omega1, double lambda, double r, double x) {
  const double k = std::sqrt(lambda * alpha);
  if (x <= 0.0) {
    const double t = x - omega1;
    return {r * std::cosh(k * t), r * k * std::sinh(k * t)};
  }
  const double u0 = r * std::cosh(-k * omega1);
  const double v0 = r * k * std::sinh(-k * omega1);
  const double q = std::sqrt(lambda);
  return {u0 * std::cos(q * x) + v0 / q * std::sin(q * x),
          -u0 * q * std::sin(q * x) + v0 * std::cos(q * x)};
}

}  // namespace clines::oracle
