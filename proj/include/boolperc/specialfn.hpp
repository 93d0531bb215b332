// SPDX-License-Identifier: Apache-2.0
//
// Ball, cap and lens volumes, sin-power integrals, Gauss-Legendre quadrature
// and bisection. Everything here is pure and reentrant.

#pragma once

#include <functional>
#include <vector>

namespace boolperc {

/// Gauss-Legendre rule on an interval (a, b).
struct Quadrature {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> nodes;    // strictly increasing, inside (a, b)
  std::vector<double> weights;  // positive, sum to b - a
  int order = 0;

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

/// Volume of the d-dimensional unit ball, pi^(d/2) / Gamma(d/2 + 1).
/// Computed by the exact half-integer recursion v_d = v_{d-2} * 2*pi/d.
double ball_volume(int d);

/// J_m(theta) = integral of sin^m over [0, theta], theta in [0, pi].
double sin_power_integral(int m, double theta);

/// Volume of the cap of height h (0 <= h <= R) of a d-ball of radius R.
double cap_volume(int d, double R, double h);

/// Volume of B_R(0) intersected with B_R(r e_1). Zero for r >= 2R.
double lens_volume(int d, double R, double r);

/// Gauss-Legendre nodes and weights of the given order mapped to (a, b).
Quadrature quadrature_on(double a, double b, int order);

/// Integrate f over (a, b) with Gauss-Legendre, starting at `order` and
/// doubling until successive results agree to `rel_tol`.
struct ConvergedIntegral {
  double value = 0.0;
  double previous = 0.0;  // result at half the final order
  int order = 0;
  bool converged = false;
};
ConvergedIntegral integrate_converged(const std::function<double(double)>& f, double a, double b,
                                      int order = 200, double rel_tol = 1e-10, int max_order = 6400);

/// Bisection for a nondecreasing f with f(lo) < 0 < f(hi). Returns the
/// midpoint once the bracket is narrower than tol. Throws BracketError when
/// the sign condition fails at the ends.
double find_root_increasing(const std::function<double(double)>& f, double lo, double hi, double tol);

/// Standard normal quantile. Acklam's rational approximation refined by one
/// Halley step against std::erfc; absolute error well below 1e-12 on
/// (1e-300, 1 - 1e-16).
double normal_quantile(double p);

}  // namespace boolperc
