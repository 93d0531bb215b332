// SPDX-License-Identifier: Apache-2.0

#include "boolperc/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "boolperc/errors.hpp"

namespace boolperc {
namespace {

constexpr double kPi = std::numbers::pi;

// v_0 = 1, v_1 = 2, v_d = v_{d-2} * 2 pi / d. Exact up to rounding of the
// products, no Gamma evaluation needed.
double unit_ball_volume(int d) {
  double v = (d % 2 == 0) ? 1.0 : 2.0;
  for (int k = (d % 2 == 0) ? 2 : 3; k <= d; k += 2) v *= 2.0 * kPi / k;
  return v;
}

struct ReferenceRule {
  std::vector<double> x;  // on (-1, 1), increasing
  std::vector<double> w;
};

// Newton iteration on P_n from the usual cosine initial guess.
ReferenceRule compute_reference_rule(int n) {
  ReferenceRule rule;
  rule.x.assign(n, 0.0);
  rule.w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p0 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double pm = p0;
        p0 = p1;
        p1 = ((2.0 * k - 1.0) * z * p0 - (k - 1.0) * pm) / k;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double z_prev = z;
      z = z_prev - p1 / dp;
      if (std::abs(z - z_prev) <= 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.x[i] = -z;
    rule.x[n - 1 - i] = z;
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return rule;
}

std::shared_ptr<const ReferenceRule> reference_rule(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const ReferenceRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const ReferenceRule>(compute_reference_rule(n));
  return slot;
}

// J_m on [0, theta] with theta <= pi/2 by Gauss-Legendre. The integrand is
// entire and monotone here, so a fixed moderate order reaches full relative
// precision.
double sin_power_quadrature(int m, double theta) {
  if (theta == 0.0) return 0.0;
  const auto rule = reference_rule(32 + m);
  const double half = 0.5 * theta;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule->x.size(); ++i) {
    const double phi = half * (rule->x[i] + 1.0);
    sum += rule->w[i] * std::pow(std::sin(phi), m);
  }
  return half * sum;
}

}  // namespace

double ball_volume(int d) {
  if (d < 1 || d > 64) throw InvalidArgument("ball_volume: dimension must be in [1, 64], got " + std::to_string(d));
  return unit_ball_volume(d);
}

double sin_power_integral(int m, double theta) {
  if (m < 0) throw InvalidArgument("sin_power_integral: m must be nonnegative");
  if (!(theta >= 0.0 && theta <= kPi)) throw InvalidArgument("sin_power_integral: theta outside [0, pi]");
  if (m == 0) return theta;
  if (m == 1) {
    const double s = std::sin(0.5 * theta);
    return 2.0 * s * s;  // 1 - cos(theta) without cancellation
  }
  if (theta < 0.5 * kPi) return sin_power_quadrature(m, theta);

  // theta >= pi/2: -cos(theta) >= 0, so the forward recurrence
  // J_m = (-cos(theta) sin^{m-1}(theta) + (m-1) J_{m-2}) / m
  // only adds nonnegative terms.
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double j = (m % 2 == 0) ? theta : 2.0 * std::sin(0.5 * theta) * std::sin(0.5 * theta);
  double spow = (m % 2 == 0) ? s : s * s;  // sin^{k-1} for the next k
  for (int k = (m % 2 == 0) ? 2 : 3; k <= m; k += 2) {
    j = (-c * spow + (k - 1.0) * j) / k;
    spow *= s * s;
  }
  return j;
}

double cap_volume(int d, double R, double h) {
  if (d < 1 || d > 64) throw InvalidArgument("cap_volume: dimension must be in [1, 64]");
  if (!(R > 0.0)) throw InvalidArgument("cap_volume: radius must be positive");
  if (!(h >= 0.0 && h <= R)) throw InvalidArgument("cap_volume: height must lie in [0, R]");
  // Half-angle of the cap seen from the ball centre: cos(theta) = 1 - h/R.
  // Use the sine form for small h to avoid acos cancellation.
  const double u = h / R;
  const double theta = 2.0 * std::asin(std::sqrt(0.5 * u));
  return unit_ball_volume(d - 1) * std::pow(R, d) * sin_power_integral(d, std::min(theta, 0.5 * kPi));
}

double lens_volume(int d, double R, double r) {
  if (!(r >= 0.0)) throw InvalidArgument("lens_volume: distance must be nonnegative");
  if (!(R > 0.0)) throw InvalidArgument("lens_volume: radius must be positive");
  if (r >= 2.0 * R) return 0.0;
  return 2.0 * cap_volume(d, R, R - 0.5 * r);
}

Quadrature quadrature_on(double a, double b, int order) {
  if (!(a < b)) throw InvalidArgument("quadrature_on: need a < b");
  if (order < 1) throw InvalidArgument("quadrature_on: order must be positive");
  const auto rule = reference_rule(order);
  Quadrature q;
  q.a = a;
  q.b = b;
  q.order = order;
  q.nodes.resize(order);
  q.weights.resize(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (int i = 0; i < order; ++i) {
    q.nodes[i] = mid + half * rule->x[i];
    q.weights[i] = half * rule->w[i];
  }
  return q;
}

ConvergedIntegral integrate_converged(const std::function<double(double)>& f, double a, double b, int order,
                                      double rel_tol, int max_order) {
  ConvergedIntegral out;
  double prev = quadrature_on(a, b, order).integrate(f);
  for (int n = 2 * order; n <= max_order; n *= 2) {
    const double cur = quadrature_on(a, b, n).integrate(f);
    out.value = cur;
    out.previous = prev;
    out.order = n;
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur) || (cur == 0.0 && prev == 0.0)) {
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  return out;
}

double find_root_increasing(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("find_root_increasing: tol must be positive");
  if (!(lo < hi)) throw InvalidArgument("find_root_increasing: need lo < hi");
  if (!(f(lo) < 0.0)) throw BracketError("find_root_increasing: f(lo) >= 0");
  if (!(f(hi) > 0.0)) throw BracketError("find_root_increasing: f(hi) <= 0");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (fm < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("normal_quantile: p must lie in (0, 1)");
  // Acklam (2003) coefficients.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double e[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((e[0] * q + e[1]) * q + e[2]) * q + e[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((e[0] * q + e[1]) * q + e[2]) * q + e[3]) * q + 1.0);
  }
  // Halley refinement; Phi(x) = erfc(-x/sqrt2)/2.
  for (int i = 0; i < 2; ++i) {
    const double err = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = err * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

}  // namespace boolperc
