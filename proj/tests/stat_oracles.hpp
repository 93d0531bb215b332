// SPDX-License-Identifier: Apache-2.0
//
// Test-only statistical oracles. Distribution functions come from Boost.Math
// so they are independent of the library's own numerics.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/poisson.hpp>

namespace boolperc::testing {

/// sup |F_n(x) - x| for samples that should be uniform on (0, 1).
inline double ks_uniform_statistic(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, (i + 1) / n - u[i]);
    d = std::max(d, u[i] - i / n);
  }
  return d;
}

/// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
inline double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

struct TwoSampleKs {
  double statistic;
  double p_value;
};

inline TwoSampleKs ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  const double ne = na * nb / (na + nb);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  return {d, kolmogorov_q(lambda)};
}

inline double chi_square_p_value(double statistic, double dof) {
  return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), statistic));
}

/// Chi-square test of counts against expected cell counts.
inline double chi_square_gof(std::span<const double> observed, std::span<const double> expected, int fitted = 0) {
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  return chi_square_p_value(stat, static_cast<double>(observed.size()) - 1.0 - fitted);
}

/// Two-sided p-value of the pooled two-proportion z-test.
inline double two_proportion_p_value(std::uint64_t s1, std::uint64_t n1, std::uint64_t s2, std::uint64_t n2) {
  const double p1 = static_cast<double>(s1) / n1;
  const double p2 = static_cast<double>(s2) / n2;
  const double pool = static_cast<double>(s1 + s2) / (n1 + n2);
  const double se = std::sqrt(pool * (1.0 - pool) * (1.0 / n1 + 1.0 / n2));
  if (se == 0.0) return p1 == p2 ? 1.0 : 0.0;
  const double z = std::abs(p1 - p2) / se;
  return 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal(), z));
}

/// Equiprobable-bin chi-square test that u_1 = x_1/|x| of directions in R^d
/// follows the uniform-on-sphere marginal, (u_1 + 1)/2 ~ Beta((d-1)/2, (d-1)/2).
inline double direction_marginal_p_value(std::span<const double> first_coords, int d, int bins = 20) {
  const double a = 0.5 * (d - 1);
  boost::math::beta_distribution<double> beta(a, a);
  std::vector<double> observed(bins, 0.0);
  for (double u : first_coords) {
    const double c = boost::math::cdf(beta, std::clamp(0.5 * (u + 1.0), 0.0, 1.0));
    observed[std::min(bins - 1, static_cast<int>(c * bins))] += 1.0;
  }
  std::vector<double> expected(bins, static_cast<double>(first_coords.size()) / bins);
  return chi_square_gof(observed, expected);
}

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
};

inline LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  return {slope, my - slope * mx, syy == 0.0 ? 1.0 : sxy * sxy / (sxx * syy)};
}

}  // namespace boolperc::testing
