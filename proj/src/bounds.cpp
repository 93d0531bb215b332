// SPDX-License-Identifier: Apache-2.0

#include "boolperc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "boolperc/errors.hpp"
#include "boolperc/sampling.hpp"
#include "boolperc/specialfn.hpp"

namespace boolperc {
namespace {

void check_dimension(int d, int min_d) {
  if (d < min_d || d > 64)
    throw InvalidArgument("dimension must be in [" + std::to_string(min_d) + ", 64], got " + std::to_string(d));
}

// Solve A x = b in place (Gaussian elimination, partial pivoting).
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::abs(a[row * n + col]) > std::abs(a[piv * n + col])) piv = row;
    if (a[piv * n + col] == 0.0) throw ConvergenceError("singular system");
    if (piv != col) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[col * n + k], a[piv * n + k]);
      std::swap(b[col], b[piv]);
    }
    for (std::size_t row = col + 1; row < n; ++row) {
      const double f = a[row * n + col] / a[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t k = col; k < n; ++k) a[row * n + k] -= f * a[col * n + k];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i * n + k] * x[k];
    x[i] = s / a[i * n + i];
  }
  return x;
}

}  // namespace

double penrose_bound(int d) {
  check_dimension(d, 1);
  return 1.0 / std::ldexp(ball_volume(d), d);
}

double phi_b3(int d, double t) {
  check_dimension(d, 1);
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("phi_b3: intensity must be finite and >= 0");
  if (t == 0.0) return 0.0;
  auto integrand = [d, t](double r) { return std::pow(r, d - 1) * -std::expm1(-t * lens_volume(d, 2.0, r)); };
  const ConvergedIntegral in = integrate_converged(integrand, 2.0, 4.0, 200, 1e-10);
  if (!in.converged) throw ConvergenceError("phi_b3: quadrature did not converge");
  return t * d * ball_volume(d) * in.value;
}

double phi_b3_bound(int d, double rel_tol) {
  check_dimension(d, 1);
  if (!(rel_tol > 0.0)) throw InvalidArgument("phi_b3_bound: tolerance must be positive");
  const double lo = penrose_bound(d);
  return find_root_increasing([d](double t) { return phi_b3(d, t) - 1.0; }, lo, 10.0 * lo, rel_tol * lo);
}

double hall_kernel(int d, double y, double x) {
  check_dimension(d, 2);
  if (!(x > 0.0 && x <= 2.0) || !(y > 0.0 && y <= 2.0)) throw InvalidArgument("hall_kernel: x and y must lie in (0, 2]");
  if (y <= 2.0 - x) return 0.0;
  const double c = std::clamp((4.0 - x * x - y * y) / (2.0 * x * y), -1.0, 1.0);
  return (d - 1) * ball_volume(d - 1) * std::pow(y, d - 1) * sin_power_integral(d - 2, std::acos(c));
}

OperatorDiscretization hall_operator(int d, int n_nodes) {
  check_dimension(d, 2);
  if (n_nodes < 16) throw InvalidArgument("hall_operator: need at least 16 nodes");
  const Quadrature q = quadrature_on(0.0, 2.0, n_nodes);
  OperatorDiscretization disc;
  disc.d = d;
  disc.nodes = q.nodes;
  disc.weights = q.weights;
  const auto n = static_cast<std::size_t>(n_nodes);
  disc.matrix.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) disc.matrix[i * n + j] = q.weights[j] * hall_kernel(d, q.nodes[j], q.nodes[i]);
  return disc;
}

double spectral_radius(const std::vector<double>& matrix, std::size_t n, double rel_tol, int max_iterations) {
  if (n == 0 || matrix.size() != n * n) throw InvalidArgument("spectral_radius: matrix is not square");
  if (!(rel_tol > 0.0)) throw InvalidArgument("spectral_radius: tolerance must be positive");

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> w(n);
  bool restarted = false;
  double prev = -1.0;
  for (int iter = 0; iter < max_iterations; ++iter) {
    double vw = 0.0;
    double ww = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      const double* row = matrix.data() + i * n;
      for (std::size_t j = 0; j < n; ++j) s += row[j] * v[j];
      w[i] = s;
      vw += v[i] * s;
      ww += s * s;
    }
    if (ww == 0.0) {
      // The start vector fell into the null space; try a random positive one.
      if (restarted) return 0.0;
      restarted = true;
      RngStream rng(0x5eed, 0);
      double nn = 0.0;
      for (double& x : v) {
        x = 0.5 + rng.uniform();
        nn += x * x;
      }
      for (double& x : v) x /= std::sqrt(nn);
      prev = -1.0;
      continue;
    }
    const double rayleigh = vw;  // v has unit norm
    const double inv = 1.0 / std::sqrt(ww);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] * inv;
    if (prev >= 0.0 && std::abs(rayleigh - prev) <= rel_tol * std::abs(rayleigh)) return rayleigh;
    prev = rayleigh;
  }
  throw ConvergenceError("spectral_radius: power iteration did not converge");
}

double spectral_radius(const OperatorDiscretization& disc, double rel_tol, int max_iterations) {
  return spectral_radius(disc.matrix, disc.size(), rel_tol, max_iterations);
}

HallBound hall_bound(int d, int n_nodes) {
  const double rho_n = spectral_radius(hall_operator(d, n_nodes));
  const double rho_2n = spectral_radius(hall_operator(d, 2 * n_nodes));
  const double order = 0.5 * (d + 1);
  const double rho = rho_2n + (rho_2n - rho_n) / (std::pow(2.0, order) - 1.0);
  HallBound out;
  out.d = d;
  out.nodes = n_nodes;
  out.value = 1.0 / rho;
  out.plain = 1.0 / rho_n;
  out.refined = 1.0 / rho_2n;
  out.error_estimate = std::abs(out.value - out.plain);
  return out;
}

MeanClusterSize hall_mean_cluster_size(int d, double t, int n_nodes) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("hall_mean_cluster_size: intensity must be >= 0");
  if (t == 0.0) return {false, 1.0};
  const OperatorDiscretization disc = hall_operator(d, n_nodes);
  if (t * spectral_radius(disc) >= 1.0) return {true, 0.0};

  // s = sum_k t^k T^k 1 solves (I - tT) s = 1.
  const std::size_t n = disc.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = (i == j ? 1.0 : 0.0) - t * disc(i, j);
  const std::vector<double> s = solve_dense(std::move(a), std::vector<double>(n, 1.0));

  double tail = 0.0;
  for (std::size_t j = 0; j < n; ++j) tail += disc.weights[j] * hall_kernel(d, disc.nodes[j], 1.0) * s[j];
  return {false, 1.0 + t * tail};
}

}  // namespace boolperc
