// SPDX-License-Identifier: Apache-2.0
//
// Rigorous lower bounds for the critical intensity of the Boolean model with
// unit-ball grains:
//
//  * Penrose: t_c >= 1 / |B_2|, from domination by a Poisson Galton-Watson
//    process.
//  * phi_t(B_3): the expected number of grains centred in the shell
//    2 < |x| <= 4 that are connected to B_1 through grains centred in B_2,
//      phi_t = t * d * v_d * int_2^4 r^{d-1} (1 - exp(-t |B_2 cap B_2(r e_1)|)) dr,
//    is increasing in t; its root phi_t = 1 is a lower bound.
//    (d * v_d is the surface measure of the unit sphere.)
//  * Hall: t_c >= 1 / rho(T), where T f(x) = int_0^2 f(y) g(y, x) dy and
//    g(y, x) is the surface measure of the sphere of radius y around x e_1
//    lying outside B_2,
//      g(y, x) = (d-1) v_{d-1} y^{d-1} J_{d-2}(arccos((4 - x^2 - y^2) / (2xy)))
//    for y > 2 - x and 0 otherwise.

#pragma once

#include <vector>

namespace boolperc {

double penrose_bound(int d);

/// phi_t(B_3) to ~1e-10 relative (Gauss-Legendre from order 200, doubled
/// until two successive orders agree).
double phi_b3(int d, double t);

/// Root of phi_t(B_3) = 1 by bisection on [penrose, 10 * penrose]. `rel_tol`
/// is the final bracket width relative to the Penrose bound.
double phi_b3_bound(int d, double rel_tol = 1e-12);

/// Hall's kernel g(y, x) for x, y in (0, 2]. Requires d >= 2.
double hall_kernel(int d, double y, double x);

/// Nystrom discretisation of T on Gauss-Legendre nodes of (0, 2):
/// matrix(i, j) = weights[j] * g(nodes[j], nodes[i]), row-major.
struct OperatorDiscretization {
  int d = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> matrix;

  std::size_t size() const { return nodes.size(); }
  double operator()(std::size_t i, std::size_t j) const { return matrix[i * nodes.size() + j]; }
};

OperatorDiscretization hall_operator(int d, int n_nodes);

/// Dominant eigenvalue of a nonnegative square matrix (row-major, n x n) by
/// power iteration from the all-ones vector, stopping once successive
/// Rayleigh quotients agree to `rel_tol`. Throws ConvergenceError after
/// `max_iterations`.
double spectral_radius(const std::vector<double>& matrix, std::size_t n, double rel_tol = 1e-13,
                       int max_iterations = 100000);
double spectral_radius(const OperatorDiscretization& disc, double rel_tol = 1e-13, int max_iterations = 100000);

struct HallBound {
  int d = 0;
  int nodes = 0;
  double value = 0.0;           // 1 / rho extrapolated from n and 2n nodes
  double plain = 0.0;           // 1 / rho on n nodes
  double refined = 0.0;         // 1 / rho on 2n nodes
  double error_estimate = 0.0;  // |value - plain|
};

/// The Nystrom error decays like n^{-(d+1)/2} (the kernel switches on like
/// (y - (2 - x))^{(d-1)/2}), so rho is Richardson-extrapolated with that order.
HallBound hall_bound(int d, int n_nodes = 200);

struct MeanClusterSize {
  bool divergent = false;
  double value = 0.0;  // meaningful only if !divergent
};

/// 1 + sum_{k>=1} t^k (T^k 1)(1) on the discretised operator. The sum is
/// ((I - tT)^{-1} 1)(1); it is divergent when t * rho >= 1. The value at
/// x = 1 comes from the Nystrom interpolant.
MeanClusterSize hall_mean_cluster_size(int d, double t, int n_nodes = 200);

}  // namespace boolperc
