// SPDX-License-Identifier: Apache-2.0
//
// Deterministic, splittable random streams and the variates the cluster
// exploration needs: Poisson counts and uniform points in balls.

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>

#include "boolperc/point.hpp"

namespace boolperc {

/// xoshiro256** generator (period 2^256 - 1) keyed by (master_seed, stream_index).
///
/// The seeding map is a bijection of the 128-bit pair: with m the SplitMix64
/// finalizer (itself a bijection of 64-bit words),
///   s0 = m(seed), s1 = m(index ^ s0),
///   s2 = m(s0 + golden), s3 = m(s1 + 2 * golden).
/// s0 recovers seed and s1 then recovers index, so distinct pairs never share
/// a starting state; s2 is nonzero when s0 == s1 == 0, so the state is never
/// the all-zero fixed point.
///
/// Satisfies UniformRandomBitGenerator. A stream must not be shared between
/// threads without external synchronisation.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next_u64(); }
  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  /// Standard normal (Box-Muller, second value cached).
  double normal();
  /// Standard exponential by inversion, -log(1 - U).
  double exponential();

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::uint64_t master_seed_ = 0;
  std::uint64_t stream_index_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

RngStream make_stream(std::uint64_t master_seed, std::uint64_t stream_index);

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x);

/// Poisson(mean) variate. Inversion for mean < 10, PTRS transformed
/// rejection (Hoermann 1993) otherwise. Throws for negative, non-finite or
/// mean > 1e9.
std::uint64_t poisson(RngStream& rng, double mean);

enum class BallMethod { Rejection, Normalized };

/// Crossover used when no method is given: rejection below, normalized at or above.
inline constexpr int kDefaultBallCrossover = 7;

inline BallMethod default_ball_method(int d, int crossover = kDefaultBallCrossover) {
  return d >= crossover ? BallMethod::Normalized : BallMethod::Rejection;
}

/// Uniform point in the closed unit ball by rejection from [-1, 1]^d.
/// Expected number of candidates is 2^d / v_d.
void uniform_in_ball_rejection(RngStream& rng, std::span<double> out);
Point uniform_in_ball_rejection(RngStream& rng, int d);

/// Uniform point in the unit ball as G / sqrt(|G|^2 + 2E), with G standard
/// normal in R^d and E standard exponential.
void uniform_in_ball_normalized(RngStream& rng, std::span<double> out);
Point uniform_in_ball_normalized(RngStream& rng, int d);

void uniform_in_ball(RngStream& rng, std::span<double> out, BallMethod method);

/// center + radius * (uniform unit-ball sample).
void uniform_in_shifted_ball(RngStream& rng, std::span<const double> center, double radius,
                             std::span<double> out, BallMethod method);
Point uniform_in_shifted_ball(RngStream& rng, int d, const Point& center, double radius);
Point uniform_in_shifted_ball(RngStream& rng, int d, const Point& center, double radius, BallMethod method);

}  // namespace boolperc
