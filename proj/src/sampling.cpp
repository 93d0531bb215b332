// SPDX-License-Identifier: Apache-2.0

#include "boolperc/sampling.hpp"

#include <cmath>
#include <numbers>

#include "boolperc/errors.hpp"

namespace boolperc {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

void check_dimension(std::size_t d) {
  if (d < 1 || d > 64) throw InvalidArgument("ball sampler: dimension must be in [1, 64]");
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  s_[0] = mix64(master_seed);
  s_[1] = mix64(stream_index ^ s_[0]);
  s_[2] = mix64(s_[0] + kGolden);
  s_[3] = mix64(s_[1] + 2 * kGolden);
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

double RngStream::exponential() { return -std::log1p(-uniform()); }

RngStream make_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
  return RngStream(master_seed, stream_index);
}

std::uint64_t poisson(RngStream& rng, double mean) {
  if (!std::isfinite(mean) || mean < 0.0) throw InvalidArgument("poisson: mean must be finite and nonnegative");
  if (mean > 1e9) throw InvalidArgument("poisson: mean above 1e9");
  if (mean == 0.0) return 0;

  if (mean < 10.0) {
    const double u = rng.uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u > cdf) {
      ++k;
      p *= mean / static_cast<double>(k);
      const double next = cdf + p;
      if (next == cdf) break;  // tail below double resolution
      cdf = next;
    }
    return k;
  }

  // PTRS
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <= -mean + k * loglam - std::lgamma(k + 1.0))
      return static_cast<std::uint64_t>(k);
  }
}

void uniform_in_ball_rejection(RngStream& rng, std::span<double> out) {
  check_dimension(out.size());
  for (;;) {
    double s = 0.0;
    for (double& x : out) {
      x = 2.0 * rng.uniform() - 1.0;
      s += x * x;
    }
    if (s <= 1.0) return;
  }
}

Point uniform_in_ball_rejection(RngStream& rng, int d) {
  check_dimension(static_cast<std::size_t>(d < 0 ? 0 : d));
  Point p(d);
  uniform_in_ball_rejection(rng, p);
  return p;
}

void uniform_in_ball_normalized(RngStream& rng, std::span<double> out) {
  check_dimension(out.size());
  double s = 0.0;
  for (double& x : out) {
    x = rng.normal();
    s += x * x;
  }
  const double scale = 1.0 / std::sqrt(s + 2.0 * rng.exponential());
  for (double& x : out) x *= scale;
}

Point uniform_in_ball_normalized(RngStream& rng, int d) {
  check_dimension(static_cast<std::size_t>(d < 0 ? 0 : d));
  Point p(d);
  uniform_in_ball_normalized(rng, p);
  return p;
}

void uniform_in_ball(RngStream& rng, std::span<double> out, BallMethod method) {
  if (method == BallMethod::Rejection)
    uniform_in_ball_rejection(rng, out);
  else
    uniform_in_ball_normalized(rng, out);
}

void uniform_in_shifted_ball(RngStream& rng, std::span<const double> center, double radius, std::span<double> out,
                             BallMethod method) {
  if (!(radius > 0.0)) throw InvalidArgument("uniform_in_shifted_ball: radius must be positive");
  uniform_in_ball(rng, out, method);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = center[i] + radius * out[i];
}

Point uniform_in_shifted_ball(RngStream& rng, int d, const Point& center, double radius, BallMethod method) {
  if (center.size() != static_cast<std::size_t>(d)) throw InvalidArgument("uniform_in_shifted_ball: dimension mismatch");
  Point p(d);
  uniform_in_shifted_ball(rng, center, radius, p, method);
  return p;
}

Point uniform_in_shifted_ball(RngStream& rng, int d, const Point& center, double radius) {
  return uniform_in_shifted_ball(rng, d, center, radius, default_ball_method(d));
}

}  // namespace boolperc
