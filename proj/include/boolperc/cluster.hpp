// SPDX-License-Identifier: Apache-2.0
//
// Exact simulation of the origin cluster of the Boolean model with unit-ball
// grains, and an independent brute-force oracle for the same event.

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "boolperc/point.hpp"
#include "boolperc/sampling.hpp"

namespace boolperc {

inline constexpr std::uint64_t kUnboundedThreshold = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint64_t kDefaultSizeThreshold = 1'000'000;

/// Parameters of one exploration trial.
struct ExploreConfig {
  int d = 2;
  double t = 0.0;  // Poisson intensity per unit volume
  double r = 2.0;  // observation radius, > 1
  std::uint64_t size_threshold = kDefaultSizeThreshold;
  int ball_crossover = kDefaultBallCrossover;
  int grid_key_dims = -1;  // -1: SpatialGrid default

  /// Throws InvalidArgument if the invariants fail.
  void validate() const;
};

enum class OutcomeKind { Finite, ReachedBoundary, ThresholdExceeded };

std::string to_string(OutcomeKind kind);

/// Result of one exploration. For Finite, `cluster_size` is |C|; otherwise
/// it is the number of grains generated when the run stopped (processed,
/// queued and the triggering grain).
struct Outcome {
  OutcomeKind kind = OutcomeKind::Finite;
  std::uint64_t cluster_size = 1;

  bool reached() const { return kind != OutcomeKind::Finite; }
};

/// Largest number of coordinates a SpatialGrid hashes on.
inline constexpr int kMaxGridKeyDims = 8;
/// Default number of hashed coordinates: min(d, kDefaultGridKeyDims).
inline constexpr int kDefaultGridKeyDims = 3;

/// Hash map from integer cells of side `cell_side` to the points inside.
///
/// Cells are formed from the first `key_dims` coordinates only. A query
/// visits the pruned 3^key_dims neighbourhood of cells and filters the
/// candidates by full d-dimensional distance, so results are exact for any
/// key_dims.
class SpatialGrid {
 public:
  explicit SpatialGrid(int d, double cell_side = 2.0, int key_dims = -1);

  void insert(std::span<const double> p);

  /// Stored points q with |q - p| < dist. Requires dist <= cell_side.
  std::vector<Point> neighbors_within(std::span<const double> p, double dist) const;

  /// True iff some stored q has |q - p| < dist.
  bool any_within(std::span<const double> p, double dist) const;

  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(d_); }
  std::size_t cell_count() const { return cells_.size(); }
  int dimension() const { return d_; }
  int key_dims() const { return k_; }
  double cell_side() const { return side_; }

 private:
  using CellKey = std::array<std::int32_t, kMaxGridKeyDims>;
  struct CellKeyHash {
    std::size_t operator()(const CellKey& key) const noexcept;
  };

  // Calls visit(index) for every stored point in a cell whose box lies
  // within dist of p; stops early when visit returns true.
  template <class Visit>
  bool scan(std::span<const double> p, double dist, Visit&& visit) const;

  std::span<const double> point(std::uint32_t index) const {
    return {coords_.data() + static_cast<std::size_t>(index) * d_, static_cast<std::size_t>(d_)};
  }
  void check(std::span<const double> p, double dist) const;

  int d_;
  int k_;
  double side_;
  std::vector<double> coords_;
  std::unordered_map<CellKey, std::vector<std::uint32_t>, CellKeyHash> cells_;
};

/// Penrose FIFO exploration of the origin cluster, stopped as soon as a
/// grain meets the complement of B_r or the cluster exceeds the threshold.
Outcome explore_cluster(const ExploreConfig& config, RngStream& rng);

/// Largest expected point count naive_reach_oracle accepts.
inline constexpr double kMaxOraclePoints = 1e7;

/// Samples all centres in B_{r+1}, joins pairs at distance <= 2 with
/// union-find, and reports whether the component of the origin grain contains
/// a centre with |u| > r - 1. Ignores the size threshold.
bool naive_reach_oracle(const ExploreConfig& config, RngStream& rng);

}  // namespace boolperc
