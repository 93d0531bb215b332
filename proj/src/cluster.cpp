// SPDX-License-Identifier: Apache-2.0

#include "boolperc/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boolperc/errors.hpp"
#include "boolperc/specialfn.hpp"

namespace boolperc {

void ExploreConfig::validate() const {
  if (d < 1 || d > 64) throw InvalidArgument("ExploreConfig: dimension must be in [1, 64]");
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("ExploreConfig: intensity must be finite and >= 0");
  if (!(r > 1.0) || !std::isfinite(r)) throw InvalidArgument("ExploreConfig: radius must be finite and > 1");
  if (size_threshold < 1) throw InvalidArgument("ExploreConfig: size threshold must be >= 1");
  if (ball_crossover < 1) throw InvalidArgument("ExploreConfig: ball crossover must be >= 1");
}

std::string to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Finite:
      return "finite";
    case OutcomeKind::ReachedBoundary:
      return "reached_boundary";
    case OutcomeKind::ThresholdExceeded:
      return "threshold_exceeded";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// SpatialGrid

std::size_t SpatialGrid::CellKeyHash::operator()(const CellKey& key) const noexcept {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::int32_t c : key) h = mix64(h ^ static_cast<std::uint32_t>(c));
  return static_cast<std::size_t>(h);
}

SpatialGrid::SpatialGrid(int d, double cell_side, int key_dims)
    : d_(d), k_(key_dims < 0 ? std::min(d, kDefaultGridKeyDims) : key_dims), side_(cell_side) {
  if (d < 1) throw InvalidArgument("SpatialGrid: dimension must be positive");
  if (!(cell_side > 0.0)) throw InvalidArgument("SpatialGrid: cell side must be positive");
  if (k_ < 1 || k_ > std::min(d, kMaxGridKeyDims)) throw InvalidArgument("SpatialGrid: key_dims must be in [1, min(d, 8)]");
}

void SpatialGrid::check(std::span<const double> p, double dist) const {
  if (p.size() != static_cast<std::size_t>(d_)) throw InvalidArgument("SpatialGrid: dimension mismatch");
  if (!(dist >= 0.0) || dist > side_)
    throw InvalidArgument("SpatialGrid: query distance exceeds the cell side covered by the neighbourhood scan");
}

void SpatialGrid::insert(std::span<const double> p) {
  if (p.size() != static_cast<std::size_t>(d_)) throw InvalidArgument("SpatialGrid: dimension mismatch");
  CellKey key{};
  for (int k = 0; k < k_; ++k) key[k] = static_cast<std::int32_t>(std::floor(p[k] / side_));
  const auto index = static_cast<std::uint32_t>(size());
  coords_.insert(coords_.end(), p.begin(), p.end());
  cells_[key].push_back(index);
}

template <class Visit>
bool SpatialGrid::scan(std::span<const double> p, double dist, Visit&& visit) const {
  if (cells_.empty()) return false;
  const double limit = dist * dist;

  // Per hashed axis: home cell, and squared gap to the lower/upper neighbour.
  CellKey home{};
  std::array<double, kMaxGridKeyDims> gap_lo{}, gap_hi{};
  for (int k = 0; k < k_; ++k) {
    const double cell = std::floor(p[k] / side_);
    home[k] = static_cast<std::int32_t>(cell);
    const double frac = p[k] - cell * side_;
    gap_lo[k] = frac * frac;
    gap_hi[k] = (side_ - frac) * (side_ - frac);
  }

  // Depth-first over axes with offsets {0, -1, +1}, pruning on the squared
  // distance from p to the partial cell box.
  CellKey key = home;
  auto recurse = [&](auto&& self, int axis, double acc) -> bool {
    if (axis == k_) {
      const auto it = cells_.find(key);
      if (it == cells_.end()) return false;
      for (std::uint32_t idx : it->second)
        if (visit(idx)) return true;
      return false;
    }
    if (self(self, axis + 1, acc)) return true;
    if (acc + gap_lo[axis] < limit) {
      key[axis] = home[axis] - 1;
      const bool hit = self(self, axis + 1, acc + gap_lo[axis]);
      key[axis] = home[axis];
      if (hit) return true;
    }
    if (acc + gap_hi[axis] < limit) {
      key[axis] = home[axis] + 1;
      const bool hit = self(self, axis + 1, acc + gap_hi[axis]);
      key[axis] = home[axis];
      if (hit) return true;
    }
    return false;
  };
  return recurse(recurse, 0, 0.0);
}

std::vector<Point> SpatialGrid::neighbors_within(std::span<const double> p, double dist) const {
  check(p, dist);
  std::vector<Point> out;
  const double limit = dist * dist;
  scan(p, dist, [&](std::uint32_t idx) {
    const auto q = point(idx);
    if (squared_distance(p, q) < limit) out.emplace_back(q.begin(), q.end());
    return false;
  });
  return out;
}

bool SpatialGrid::any_within(std::span<const double> p, double dist) const {
  check(p, dist);
  const double limit = dist * dist;
  return scan(p, dist, [&](std::uint32_t idx) { return squared_distance(p, point(idx)) < limit; });
}

// ---------------------------------------------------------------------------
// Exploration

Outcome explore_cluster(const ExploreConfig& config, RngStream& rng) {
  config.validate();
  const int d = config.d;
  const auto dim = static_cast<std::size_t>(d);
  // Intensity mass of centres whose grain meets B_1(x): t * |B_2|.
  const double offspring_mean = config.t * std::ldexp(ball_volume(d), d);
  const double trigger = (config.r - 1.0) * (config.r - 1.0);
  const BallMethod method = default_ball_method(d, config.ball_crossover);

  SpatialGrid processed(d, 2.0, config.grid_key_dims);
  // FIFO of pending centres, flat; entries before `head` have been popped.
  std::vector<double> queue(dim, 0.0);
  std::size_t head = 0;
  std::vector<double> parent(dim);
  std::vector<double> child(dim);

  while (head < queue.size()) {
    std::copy_n(queue.begin() + static_cast<std::ptrdiff_t>(head), dim, parent.begin());
    head += dim;
    const std::size_t pending = (queue.size() - head) / dim;

    const std::uint64_t n = poisson(rng, offspring_mean);
    std::uint64_t accepted = 0;
    for (std::uint64_t i = 0; i < n; ++i) {
      uniform_in_shifted_ball(rng, parent, 2.0, child, method);
      // Masked iff the child grain overlaps an already processed grain.
      if (processed.any_within(child, 2.0)) continue;
      ++accepted;
      if (squared_norm(child) > trigger)
        return {OutcomeKind::ReachedBoundary, processed.size() + 1 + pending + accepted};
      queue.insert(queue.end(), child.begin(), child.end());
    }
    processed.insert(parent);

    const std::uint64_t total = processed.size() + (queue.size() - head) / dim;
    if (total > config.size_threshold) return {OutcomeKind::ThresholdExceeded, total};

    // Drop consumed entries once they dominate the buffer.
    if (head > 4096 && head * 2 > queue.size()) {
      queue.erase(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(head));
      head = 0;
    }
  }
  return {OutcomeKind::Finite, processed.size()};
}

// ---------------------------------------------------------------------------
// Brute-force oracle

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

}  // namespace

bool naive_reach_oracle(const ExploreConfig& config, RngStream& rng) {
  config.validate();
  const int d = config.d;
  const auto dim = static_cast<std::size_t>(d);
  const double outer = config.r + 1.0;
  const double expected = config.t * ball_volume(d) * std::pow(outer, d);
  if (expected > kMaxOraclePoints) throw InvalidArgument("naive_reach_oracle: expected point count exceeds 1e7");

  const auto n = static_cast<std::size_t>(poisson(rng, expected));
  const BallMethod method = default_ball_method(d, config.ball_crossover);
  std::vector<double> pts(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<double> p(pts.data() + i * dim, dim);
    uniform_in_ball(rng, p, method);
    for (double& x : p) x *= outer;
  }
  auto at = [&](std::size_t i) { return std::span<const double>(pts.data() + i * dim, dim); };

  // Node n is the origin grain.
  DisjointSets sets(n + 1);
  for (std::size_t i = 0; i < n; ++i)
    if (squared_norm(at(i)) <= 4.0) sets.unite(i, n);

  // Sweep along the first coordinate; only pairs within 2 there can touch.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a * dim] < pts[b * dim]; });
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t i = order[a];
    for (std::size_t b = a + 1; b < n; ++b) {
      const std::size_t j = order[b];
      if (pts[j * dim] - pts[i * dim] > 2.0) break;
      if (squared_distance(at(i), at(j)) <= 4.0) sets.unite(i, j);
    }
  }

  const std::size_t root = sets.find(n);
  const double trigger = (config.r - 1.0) * (config.r - 1.0);
  for (std::size_t i = 0; i < n; ++i)
    if (squared_norm(at(i)) > trigger && sets.find(i) == root) return true;
  return false;
}

}  // namespace boolperc
