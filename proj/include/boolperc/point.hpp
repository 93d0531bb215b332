// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace boolperc {

/// Centre of a unit-ball grain. The dimension is the vector length.
using Point = std::vector<double>;

inline double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

inline double squared_distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    s += diff * diff;
  }
  return s;
}

inline double norm(std::span<const double> x) { return std::sqrt(squared_norm(x)); }

}  // namespace boolperc
