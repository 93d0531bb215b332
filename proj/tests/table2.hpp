// SPDX-License-Identifier: Apache-2.0
//
// Published simulation results (10000 runs per row) used as golden data.

#pragma once

#include <array>
#include <cstdint>

namespace boolperc::testing {

struct Table2Row {
  int d;
  double r;
  double t;
  std::uint64_t runs;
  std::uint64_t successes;
  double ci;           // upper 99% limit, as printed
  double lower_bound;  // as printed
};

inline constexpr std::array<Table2Row, 10> kTable2 = {{
    {2, 16000, 0.357, 10000, 0, 0.00063692, 0.356772},
    {3, 2000, 0.0814, 10000, 0, 0.00063692, 0.0813481},
    {4, 500, 0.0261, 10000, 10, 0.002119993, 0.0260445},
    {5, 500, 0.0101, 10000, 0, 0.00063692, 0.0100935},
    {6, 200, 0.00456, 10000, 1, 0.000813077, 0.00455628},
    {7, 200, 0.00228, 10000, 18, 0.003154537, 0.00227278},
    {8, 150, 0.00124, 10000, 21, 0.003529665, 0.00123560},
    {9, 150, 0.000725, 10000, 6, 0.001571485, 0.000723859},
    {10, 120, 0.000450, 10000, 4, 0.001282615, 0.000449422},
    {11, 120, 0.0002955, 10000, 8, 0.001849554, 0.000294952},
}};

}  // namespace boolperc::testing
