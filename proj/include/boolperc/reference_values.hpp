// SPDX-License-Identifier: Apache-2.0
//
// Published reference values for the lower bounds, used as golden data by
// the `table` command. Rows are d = 2..11.

#pragma once

#include <array>

namespace boolperc::reference {

struct Table1Row {
  int d;
  double phi_b3;
  double penrose;
};

// Printed with trailing "..." (digits truncated).
inline constexpr std::array<Table1Row, 10> kTable1 = {{
    {2, 0.135802, 0.0795774},
    {3, 0.0433691, 0.0298415},
    {4, 0.0167131, 0.0126651},
    {5, 0.00734445, 0.00593678},
    {6, 0.00357261, 0.00302358},
    {7, 0.00188850, 0.00165352},
    {8, 0.00107117, 0.000962435},
    {9, 0.000645942, 0.000592123},
    {10, 0.000411202, 0.000382941},
    {11, 0.000274803, 0.000259158},
}};

struct Table3Row {
  int d;
  double penrose;
  double phi_b3;
  double hall;
};

inline constexpr std::array<Table3Row, 10> kTable3 = {{
    {2, 0.0795774, 0.135802, 0.174746},
    {3, 0.0298415, 0.0433691, 0.0534187},
    {4, 0.0126651, 0.0167131, 0.0198296},
    {5, 0.00593678, 0.00734445, 0.00845546},
    {6, 0.00302358, 0.00357261, 0.00401478},
    {7, 0.00165352, 0.00188850, 0.00208114},
    {8, 0.000962436, 0.00107117, 0.00116176},
    {9, 0.000592124, 0.000645943, 0.000691455},
    {10, 0.000382941, 0.000411203, 0.000435437},
    {11, 0.000259158, 0.000274804, 0.000288394},
}};

inline constexpr double kTable1Tolerance = 1e-5;
inline constexpr double kTable3Tolerance = 1e-4;

}  // namespace boolperc::reference
