#pragma once

#include "msca/allocation.hpp"
#include "msca/rational.hpp"
#include "msca/submodular.hpp"
#include "msca/subset.hpp"

#include <utility>
#include <vector>

namespace msca {

// Largest ground set for which all k * (2^n - 1) columns are enumerated.
inline constexpr int kMaxLpGroundSize = 16;

struct LpSolution {
    FractionalAllocation allocation;           // positive basic variables only
    Rat objective;
    long iterations = 0;                       // simplex pivots
    std::vector<std::pair<int, Subset>> basis; // basic (function, set) pairs, row order
};

// Exact optimum of the fractional allocation relaxation
//
//   minimize   sum_{i, S} y_i(S) f_i(S)
//   subject to sum_{i, S contains e} y_i(S) = 1   for every element e,
//              y >= 0,
//
// solved as an explicit LP over one column per (function, nonempty subset)
// with rational revised simplex. Pivot rule is Bland's (lowest column in
// (i, mask) order; lowest basic column on ratio ties), so the run is
// deterministic and cannot cycle. Optimality is certified by a full pricing
// pass: the solver only stops when every column has nonnegative reduced cost.
LpSolution solve_lp(const Instance& inst);

}  // namespace msca
