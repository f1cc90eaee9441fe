#pragma once

#include "msca/rational.hpp"
#include "msca/submodular.hpp"
#include "msca/subset.hpp"

#include <string>
#include <utility>
#include <vector>

namespace msca {

// A fractional assignment of weighted subsets to functions: one (set, weight)
// list per function index. Stored entries always have positive weight and a
// nonempty set. Feasibility (per-element coverage exactly 1) is a property of
// the values, checked by check_feasible, not enforced by the container.
struct FractionalAllocation {
    int n = 0;
    int k = 0;
    std::vector<std::vector<std::pair<Subset, Rat>>> support;  // support[i]

    FractionalAllocation() = default;
    FractionalAllocation(int ground_size, int block_count)
        : n(ground_size), k(block_count),
          support(static_cast<std::size_t>(block_count)) {}

    void add(int i, Subset set, const Rat& weight);

    // Sum of weights of sets containing e, over all functions.
    Rat coverage(int e) const;
    Rat objective(const Instance& inst) const;
    int support_size() const;
};

struct FeasibilityReport {
    bool pass = false;
    std::vector<Rat> coverage;  // per element
    std::string detail;         // empty when pass
};

// Per-element coverage sums and a verdict: pass iff every element is covered
// with total weight exactly 1 and all stored data is well formed. Diagnostic;
// never throws on bad values.
FeasibilityReport check_feasible(const Instance& inst, const FractionalAllocation& y);

}  // namespace msca
