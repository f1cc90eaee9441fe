#pragma once

#include "msca/allocation.hpp"
#include "msca/lovasz.hpp"
#include "msca/rational.hpp"
#include "msca/submodular.hpp"

#include <utility>
#include <vector>

namespace msca {

// A feasible fractional allocation whose per-function supports are chains:
// chains[i] holds C_i^1 over C_i^2 over ... (strictly nested, outermost
// first) with positive weights. A chain may be empty.
struct ChainAllocation {
    int n = 0;
    int k = 0;
    std::vector<std::vector<std::pair<Subset, Rat>>> chains;

    ChainAllocation() = default;
    ChainAllocation(int ground_size, int block_count)
        : n(ground_size), k(block_count), chains(static_cast<std::size_t>(block_count)) {}

    Rat objective(const Instance& inst) const;
    FractionalAllocation as_allocation() const;
    int length(int i) const { return static_cast<int>(chains[static_cast<std::size_t>(i)].size()); }
};

// Rewrites a feasible allocation so every support is a chain, by collapsing
// each function's measure to its aggregate vector and re-expanding level
// sets. Feasibility is preserved exactly and the objective never increases
// (both are asserted at exact precision). Throws ContractViolation when the
// input is infeasible.
ChainAllocation uncross(const Instance& inst, const FractionalAllocation& y);

// Reference uncrossing by repeated pairwise set surgery: the lexicographically
// first incomparable pair (S, T) in one support trades weight
// eps = min(y(S), y(T)) for S-intersect-T and S-union-T until every support
// is a chain. Slower and kept as a cross-check for uncross.
ChainAllocation pairwise_uncross_oracle(const Instance& inst, const FractionalAllocation& y);

}  // namespace msca
