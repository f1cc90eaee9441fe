#pragma once

#include "msca/allocation.hpp"
#include "msca/chains.hpp"
#include "msca/lp_relaxation.hpp"
#include "msca/rational.hpp"
#include "msca/rounding.hpp"
#include "msca/submodular.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace msca {

struct BruteForceResult {
    Partition partition;  // lexicographically smallest optimal assignment
    Rat value;
    std::uint64_t leaves = 0;  // complete assignments actually scored
};

inline constexpr std::uint64_t kDefaultBruteBudget = 100'000'000;

// Exact optimum over all k^n assignments by depth-first search with
// incremental single-element objective updates. When every cost function is
// monotone, branches whose partial objective already matches the incumbent
// are cut; this never changes the result because partial objectives only
// grow along a branch. Throws CapacityError when k^n exceeds the budget.
BruteForceResult brute_force_opt(const Instance& inst,
                                 std::uint64_t budget = kDefaultBruteBudget);

// Exhaustive diminishing-returns check: f(S+e1) + f(S+e2) >= f(S+e1+e2) + f(S)
// for every S and distinct e1, e2 outside S. Limited to n <= 20.
bool check_submodular(const SubmodularFn& f);

// Exhaustive nonnegative-marginal check. Limited to n <= 20.
bool check_monotone(const SubmodularFn& f);

struct VerificationCheck {
    std::string name;
    bool pass = false;
    std::string details;
};

struct VerificationReport {
    bool pass = true;
    std::vector<VerificationCheck> checks;
};

// Artifacts of a pipeline run; any subset may be present.
struct PipelineArtifacts {
    const LpSolution* lp = nullptr;
    const ChainAllocation* chain = nullptr;
    const RoundResult* round = nullptr;
    const BruteForceResult* brute = nullptr;
};

// Re-derives every structural property the pipeline relies on from the given
// artifacts: allocation feasibility, chain shape, scaled prefix arithmetic,
// index-tuple range/sum/distinctness, covering of low-sum tuples, the k/2
// guarantee, and the hard-instance family facts (monotone submodularity,
// witness value, integral lower bound). Each check reports pass/fail with a
// counterexample description on failure; nothing throws for data failures.
VerificationReport verify_suite(const Instance& inst, const PipelineArtifacts& artifacts,
                                std::uint64_t seed = 2026);

}  // namespace msca
