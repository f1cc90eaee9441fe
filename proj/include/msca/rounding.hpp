#pragma once

#include "msca/chains.hpp"
#include "msca/rational.hpp"
#include "msca/submodular.hpp"
#include "msca/subset.hpp"

#include <vector>

namespace msca {

// A chain allocation rescaled so every weight becomes an integer count:
// M = k(k-1) * lcm(weight denominators), and prefix[i][l] is the cumulative
// count of the outermost l+1 chain sets of function i. The j-th indexed set
// U_i^j (the j-th largest member of the multiset holding M*weight copies of
// each chain set) is never materialized; u_set resolves it through the
// prefix counts.
//
// The lcm replaces a plain product of denominators: the construction only
// needs M*weight integral and k(k-1) dividing M, and the lcm keeps the
// numbers exponentially smaller.
struct ScaledChain {
    int n = 0;
    int k = 0;
    Int M;                                   // k(k-1) * m
    Int m;                                   // lcm of weight denominators
    std::vector<std::vector<Subset>> sets;   // per function, outermost first
    std::vector<std::vector<Int>> prefix;    // per function, strictly increasing
    Int tuple_range() const { return 2 * m * (k - 1); }
};

ScaledChain scale_chain(const ChainAllocation& chain);

// U_i^j for j in [1, M]: the outermost chain set whose prefix count reaches j,
// or the empty set beyond the last prefix.
Subset u_set(const ScaledChain& sc, int i, const Int& j);

// One ordered index tuple (a_1, ..., a_k): column j of the k x 2m(k-1)
// schedule that assigns every function a distinct index with small total.
// Construction guarantees 1 <= a_i <= M and sum_i a_i = M + k - ceil(j/2m);
// both are asserted on every call.
struct TupleIndex {
    Int j;
    std::vector<Int> a;
};

TupleIndex tuple_at(const ScaledChain& sc, const Int& j);

// Whether the union of the tuple's indexed sets is the whole ground set.
bool covering_check(const ScaledChain& sc, const TupleIndex& tuple);

// An assignment of every element to exactly one block.
struct Partition {
    int k = 0;
    std::vector<int> assignment;  // per element, block index in [0, k)

    std::vector<Subset> blocks() const;
};

// Shrinks a covering family to a partition: each element goes to the lowest
// indexed cover set containing it.
Partition extract_partition(const Instance& inst, const std::vector<Subset>& cover);

struct ScanResult {
    Int jstar;                       // smallest minimizer
    TupleIndex tuple;                // tuple at jstar
    Rat value;                       // sum_i f_i(U_i^{a_i}) at jstar
    long candidates_evaluated = 0;   // breakpoint candidates actually scored
    bool full_scan_checked = false;  // exhaustive scan ran and agreed
};

// Minimizes sum_i f_i(U_i^{a_i^j}) over j in [1, 2m(k-1)] by evaluating only
// breakpoints: js where some coordinate's indexed set can change. Each a_i is
// piecewise linear in j, so breakpoints are the piece starts plus the linear
// crossings of the prefix thresholds. Ties go to the smallest j. Whenever
// 2m(k-1) <= 10^6 a literal full scan runs as well and must agree exactly.
ScanResult find_jstar(const Instance& inst, const ScaledChain& sc);

struct RoundResult {
    Partition partition;
    Rat value;                   // sum_i f_i(partition block i)
    Int M, m, jstar;
    std::vector<Int> tuple;
    std::vector<Subset> cover;   // U_i^{a_i} at jstar
    Rat cover_value;             // objective of the cover before shrinking
    long candidates_evaluated = 0;
    bool full_scan_checked = false;
};

// Full rounding pipeline: scale, scan for the best tuple, extract the
// partition. The exact guarantee 2 * value <= k * objective(chain) is
// asserted on every run.
RoundResult round_solution(const Instance& inst, const ChainAllocation& chain);

}  // namespace msca
