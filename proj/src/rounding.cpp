#include "msca/rounding.hpp"

#include "msca/errors.hpp"

#include <algorithm>

namespace msca {

namespace {

// Representative of a's congruence class in [1, modulus]. Works for any
// integer a (the last coordinate's argument can be zero or negative when
// k >= 3); language-native remainder semantics on negatives are never used.
Int mod_in_range(const Int& a, const Int& modulus) {
    Int r = a % modulus;
    if (r < 0)
        r += modulus;
    return r == 0 ? modulus : r;
}

Rat tuple_value(const Instance& inst, const ScaledChain& sc, const TupleIndex& tuple) {
    Rat total = 0;
    for (int i = 0; i < sc.k; ++i) {
        Subset s = u_set(sc, i, tuple.a[static_cast<std::size_t>(i)]);
        if (!s.empty())
            total += inst.functions[static_cast<std::size_t>(i)].eval(s);
    }
    return total;
}

}  // namespace

ScaledChain scale_chain(const ChainAllocation& chain) {
    ScaledChain sc;
    sc.n = chain.n;
    sc.k = chain.k;

    std::vector<Rat> weights;
    for (const auto& entries : chain.chains)
        for (const auto& [set, weight] : entries)
            weights.push_back(weight);
    sc.m = lcm_denominators(weights);
    sc.M = Int(sc.k) * (sc.k - 1) * sc.m;

    sc.sets.resize(static_cast<std::size_t>(sc.k));
    sc.prefix.resize(static_cast<std::size_t>(sc.k));
    for (int i = 0; i < sc.k; ++i) {
        Int running = 0;
        const auto& entries = chain.chains[static_cast<std::size_t>(i)];
        for (std::size_t l = 0; l < entries.size(); ++l) {
            const auto& [set, weight] = entries[l];
            if (set.empty() || weight <= 0)
                throw ContractViolation("chain entries must be nonempty sets with positive weight");
            if (l > 0 && !set.strict_subset_of(entries[l - 1].first))
                throw ContractViolation("chain sets must be strictly nested, outermost first");
            Rat count = Rat(sc.M) * weight;
            if (!is_integer(count))
                throw ContractViolation("scaled weight is not integral");
            running += numerator(count);
            sc.sets[static_cast<std::size_t>(i)].push_back(set);
            sc.prefix[static_cast<std::size_t>(i)].push_back(running);
        }
        if (running > sc.M)
            throw ContractViolation("chain carries more than total weight 1");
    }
    return sc;
}

Subset u_set(const ScaledChain& sc, int i, const Int& j) {
    if (i < 0 || i >= sc.k)
        throw ContractViolation("u_set function index out of range");
    if (j < 1 || j > sc.M)
        throw ContractViolation("u_set index " + j.str() + " outside [1, " + sc.M.str() + "]");
    const auto& prefix = sc.prefix[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(prefix.begin(), prefix.end(), j);
    if (it == prefix.end())
        return Subset();
    return sc.sets[static_cast<std::size_t>(i)][static_cast<std::size_t>(it - prefix.begin())];
}

TupleIndex tuple_at(const ScaledChain& sc, const Int& j) {
    const Int range = sc.tuple_range();
    if (j < 1 || j > range)
        throw ContractViolation("tuple index " + j.str() + " outside [1, " + range.str() + "]");

    const Int two_m = 2 * sc.m;
    const int k = sc.k;
    TupleIndex tuple;
    tuple.j = j;
    tuple.a.resize(static_cast<std::size_t>(k));
    for (int i = 0; i + 1 < k; ++i)
        tuple.a[static_cast<std::size_t>(i)] = mod_in_range(two_m * i + j, range);
    const Int block = (j - 1) / two_m;  // 0-based block, floor((j-1)/2m)
    tuple.a[static_cast<std::size_t>(k - 1)] =
        mod_in_range((two_m - j + 1) * (k - 1), range) - block;

    // Closed per-block form of the last coordinate, from unrolling the
    // wraparound: a_k = (2m*p - j + 1)(k-1) - (p-1) on block p.
    Int direct = (two_m * (block + 1) - j + 1) * (k - 1) - block;
    if (tuple.a[static_cast<std::size_t>(k - 1)] != direct)
        throw ContractViolation("last tuple coordinate disagrees with its block form");

    Int sum = 0;
    for (const Int& a : tuple.a) {
        if (a < 1 || a > sc.M)
            throw ContractViolation("tuple coordinate " + a.str() + " outside [1, M]");
        sum += a;
    }
    if (sum != sc.M + k - (block + 1))
        throw ContractViolation("tuple sum identity failed at j = " + j.str());
    return tuple;
}

bool covering_check(const ScaledChain& sc, const TupleIndex& tuple) {
    Subset covered;
    for (int i = 0; i < sc.k; ++i)
        covered = covered | u_set(sc, i, tuple.a[static_cast<std::size_t>(i)]);
    return covered == Subset::full(sc.n);
}

std::vector<Subset> Partition::blocks() const {
    std::vector<Subset> out(static_cast<std::size_t>(k));
    for (std::size_t e = 0; e < assignment.size(); ++e)
        out[static_cast<std::size_t>(assignment[e])] =
            out[static_cast<std::size_t>(assignment[e])] | Subset::single(static_cast<int>(e));
    return out;
}

Partition extract_partition(const Instance& inst, const std::vector<Subset>& cover) {
    if (static_cast<int>(cover.size()) != inst.k)
        throw ContractViolation("cover must have one set per function");
    Partition partition;
    partition.k = inst.k;
    partition.assignment.resize(static_cast<std::size_t>(inst.n()), -1);
    for (int e = 0; e < inst.n(); ++e) {
        for (int i = 0; i < inst.k; ++i) {
            if (cover[static_cast<std::size_t>(i)].contains(e)) {
                partition.assignment[static_cast<std::size_t>(e)] = i;
                break;
            }
        }
        if (partition.assignment[static_cast<std::size_t>(e)] < 0)
            throw ContractViolation("cover does not span element " + std::to_string(e));
    }
    return partition;
}

ScanResult find_jstar(const Instance& inst, const ScaledChain& sc) {
    const int k = sc.k;
    const Int two_m = 2 * sc.m;
    const Int range = sc.tuple_range();

    // Breakpoints of j -> (U_1^{a_1^j}, ..., U_k^{a_k^j}). Coordinates
    // i < k-1 are two increasing unit-slope pieces; the last coordinate
    // decreases with slope -(k-1) inside each of the k-1 blocks.
    std::vector<Int> candidates;
    candidates.push_back(Int(1));
    for (int p = 1; p <= k - 1; ++p)
        candidates.push_back(two_m * (p - 1) + 1);  // block starts
    for (int i = 2; i <= k - 1; ++i)
        candidates.push_back(two_m * (k - i) + 1);  // wrap of coordinate i

    for (int i = 1; i <= k - 1; ++i) {
        const auto& prefix = sc.prefix[static_cast<std::size_t>(i - 1)];
        for (const Int& threshold : prefix) {
            // Piece A: j in [1, 2m(k-i)], a = 2m(i-1) + j. The indexed set
            // changes when a first exceeds the threshold.
            Int j0 = threshold + 1 - two_m * (i - 1);
            if (j0 >= 1 && j0 <= two_m * (k - i))
                candidates.push_back(j0);
            // Piece B: j in [2m(k-i)+1, 2m(k-1)], a = j - 2m(k-i).
            Int j1 = threshold + 1 + two_m * (k - i);
            if (j1 >= two_m * (k - i) + 1 && j1 <= range)
                candidates.push_back(j1);
        }
    }
    {
        const auto& prefix = sc.prefix[static_cast<std::size_t>(k - 1)];
        for (int p = 1; p <= k - 1; ++p) {
            const Int block_lo = two_m * (p - 1) + 1;
            const Int block_hi = two_m * p;
            for (const Int& threshold : prefix) {
                // a = (2mp - j + 1)(k-1) - (p-1) decreasing; first j in the
                // block with a <= threshold.
                Int j0 = two_m * p + 1 - (threshold + p - 1) / (k - 1);
                if (j0 >= block_lo && j0 <= block_hi)
                    candidates.push_back(j0);
            }
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    ScanResult result;
    bool first = true;
    for (const Int& j : candidates) {
        TupleIndex tuple = tuple_at(sc, j);
        if (!covering_check(sc, tuple))
            throw ContractViolation("generated tuple fails to cover at j = " + j.str());
        Rat value = tuple_value(inst, sc, tuple);
        ++result.candidates_evaluated;
        if (first || value < result.value) {
            first = false;
            result.jstar = j;
            result.tuple = std::move(tuple);
            result.value = value;
        }
    }

    // Exhaustive cross-check at small scale: the breakpoint answer must match
    // a literal scan over every j, including the smallest-minimizer tie-break.
    if (range <= 1000000) {
        Int best_j;
        Rat best_value;
        bool scan_first = true;
        for (Int j = 1; j <= range; ++j) {
            Rat value = tuple_value(inst, sc, tuple_at(sc, j));
            if (scan_first || value < best_value) {
                scan_first = false;
                best_j = j;
                best_value = value;
            }
        }
        if (best_value != result.value || best_j != result.jstar)
            throw ContractViolation(
                "breakpoint scan disagrees with the full scan: got (j=" + result.jstar.str() +
                ", value=" + render_rat(result.value) + "), full scan found (j=" + best_j.str() +
                ", value=" + render_rat(best_value) + ")");
        result.full_scan_checked = true;
    }
    return result;
}

RoundResult round_solution(const Instance& inst, const ChainAllocation& chain) {
    ScaledChain sc = scale_chain(chain);
    ScanResult scan = find_jstar(inst, sc);

    RoundResult result;
    result.M = sc.M;
    result.m = sc.m;
    result.jstar = scan.jstar;
    result.tuple = scan.tuple.a;
    result.cover_value = scan.value;
    result.candidates_evaluated = scan.candidates_evaluated;
    result.full_scan_checked = scan.full_scan_checked;

    Subset covered;
    for (int i = 0; i < sc.k; ++i) {
        result.cover.push_back(u_set(sc, i, scan.tuple.a[static_cast<std::size_t>(i)]));
        covered = covered | result.cover.back();
    }
    if (covered != Subset::full(sc.n))
        throw ContractViolation("chosen tuple does not cover the ground set");

    result.partition = extract_partition(inst, result.cover);
    result.value = 0;
    std::vector<Subset> blocks = result.partition.blocks();
    for (int i = 0; i < inst.k; ++i)
        result.value += inst.functions[static_cast<std::size_t>(i)].eval(
            blocks[static_cast<std::size_t>(i)]);

    if (result.value > result.cover_value)
        throw ContractViolation("shrinking the cover increased the objective");
    // The guarantee: twice the rounded value never exceeds k times the
    // fractional objective. Exact rational comparison, asserted always.
    if (2 * result.value > Rat(inst.k) * chain.objective(inst))
        throw ContractViolation("rounded value broke the k/2 guarantee");
    return result;
}

}  // namespace msca
