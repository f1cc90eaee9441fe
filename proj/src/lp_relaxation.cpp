#include "msca/lp_relaxation.hpp"

#include "msca/errors.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace msca {

namespace {

// Column identifiers follow (i, mask) order; mask 0 (the empty set) has no
// column: it would be a zero column of cost zero and only invite degenerate
// pivots.
struct Column {
    int i = 0;
    std::uint32_t mask = 0;
};

long column_id(const Column& c, std::uint32_t mask_count) {
    return static_cast<long>(c.i) * static_cast<long>(mask_count) +
           static_cast<long>(c.mask) - 1;
}

}  // namespace

LpSolution solve_lp(const Instance& inst) {
    const int n = inst.n();
    const int k = inst.k;
    if (n > kMaxLpGroundSize)
        throw CapacityError("LP column enumeration is limited to " +
                            std::to_string(kMaxLpGroundSize) + " elements, got " +
                            std::to_string(n));

    const std::uint32_t mask_count = (std::uint32_t{1} << n) - 1;

    // Explicit cost tables: one evaluation per (i, mask), reused every pivot.
    std::vector<std::vector<Rat>> cost(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const SubmodularFn materialized = inst.functions[static_cast<std::size_t>(i)].materialize();
        cost[static_cast<std::size_t>(i)] = *materialized.as_table()->values;
    }

    // Start basis: singleton sets assigned to function 0 form the identity.
    std::vector<Column> basis(static_cast<std::size_t>(n));
    std::vector<Rat> basic_cost(static_cast<std::size_t>(n));
    for (int e = 0; e < n; ++e) {
        basis[static_cast<std::size_t>(e)] = Column{0, std::uint32_t{1} << e};
        basic_cost[static_cast<std::size_t>(e)] = cost[0][std::uint32_t{1} << e];
    }
    std::vector<std::vector<Rat>> binv(static_cast<std::size_t>(n),
                                       std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)));
    for (int r = 0; r < n; ++r)
        binv[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] = 1;
    std::vector<Rat> value(static_cast<std::size_t>(n), Rat(1));  // B^-1 * rhs

    std::vector<Rat> dual(static_cast<std::size_t>(n));
    std::vector<Rat> dual_sum(std::size_t{1} << n);  // subset sums of duals
    std::vector<Rat> direction(static_cast<std::size_t>(n));

    long iterations = 0;
    while (true) {
        // Duals: c_B^T B^-1.
        for (int c = 0; c < n; ++c) {
            Rat total = 0;
            for (int r = 0; r < n; ++r)
                if (binv[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0)
                    total += basic_cost[static_cast<std::size_t>(r)] *
                             binv[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            dual[static_cast<std::size_t>(c)] = total;
        }
        // dual_sum[mask] = sum of duals over the elements of mask.
        dual_sum[0] = 0;
        for (std::uint32_t mask = 1; mask <= mask_count; ++mask)
            dual_sum[mask] = dual_sum[mask & (mask - 1)] +
                             dual[static_cast<std::size_t>(std::countr_zero(mask))];

        // Bland: the first column in (i, mask) order with negative reduced
        // cost enters. Falling through the loop is the full certifying pass.
        bool entered = false;
        Column entering;
        for (int i = 0; i < k && !entered; ++i) {
            const std::vector<Rat>& row = cost[static_cast<std::size_t>(i)];
            for (std::uint32_t mask = 1; mask <= mask_count; ++mask) {
                if (row[mask] < dual_sum[mask]) {
                    entering = Column{i, mask};
                    entered = true;
                    break;
                }
            }
        }
        if (!entered)
            break;  // every reduced cost nonnegative: optimal

        // Direction B^-1 * chi_S for the entering set.
        for (int r = 0; r < n; ++r) {
            Rat total = 0;
            for (std::uint32_t bits = entering.mask; bits != 0; bits &= bits - 1)
                total += binv[static_cast<std::size_t>(r)]
                             [static_cast<std::size_t>(std::countr_zero(bits))];
            direction[static_cast<std::size_t>(r)] = total;
        }

        // Ratio test; ties broken by lowest basic column id (Bland).
        int leaving = -1;
        Rat theta;
        for (int r = 0; r < n; ++r) {
            if (direction[static_cast<std::size_t>(r)] <= 0)
                continue;
            Rat ratio = value[static_cast<std::size_t>(r)] / direction[static_cast<std::size_t>(r)];
            if (leaving < 0 || ratio < theta ||
                (ratio == theta && column_id(basis[static_cast<std::size_t>(r)], mask_count) <
                                       column_id(basis[static_cast<std::size_t>(leaving)], mask_count))) {
                leaving = r;
                theta = ratio;
            }
        }
        // The feasible region is bounded (every set weight is at most 1), so
        // simplex can never see an unbounded ray here.
        if (leaving < 0)
            throw ContractViolation("simplex reported an unbounded direction on a bounded LP");

        // Pivot: eliminate the entering column from all other rows.
        const Rat pivot = direction[static_cast<std::size_t>(leaving)];
        for (int c = 0; c < n; ++c)
            binv[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(c)] /= pivot;
        value[static_cast<std::size_t>(leaving)] = theta;
        for (int r = 0; r < n; ++r) {
            if (r == leaving || direction[static_cast<std::size_t>(r)] == 0)
                continue;
            const Rat factor = direction[static_cast<std::size_t>(r)];
            for (int c = 0; c < n; ++c)
                if (binv[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(c)] != 0)
                    binv[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                        factor * binv[static_cast<std::size_t>(leaving)][static_cast<std::size_t>(c)];
            value[static_cast<std::size_t>(r)] -= factor * theta;
        }
        basis[static_cast<std::size_t>(leaving)] = entering;
        basic_cost[static_cast<std::size_t>(leaving)] =
            cost[static_cast<std::size_t>(entering.i)][entering.mask];
        ++iterations;
    }

    LpSolution solution;
    solution.iterations = iterations;
    solution.allocation = FractionalAllocation(n, k);
    solution.objective = 0;
    for (int r = 0; r < n; ++r) {
        solution.basis.emplace_back(basis[static_cast<std::size_t>(r)].i,
                                    Subset(basis[static_cast<std::size_t>(r)].mask));
        if (value[static_cast<std::size_t>(r)] > 0) {
            solution.allocation.add(basis[static_cast<std::size_t>(r)].i,
                                    Subset(basis[static_cast<std::size_t>(r)].mask),
                                    value[static_cast<std::size_t>(r)]);
            solution.objective +=
                basic_cost[static_cast<std::size_t>(r)] * value[static_cast<std::size_t>(r)];
        }
    }
    // Keep each function's support in deterministic mask order.
    for (auto& entries : solution.allocation.support)
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return a.first.bits < b.first.bits; });
    return solution;
}

}  // namespace msca
