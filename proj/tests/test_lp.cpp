#include "msca/errors.hpp"
#include "msca/instances.hpp"
#include "msca/json_io.hpp"
#include "msca/lp_relaxation.hpp"
#include "msca/verification.hpp"

#include <doctest.h>

#include <optional>
#include <random>

using namespace msca;

namespace {

Instance modular_instance(const std::vector<std::vector<Rat>>& costs) {
    const int n = static_cast<int>(costs[0].size());
    std::vector<SubmodularFn> fns;
    for (const auto& c : costs)
        fns.push_back(SubmodularFn::facility_location(GroundSet(n), Rat(0), c));
    return Instance(GroundSet(n), std::move(fns));
}

// Exact Gaussian elimination on the 0/1 basis matrix: returns the solution of
// B x = 1 and det(B). Independent of the simplex pivoting path.
std::pair<std::vector<Rat>, Rat> solve_basis_system(const std::vector<Subset>& columns, int n) {
    std::vector<std::vector<Rat>> a(static_cast<std::size_t>(n),
                                    std::vector<Rat>(static_cast<std::size_t>(n) + 1, Rat(0)));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r)
            a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                columns[static_cast<std::size_t>(c)].contains(r) ? 1 : 0;
    for (int r = 0; r < n; ++r)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)] = 1;

    Rat det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                pivot = r;
                break;
            }
        REQUIRE(pivot >= 0);
        if (pivot != col) {
            std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(col)]);
            det = -det;
        }
        det *= a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        Rat inv = Rat(1) / a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        for (int c = col; c <= n; ++c)
            a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)] *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == col)
                continue;
            Rat factor = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (factor == 0)
                continue;
            for (int c = col; c <= n; ++c)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
                    factor * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
        }
    }
    std::vector<Rat> x;
    for (int r = 0; r < n; ++r)
        x.push_back(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)]);
    return {x, det};
}

}  // namespace

TEST_CASE("single element goes to the cheaper function") {
    Instance inst = modular_instance({{Rat(1)}, {Rat(3)}});
    LpSolution sol = solve_lp(inst);
    CHECK(sol.objective == 1);
    REQUIRE(sol.allocation.support[0].size() == 1);
    CHECK(sol.allocation.support[0][0].first == Subset::single(0));
    CHECK(sol.allocation.support[0][0].second == 1);
    CHECK(sol.allocation.support[1].empty());
}

TEST_CASE("modular optimum is the per-element minimum") {
    std::mt19937_64 engine(13);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(draw_below(engine, 5));
        const int k = 2 + static_cast<int>(draw_below(engine, 2));
        std::vector<std::vector<Rat>> costs(static_cast<std::size_t>(k));
        for (auto& c : costs)
            for (int e = 0; e < n; ++e)
                c.emplace_back(Rat(draw_below(engine, 12)) / (1 + draw_below(engine, 3)));
        Instance inst = modular_instance(costs);
        Rat expected = 0;
        for (int e = 0; e < n; ++e) {
            Rat best = costs[0][static_cast<std::size_t>(e)];
            for (int i = 1; i < k; ++i)
                best = std::min(best, costs[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)]);
            expected += best;
        }
        LpSolution sol = solve_lp(inst);
        CHECK(sol.objective == expected);
        CHECK(brute_force_opt(inst).value == expected);
    }
}

TEST_CASE("solver output is feasible, small, and certified optimal") {
    std::mt19937_64 engine(17);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 3 + static_cast<int>(draw_below(engine, 5));
        const int k = 2 + static_cast<int>(draw_below(engine, 3));
        Instance inst = (trial % 2 == 0)
                            ? gen_coverage(n, k, n, Rat(1, 2), engine())
                            : gen_facility_location(n, k, 9, engine());
        LpSolution sol = solve_lp(inst);
        CHECK(check_feasible(inst, sol.allocation).pass);
        CHECK(sol.allocation.support_size() <= n);
        CHECK(sol.allocation.objective(inst) == sol.objective);

        // Weak duality: integral assignments and their mixtures never dip
        // below the LP optimum.
        for (int probe = 0; probe < 4; ++probe) {
            FractionalAllocation y(n, k);
            std::vector<std::vector<int>> blocks(
                2, std::vector<int>(static_cast<std::size_t>(n)));
            for (auto& assignment : blocks)
                for (int e = 0; e < n; ++e)
                    assignment[static_cast<std::size_t>(e)] =
                        static_cast<int>(draw_below(engine, static_cast<std::uint64_t>(k)));
            Rat lambda = Rat(1 + draw_below(engine, 3)) / 4;
            for (int half = 0; half < 2; ++half) {
                Rat w = half == 0 ? lambda : 1 - lambda;
                for (int i = 0; i < k; ++i) {
                    Subset block;
                    for (int e = 0; e < n; ++e)
                        if (blocks[static_cast<std::size_t>(half)][static_cast<std::size_t>(e)] == i)
                            block = block | Subset::single(e);
                    if (!block.empty())
                        y.add(i, block, w);
                }
            }
            REQUIRE(check_feasible(inst, y).pass);
            CHECK(y.objective(inst) >= sol.objective);
        }
    }
}

TEST_CASE("identical instances give identical solutions") {
    Instance inst = gen_coverage(7, 3, 7, Rat(1, 2), 99);
    LpSolution a = solve_lp(inst);
    LpSolution b = solve_lp(inst);
    CHECK(lp_solution_to_json(a).dump() == lp_solution_to_json(b).dump());
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("basic weights solve the basis system exactly") {
    std::mt19937_64 engine(23);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(draw_below(engine, 4));
        Instance inst = (trial % 2 == 0)
                            ? gen_facility_location(n, 3, 7, engine())
                            : gen_coverage(n, 2, n, Rat(2, 3), engine());
        LpSolution sol = solve_lp(inst);
        std::vector<Subset> columns;
        for (const auto& [i, set] : sol.basis)
            columns.push_back(set);
        auto [x, det] = solve_basis_system(columns, n);
        REQUIRE(det != 0);

        // Row r of the basis corresponds to solution coordinate r; positive
        // coordinates must be exactly the stored support weights.
        std::vector<Rat> weights;
        for (int r = 0; r < n; ++r) {
            if (x[static_cast<std::size_t>(r)] == 0)
                continue;
            const auto& [i, set] = sol.basis[static_cast<std::size_t>(r)];
            bool found = false;
            for (const auto& [s, w] : sol.allocation.support[static_cast<std::size_t>(i)])
                if (s == set && w == x[static_cast<std::size_t>(r)])
                    found = true;
            CHECK(found);
            weights.push_back(x[static_cast<std::size_t>(r)]);
        }
        // Common denominator of the solution divides the basis determinant.
        Int lcm = lcm_denominators(weights);
        std::vector<Rat> all_x(x.begin(), x.end());
        CHECK(lcm == lcm_denominators(all_x));
        REQUIRE(is_integer(det));
        CHECK(abs(numerator(det)) % lcm == 0);
    }
}

TEST_CASE("simplex agrees with basic-solution enumeration") {
    // Independent oracle: every basic solution is some n-subset of columns;
    // enumerate them all, solve each system, and take the best feasible one.
    std::mt19937_64 engine(29);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + static_cast<int>(draw_below(engine, 2));  // n in [2, 3]
        const int k = 2;
        Instance inst = (trial % 2 == 0) ? gen_coverage(n, k, n, Rat(1, 2), engine())
                                         : gen_facility_location(n, k, 7, engine());
        std::vector<std::pair<int, Subset>> columns;
        for (int i = 0; i < k; ++i)
            for (std::uint32_t mask = 1; mask < (1u << n); ++mask)
                columns.emplace_back(i, Subset(mask));

        std::optional<Rat> best;
        std::vector<int> choose(static_cast<std::size_t>(n));
        auto walk = [&](auto&& self, int depth, int from) -> void {
            if (depth == n) {
                std::vector<Subset> sets;
                for (int c : choose)
                    sets.push_back(columns[static_cast<std::size_t>(c)].second);
                // Skip singular bases.
                std::vector<std::vector<Rat>> mat(static_cast<std::size_t>(n),
                                                  std::vector<Rat>(static_cast<std::size_t>(n)));
                for (int c = 0; c < n; ++c)
                    for (int r = 0; r < n; ++r)
                        mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                            sets[static_cast<std::size_t>(c)].contains(r) ? 1 : 0;
                // Rank probe by elimination.
                int rank = 0;
                for (int col = 0; col < n; ++col) {
                    int pivot = -1;
                    for (int r = rank; r < n; ++r)
                        if (mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) {
                            pivot = r;
                            break;
                        }
                    if (pivot < 0)
                        continue;
                    std::swap(mat[static_cast<std::size_t>(pivot)],
                              mat[static_cast<std::size_t>(rank)]);
                    for (int r = 0; r < n; ++r) {
                        if (r == rank)
                            continue;
                        Rat factor = mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
                                     mat[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
                        if (factor == 0)
                            continue;
                        for (int c2 = 0; c2 < n; ++c2)
                            mat[static_cast<std::size_t>(r)][static_cast<std::size_t>(c2)] -=
                                factor *
                                mat[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c2)];
                    }
                    ++rank;
                }
                if (rank < n)
                    return;
                auto [x, det] = solve_basis_system(sets, n);
                Rat value = 0;
                for (int r = 0; r < n; ++r) {
                    if (x[static_cast<std::size_t>(r)] < 0)
                        return;  // infeasible basis
                    value += x[static_cast<std::size_t>(r)] *
                             inst.functions[static_cast<std::size_t>(
                                                columns[static_cast<std::size_t>(
                                                            choose[static_cast<std::size_t>(r)])]
                                                    .first)]
                                 .eval(columns[static_cast<std::size_t>(
                                                   choose[static_cast<std::size_t>(r)])]
                                           .second);
                }
                if (!best || value < *best)
                    best = value;
                return;
            }
            for (int c = from; c < static_cast<int>(columns.size()); ++c) {
                choose[static_cast<std::size_t>(depth)] = c;
                self(self, depth + 1, c + 1);
            }
        };
        walk(walk, 0, 0);
        REQUIRE(best.has_value());
        CHECK(solve_lp(inst).objective == *best);
    }
}

TEST_CASE("the largest supported ground set solves") {
    std::vector<Rat> c0, c1;
    for (int e = 0; e < 16; ++e) {
        c0.emplace_back(Rat(e % 5));
        c1.emplace_back(Rat((e + 2) % 5));
    }
    std::vector<SubmodularFn> fns = {
        SubmodularFn::facility_location(GroundSet(16), Rat(0), c0),
        SubmodularFn::facility_location(GroundSet(16), Rat(0), c1)};
    Instance inst(GroundSet(16), std::move(fns));
    Rat expected = 0;
    for (int e = 0; e < 16; ++e)
        expected += std::min(e % 5, (e + 2) % 5);
    CHECK(solve_lp(inst).objective == expected);
}

TEST_CASE("family relaxation stays below the witness value") {
    for (auto [k, p] : {std::pair{2, 2}, {3, 1}}) {
        Instance inst = gen_lower_bound(k, p);
        LpSolution sol = solve_lp(inst);
        CHECK(sol.objective <= lower_bound_witness_objective(k, p));
        CHECK(sol.objective > 0);
    }
}

TEST_CASE("zero costs give a zero optimum") {
    Instance inst = gen_coverage(4, 2, 4, Rat(0), 5);
    LpSolution sol = solve_lp(inst);
    CHECK(sol.objective == 0);

    // One free function absorbs everything.
    std::vector<SubmodularFn> fns = {
        SubmodularFn::facility_location(GroundSet(4), Rat(0), std::vector<Rat>(4, Rat(0))),
        SubmodularFn::facility_location(GroundSet(4), Rat(5), {Rat(1), Rat(2), Rat(3), Rat(4)})};
    Instance free_fn(GroundSet(4), std::move(fns));
    CHECK(solve_lp(free_fn).objective == 0);
    CHECK(brute_force_opt(free_fn).value == 0);
    CHECK(brute_force_opt(free_fn).partition.assignment == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("ground sets beyond the column budget are rejected") {
    std::vector<Rat> costs(17, Rat(1));
    std::vector<SubmodularFn> fns = {
        SubmodularFn::facility_location(GroundSet(17), Rat(0), costs),
        SubmodularFn::facility_location(GroundSet(17), Rat(1), costs)};
    Instance inst(GroundSet(17), std::move(fns));
    CHECK_THROWS_AS(solve_lp(inst), CapacityError);
}

TEST_CASE("feasibility diagnostics name the broken element") {
    Instance inst = modular_instance({{Rat(1)}, {Rat(3)}});
    FractionalAllocation y(1, 2);
    y.add(0, Subset::single(0), Rat(1, 2));
    FeasibilityReport report = check_feasible(inst, y);
    CHECK_FALSE(report.pass);
    CHECK(report.coverage[0] == Rat(1, 2));
    CHECK(report.detail.find("element 0") != std::string::npos);
    CHECK(report.detail.find("1/2") != std::string::npos);
}
