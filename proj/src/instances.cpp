#include "msca/instances.hpp"

#include "msca/errors.hpp"

#include <algorithm>

namespace msca {

std::uint64_t draw_below(std::mt19937_64& engine, std::uint64_t bound) {
    if (bound == 0)
        throw ContractViolation("draw_below needs a positive bound");
    std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
    std::uint64_t r;
    do {
        r = engine();
    } while (r >= limit);
    return r % bound;
}

Instance gen_lower_bound(int k, int p, int pad) {
    auto structure = make_lower_bound_structure(k, p, pad);
    std::vector<SubmodularFn> functions;
    functions.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        functions.push_back(SubmodularFn::lower_bound_family(structure, i));
    std::map<std::string, std::string> metadata = {
        {"family", "lowerbound"},
        {"k", std::to_string(k)},
        {"p", std::to_string(p)},
        {"pad", std::to_string(pad)},
    };
    return Instance(GroundSet(structure->n), std::move(functions), std::move(metadata));
}

FractionalAllocation lower_bound_witness(const LowerBoundStructure& structure) {
    FractionalAllocation z(structure.n, structure.k);
    const Rat weight = Rat(1) / structure.s;
    const Subset pad = structure.pad_mask();
    for (int i = 0; i < structure.k; ++i) {
        for (int level = 1; level <= structure.s; ++level) {
            Subset set = structure.level_set(i, level);
            if (i == 0)
                set = set | pad;  // the pad rides with function 0's sets
            z.add(i, set, weight);
        }
    }
    return z;
}

Rat lower_bound_witness_objective(int k, int p) {
    const int s = p * k - k + 1;
    const int top = std::min(s, 2 * p);
    // sum_{j=1..top} (2p+1-j), an arithmetic series.
    Rat series = Rat(top) * (2 * p + 1) - Rat(top) * (top + 1) / 2;
    return Rat(k) * series / s;
}

Instance gen_coverage(int n, int k, int universe, const Rat& density, std::uint64_t seed) {
    if (n < 1 || n > kMaxGroundSize)
        throw CapacityError("coverage instance size outside [1, " +
                            std::to_string(kMaxGroundSize) + "]");
    if (k < 2)
        throw UsageError("at least two functions are required");
    if (universe < 0 || universe > 64)
        throw CapacityError("coverage universe is limited to 64 points");
    if (density < 0 || density > 1)
        throw UsageError("density must lie in [0, 1]");

    std::mt19937_64 engine(seed);
    const Int scale = Int(1) << 64;
    // Accept iff draw/2^64 < density, as an exact integer comparison.
    auto accept = [&]() {
        Int draw = engine();
        return draw * denominator(density) < numerator(density) * scale;
    };

    std::vector<SubmodularFn> functions;
    for (int i = 0; i < k; ++i) {
        std::vector<Rat> weights;
        weights.reserve(static_cast<std::size_t>(universe));
        for (int t = 0; t < universe; ++t) {
            std::uint64_t num = draw_below(engine, 8) + 1;
            std::uint64_t den = draw_below(engine, 4) + 1;
            weights.emplace_back(Rat(num) / Rat(den));
        }
        std::vector<std::uint64_t> covers(static_cast<std::size_t>(n), 0);
        for (int e = 0; e < n; ++e)
            for (int t = 0; t < universe; ++t)
                if (accept())
                    covers[static_cast<std::size_t>(e)] |= std::uint64_t{1} << t;
        functions.push_back(
            SubmodularFn::coverage(GroundSet(n), universe, std::move(weights), std::move(covers)));
    }
    std::map<std::string, std::string> metadata = {
        {"family", "coverage"},
        {"n", std::to_string(n)},
        {"k", std::to_string(k)},
        {"universe", std::to_string(universe)},
        {"density", render_rat(density)},
        {"seed", std::to_string(seed)},
    };
    return Instance(GroundSet(n), std::move(functions), std::move(metadata));
}

Instance gen_facility_location(int n, int k, int cost_range, std::uint64_t seed) {
    if (n < 1 || n > kMaxGroundSize)
        throw CapacityError("facility instance size outside [1, " +
                            std::to_string(kMaxGroundSize) + "]");
    if (k < 2)
        throw UsageError("at least two functions are required");
    if (cost_range < 0)
        throw UsageError("cost range must be nonnegative");

    std::mt19937_64 engine(seed);
    std::vector<SubmodularFn> functions;
    for (int i = 0; i < k; ++i) {
        Rat opening = Rat(draw_below(engine, static_cast<std::uint64_t>(cost_range) + 1));
        std::vector<Rat> costs;
        costs.reserve(static_cast<std::size_t>(n));
        for (int e = 0; e < n; ++e)
            costs.emplace_back(Rat(draw_below(engine, static_cast<std::uint64_t>(cost_range) + 1)));
        functions.push_back(
            SubmodularFn::facility_location(GroundSet(n), std::move(opening), std::move(costs)));
    }
    std::map<std::string, std::string> metadata = {
        {"family", "facility"},
        {"n", std::to_string(n)},
        {"k", std::to_string(k)},
        {"cost_range", std::to_string(cost_range)},
        {"seed", std::to_string(seed)},
    };
    return Instance(GroundSet(n), std::move(functions), std::move(metadata));
}

}  // namespace msca
