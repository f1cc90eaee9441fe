#include "msca/lovasz.hpp"

#include "msca/errors.hpp"

#include <algorithm>
#include <numeric>

namespace msca {

FractionalVector::FractionalVector(std::vector<Rat> coords) : x(std::move(coords)) {
    for (const Rat& c : x)
        if (c < 0 || c > 1)
            throw ContractViolation("fractional coordinate outside [0,1]: " + render_rat(c));
}

WeightedChain::WeightedChain(int ground_size, std::vector<std::pair<Subset, Rat>> entries)
    : n(ground_size), levels(std::move(entries)) {
    std::vector<Rat> load(static_cast<std::size_t>(n), Rat(0));
    for (std::size_t idx = 0; idx < levels.size(); ++idx) {
        const auto& [set, weight] = levels[idx];
        if (set.empty())
            throw ContractViolation("chain sets must be nonempty");
        if (!set.subset_of(Subset::full(n)))
            throw ContractViolation("chain set outside ground set");
        if (weight <= 0)
            throw ContractViolation("chain weights must be positive");
        if (idx > 0 && !set.strict_subset_of(levels[idx - 1].first))
            throw ContractViolation("chain sets must be strictly nested, outermost first");
        for (int e : subset_elements(set)) {
            load[static_cast<std::size_t>(e)] += weight;
            if (load[static_cast<std::size_t>(e)] > 1)
                throw ContractViolation("chain weight above 1 on element " + std::to_string(e));
        }
    }
}

Rat lovasz_value(const SubmodularFn& f, const FractionalVector& x) {
    if (x.dimension() != f.n())
        throw ContractViolation("vector dimension does not match the function's ground set");
    int n = f.n();
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return x.x[static_cast<std::size_t>(a)] > x.x[static_cast<std::size_t>(b)];
    });

    Rat total = 0;
    Subset prefix;
    for (int idx = 0; idx < n; ++idx) {
        prefix = prefix | Subset::single(order[static_cast<std::size_t>(idx)]);
        Rat width = x.x[static_cast<std::size_t>(order[static_cast<std::size_t>(idx)])];
        width -= (idx + 1 < n) ? x.x[static_cast<std::size_t>(order[static_cast<std::size_t>(idx + 1)])]
                               : Rat(0);
        if (width != 0)
            total += width * f.eval(prefix);
    }
    return total;
}

WeightedChain vector_to_chain(const FractionalVector& x) {
    int n = x.dimension();
    // Distinct positive coordinate values, descending.
    std::vector<Rat> thresholds = x.x;
    std::sort(thresholds.begin(), thresholds.end(), std::greater<Rat>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    while (!thresholds.empty() && thresholds.back() <= 0)
        thresholds.pop_back();

    std::vector<std::pair<Subset, Rat>> levels;
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
        Subset level;
        for (int e = 0; e < n; ++e)
            if (x.x[static_cast<std::size_t>(e)] >= thresholds[t])
                level = level | Subset::single(e);
        Rat width = thresholds[t] - (t + 1 < thresholds.size() ? thresholds[t + 1] : Rat(0));
        levels.emplace_back(level, width);
    }
    // Level sets grow as the threshold drops; chain order is outermost first.
    std::reverse(levels.begin(), levels.end());
    return WeightedChain(n, std::move(levels));
}

FractionalVector chain_to_vector(const WeightedChain& chain) {
    std::vector<Rat> x(static_cast<std::size_t>(chain.n), Rat(0));
    for (const auto& [set, weight] : chain.levels)
        for (int e : subset_elements(set))
            x[static_cast<std::size_t>(e)] += weight;
    return FractionalVector(std::move(x));
}

}  // namespace msca
