#include "msca/chains.hpp"

#include "msca/errors.hpp"

#include <algorithm>
#include <map>

namespace msca {

Rat ChainAllocation::objective(const Instance& inst) const {
    if (inst.n() != n || inst.k != k)
        throw ContractViolation("chain allocation does not match the instance shape");
    Rat total = 0;
    for (int i = 0; i < k; ++i)
        for (const auto& [set, weight] : chains[static_cast<std::size_t>(i)])
            total += weight * inst.functions[static_cast<std::size_t>(i)].eval(set);
    return total;
}

FractionalAllocation ChainAllocation::as_allocation() const {
    FractionalAllocation y(n, k);
    for (int i = 0; i < k; ++i)
        for (const auto& [set, weight] : chains[static_cast<std::size_t>(i)])
            y.add(i, set, weight);
    return y;
}

namespace {

void require_feasible(const Instance& inst, const FractionalAllocation& y) {
    FeasibilityReport report = check_feasible(inst, y);
    if (!report.pass)
        throw ContractViolation("uncross requires a feasible allocation: " + report.detail);
}

void check_chain_shape(const ChainAllocation& result) {
    for (const auto& chain : result.chains) {
        for (std::size_t idx = 0; idx < chain.size(); ++idx) {
            if (chain[idx].first.empty() || chain[idx].second <= 0)
                throw ContractViolation("chain entry must be a nonempty set with positive weight");
            if (idx > 0 && !chain[idx].first.strict_subset_of(chain[idx - 1].first))
                throw ContractViolation("chain sets must be strictly nested");
        }
    }
}

void check_objective_not_increased(const Instance& inst, const FractionalAllocation& input,
                                   const ChainAllocation& output) {
    if (output.objective(inst) > input.objective(inst))
        throw ContractViolation("uncrossing increased the objective");
}

}  // namespace

ChainAllocation uncross(const Instance& inst, const FractionalAllocation& y) {
    require_feasible(inst, y);
    ChainAllocation result(inst.n(), inst.k);
    for (int i = 0; i < inst.k; ++i) {
        // Aggregate vector of this function's measure, then its level sets.
        std::vector<Rat> x(static_cast<std::size_t>(inst.n()), Rat(0));
        for (const auto& [set, weight] : y.support[static_cast<std::size_t>(i)])
            for (int e : subset_elements(set))
                x[static_cast<std::size_t>(e)] += weight;
        WeightedChain chain = vector_to_chain(FractionalVector(std::move(x)));
        result.chains[static_cast<std::size_t>(i)] = std::move(chain.levels);
    }
    check_chain_shape(result);
    if (!check_feasible(inst, result.as_allocation()).pass)
        throw ContractViolation("level-set uncrossing broke feasibility");
    check_objective_not_increased(inst, y, result);
    return result;
}

ChainAllocation pairwise_uncross_oracle(const Instance& inst, const FractionalAllocation& y) {
    require_feasible(inst, y);
    ChainAllocation result(inst.n(), inst.k);
    for (int i = 0; i < inst.k; ++i) {
        // Map keys keep the support in mask order, which makes the scan for
        // the lexicographically first incomparable pair deterministic.
        std::map<std::uint32_t, Rat> measure;
        for (const auto& [set, weight] : y.support[static_cast<std::size_t>(i)])
            measure[set.bits] += weight;

        while (true) {
            Subset s, t;
            bool found = false;
            for (auto a = measure.begin(); a != measure.end() && !found; ++a) {
                for (auto b = std::next(a); b != measure.end(); ++b) {
                    Subset u(a->first), v(b->first);
                    if (u.subset_of(v) || v.subset_of(u))
                        continue;
                    s = u;
                    t = v;
                    found = true;
                    break;
                }
            }
            if (!found)
                break;
            Rat eps = std::min(measure[s.bits], measure[t.bits]);
            Subset meet = s & t, join = s | t;
            measure[s.bits] -= eps;
            measure[t.bits] -= eps;
            if (!meet.empty())
                measure[meet.bits] += eps;
            measure[join.bits] += eps;
            std::erase_if(measure, [](const auto& entry) { return entry.second == 0; });
        }

        auto& chain = result.chains[static_cast<std::size_t>(i)];
        for (const auto& [mask, weight] : measure)
            chain.emplace_back(Subset(mask), weight);
        // Outermost first.
        std::sort(chain.begin(), chain.end(), [](const auto& lhs, const auto& rhs) {
            return lhs.first.count() > rhs.first.count();
        });
    }
    check_chain_shape(result);
    if (!check_feasible(inst, result.as_allocation()).pass)
        throw ContractViolation("pairwise uncrossing broke feasibility");
    check_objective_not_increased(inst, y, result);
    return result;
}

}  // namespace msca
