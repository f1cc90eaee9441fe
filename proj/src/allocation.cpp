#include "msca/allocation.hpp"

#include "msca/errors.hpp"

namespace msca {

void FractionalAllocation::add(int i, Subset set, const Rat& weight) {
    if (i < 0 || i >= k)
        throw ContractViolation("function index out of range");
    if (set.empty())
        throw ContractViolation("allocation sets must be nonempty");
    if (!set.subset_of(Subset::full(n)))
        throw ContractViolation("allocation set outside ground set");
    if (weight <= 0)
        throw ContractViolation("allocation weights must be positive");
    support[static_cast<std::size_t>(i)].emplace_back(set, weight);
}

Rat FractionalAllocation::coverage(int e) const {
    Rat total = 0;
    for (const auto& entries : support)
        for (const auto& [set, weight] : entries)
            if (set.contains(e))
                total += weight;
    return total;
}

Rat FractionalAllocation::objective(const Instance& inst) const {
    if (inst.n() != n || inst.k != k)
        throw ContractViolation("allocation does not match the instance shape");
    Rat total = 0;
    for (int i = 0; i < k; ++i)
        for (const auto& [set, weight] : support[static_cast<std::size_t>(i)])
            total += weight * inst.functions[static_cast<std::size_t>(i)].eval(set);
    return total;
}

int FractionalAllocation::support_size() const {
    int count = 0;
    for (const auto& entries : support)
        count += static_cast<int>(entries.size());
    return count;
}

FeasibilityReport check_feasible(const Instance& inst, const FractionalAllocation& y) {
    FeasibilityReport report;
    report.coverage.assign(static_cast<std::size_t>(inst.n()), Rat(0));
    if (y.n != inst.n() || y.k != inst.k) {
        report.detail = "allocation shape does not match the instance";
        return report;
    }
    for (int i = 0; i < y.k; ++i) {
        for (const auto& [set, weight] : y.support[static_cast<std::size_t>(i)]) {
            if (weight < 0) {
                report.detail = "negative weight on function " + std::to_string(i) + ", set " +
                                render_subset(set);
                return report;
            }
            if (set.empty() || !set.subset_of(Subset::full(y.n))) {
                report.detail = "invalid set " + render_subset(set) + " on function " +
                                std::to_string(i);
                return report;
            }
            for (int e : subset_elements(set))
                report.coverage[static_cast<std::size_t>(e)] += weight;
        }
    }
    for (int e = 0; e < inst.n(); ++e) {
        if (report.coverage[static_cast<std::size_t>(e)] != 1) {
            report.detail = "element " + std::to_string(e) + " covered with total weight " +
                            render_rat(report.coverage[static_cast<std::size_t>(e)]) +
                            ", expected 1";
            return report;
        }
    }
    report.pass = true;
    return report;
}

}  // namespace msca
