#include "msca/submodular.hpp"

#include "msca/errors.hpp"

#include <algorithm>

namespace msca {

Int binomial(int n, int r) {
    if (r < 0 || r > n)
        return 0;
    r = std::min(r, n - r);
    Int result = 1;
    for (int i = 1; i <= r; ++i) {
        result *= n - r + i;
        result /= i;
    }
    return result;
}

Subset LowerBoundStructure::level_set(int i, int level) const {
    if (i < 0 || i >= k || level < 1)
        throw ContractViolation("level_set index out of range");
    Subset out;
    for (int e = 0; e < core; ++e)
        if (vectors[e][i] >= level)
            out = out | Subset::single(e);
    return out;
}

std::shared_ptr<const LowerBoundStructure> make_lower_bound_structure(int k, int p, int pad) {
    if (k < 2)
        throw ContractViolation("family needs k >= 2");
    if (p < 1)
        throw ContractViolation("family needs p >= 1");
    if (pad < 0)
        throw ContractViolation("pad must be nonnegative");

    auto st = std::make_shared<LowerBoundStructure>();
    st->k = k;
    st->p = p;
    st->pad = pad;
    st->s = p * k - k + 1;

    Int count = binomial(p * k, k - 1);
    if (count + pad > kMaxGroundSize)
        throw CapacityError("family instance needs " + count.str() + " + " +
                            std::to_string(pad) + " elements; cap is " +
                            std::to_string(kMaxGroundSize));
    st->core = static_cast<int>(count);
    st->n = st->core + pad;

    // Ascending lexicographic enumeration of vectors with coordinate sum s.
    std::vector<int> v(static_cast<std::size_t>(k), 0);
    auto enumerate = [&](auto&& self, int coord, int remaining) -> void {
        if (coord == k - 1) {
            v[static_cast<std::size_t>(coord)] = remaining;
            st->vectors.push_back(v);
            return;
        }
        for (int value = 0; value <= remaining; ++value) {
            v[static_cast<std::size_t>(coord)] = value;
            self(self, coord + 1, remaining - value);
        }
    };
    enumerate(enumerate, 0, st->s);
    if (static_cast<int>(st->vectors.size()) != st->core)
        throw ContractViolation("vector enumeration size mismatch");

    st->members.resize(static_cast<std::size_t>(k));
    st->zeros.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        Subset mem, zer;
        for (int e = 0; e < st->core; ++e) {
            if (st->vectors[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)] >= 1)
                mem = mem | Subset::single(e);
            else
                zer = zer | Subset::single(e);
        }
        st->members[static_cast<std::size_t>(i)] = mem;
        st->zeros[static_cast<std::size_t>(i)] = zer;
    }
    return st;
}

SubmodularFn SubmodularFn::table(GroundSet ground, std::vector<Rat> values) {
    if (ground.n > 20)
        throw CapacityError("explicit tables are limited to 20 elements");
    if (values.size() != (std::size_t{1} << ground.n))
        throw ContractViolation("table size must be 2^n");
    if (values[0] != 0)
        throw ContractViolation("table value at the empty set must be 0");
    return SubmodularFn(std::move(ground), Kind::Table,
                        TableData{std::make_shared<const std::vector<Rat>>(std::move(values))});
}

SubmodularFn SubmodularFn::coverage(GroundSet ground, int universe, std::vector<Rat> weights,
                                    std::vector<std::uint64_t> covers) {
    if (universe < 0 || universe > 64)
        throw CapacityError("coverage universe is limited to 64 points");
    if (weights.size() != static_cast<std::size_t>(universe))
        throw ContractViolation("coverage needs one weight per universe point");
    for (const Rat& w : weights)
        if (w < 0)
            throw ContractViolation("coverage weights must be nonnegative");
    if (covers.size() != static_cast<std::size_t>(ground.n))
        throw ContractViolation("coverage needs one covered set per element");
    std::uint64_t valid = universe == 64 ? ~std::uint64_t{0}
                                         : ((std::uint64_t{1} << universe) - 1);
    for (std::uint64_t c : covers)
        if ((c & ~valid) != 0)
            throw ContractViolation("covered set outside the universe");
    return SubmodularFn(std::move(ground), Kind::Coverage,
                        CoverageData{universe, std::move(weights), std::move(covers)});
}

SubmodularFn SubmodularFn::facility_location(GroundSet ground, Rat opening,
                                             std::vector<Rat> costs) {
    if (opening < 0)
        throw ContractViolation("opening cost must be nonnegative");
    if (costs.size() != static_cast<std::size_t>(ground.n))
        throw ContractViolation("facility location needs one cost per element");
    for (const Rat& c : costs)
        if (c < 0)
            throw ContractViolation("per-element costs must be nonnegative");
    return SubmodularFn(std::move(ground), Kind::FacilityLocation,
                        FacilityLocationData{std::move(opening), std::move(costs)});
}

SubmodularFn SubmodularFn::lower_bound_family(
    std::shared_ptr<const LowerBoundStructure> structure, int index) {
    if (!structure)
        throw ContractViolation("null family structure");
    if (index < 0 || index >= structure->k)
        throw ContractViolation("family function index out of range");
    GroundSet ground(structure->n);
    return SubmodularFn(std::move(ground), Kind::LowerBoundFamily,
                        LowerBoundData{std::move(structure), index});
}

Rat SubmodularFn::eval(Subset s) const {
    if (!ground_.contains(s))
        throw ContractViolation("subset " + render_subset(s) + " outside ground set of size " +
                                std::to_string(ground_.n));
    switch (kind_) {
        case Kind::Table:
            return (*std::get<TableData>(data_).values)[s.bits];
        case Kind::Coverage: {
            const auto& data = std::get<CoverageData>(data_);
            std::uint64_t covered = 0;
            for (std::uint32_t bits = s.bits; bits != 0; bits &= bits - 1)
                covered |= data.covers[static_cast<std::size_t>(std::countr_zero(bits))];
            Rat total = 0;
            for (std::uint64_t rest = covered; rest != 0; rest &= rest - 1)
                total += data.weights[static_cast<std::size_t>(std::countr_zero(rest))];
            return total;
        }
        case Kind::FacilityLocation: {
            const auto& data = std::get<FacilityLocationData>(data_);
            if (s.empty())
                return 0;
            Rat total = data.opening;
            for (std::uint32_t bits = s.bits; bits != 0; bits &= bits - 1)
                total += data.costs[static_cast<std::size_t>(std::countr_zero(bits))];
            return total;
        }
        case Kind::LowerBoundFamily: {
            const auto& data = std::get<LowerBoundData>(data_);
            const auto& st = *data.structure;
            int i = data.index;
            // Pad elements carry no cost: only the vector-indexed core matters.
            Subset core = s & st.core_mask();
            if (!(core & st.zeros[static_cast<std::size_t>(i)]).empty())
                return 2 * st.p * st.k + 1;
            Subset hits = core & st.members[static_cast<std::size_t>(i)];
            if (hits.empty())
                return 0;
            int min_coord = st.s + 1;
            for (std::uint32_t bits = hits.bits; bits != 0; bits &= bits - 1) {
                int e = std::countr_zero(bits);
                min_coord = std::min(
                    min_coord, st.vectors[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)]);
            }
            return std::max(0, 2 * st.p + 1 - min_coord);
        }
    }
    throw ContractViolation("unreachable function kind");
}

Rat SubmodularFn::marginal(Subset s, int e) const {
    if (e < 0 || e >= ground_.n)
        throw ContractViolation("marginal element outside ground set");
    if (s.contains(e))
        throw ContractViolation("marginal element already in the set");
    return eval(s | Subset::single(e)) - eval(s);
}

SubmodularFn SubmodularFn::materialize() const {
    if (ground_.n > 20)
        throw CapacityError("cannot materialize a table for more than 20 elements");
    std::size_t size = std::size_t{1} << ground_.n;
    std::vector<Rat> values(size);
    for (std::size_t mask = 0; mask < size; ++mask)
        values[mask] = eval(Subset(static_cast<std::uint32_t>(mask)));
    return table(ground_, std::move(values));
}

std::string kind_name(SubmodularFn::Kind kind) {
    switch (kind) {
        case SubmodularFn::Kind::Table: return "table";
        case SubmodularFn::Kind::Coverage: return "coverage";
        case SubmodularFn::Kind::FacilityLocation: return "facility_location";
        case SubmodularFn::Kind::LowerBoundFamily: return "lower_bound_family";
    }
    throw ContractViolation("unreachable function kind");
}

Instance::Instance(GroundSet g, std::vector<SubmodularFn> fns,
                   std::map<std::string, std::string> meta)
    : ground(std::move(g)), k(static_cast<int>(fns.size())), functions(std::move(fns)),
      metadata(std::move(meta)) {
    if (k < 2)
        throw ContractViolation("an instance needs at least two functions");
    for (const SubmodularFn& f : functions)
        if (f.n() != ground.n)
            throw ContractViolation("all functions must share the instance ground set");
}

}  // namespace msca
