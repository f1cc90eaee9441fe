#include "msca/json_io.hpp"

#include "msca/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <tuple>

namespace msca {

namespace {

Rat rat_from_json(const Json& j) {
    if (!j.is_string())
        throw UsageError("rationals must be strings in p/q form");
    return parse_rat(j.get<std::string>());
}

Int int_from_json(const Json& j) {
    if (!j.is_string())
        throw UsageError("big integers must be strings");
    return Int(j.get<std::string>());
}

const Json& field(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw UsageError(std::string("missing field '") + name + "'");
    return *it;
}

}  // namespace

Json subset_to_json(Subset s) {
    Json out = Json::array();
    for (int e : subset_elements(s))
        out.push_back(e);
    return out;
}

Subset subset_from_json(const Json& j, int n) {
    if (!j.is_array())
        throw UsageError("subsets must be arrays of element indices");
    std::vector<int> elements;
    for (const Json& entry : j)
        elements.push_back(entry.get<int>());
    return subset_from_elements(elements, n);
}

Json instance_to_json(const Instance& inst) {
    Json out;
    out["n"] = inst.n();
    out["k"] = inst.k;
    Json metadata = Json::object();
    for (const auto& [key, value] : inst.metadata)
        metadata[key] = value;
    out["metadata"] = std::move(metadata);
    if (!inst.ground.labels.empty())
        out["labels"] = inst.ground.labels;

    Json functions = Json::array();
    for (const SubmodularFn& f : inst.functions) {
        Json fn;
        fn["type"] = kind_name(f.kind());
        if (const auto* table = f.as_table()) {
            Json values = Json::array();
            for (const Rat& v : *table->values)
                values.push_back(render_rat(v));
            fn["values"] = std::move(values);
        } else if (const auto* coverage = f.as_coverage()) {
            fn["universe"] = coverage->universe;
            Json weights = Json::array();
            for (const Rat& w : coverage->weights)
                weights.push_back(render_rat(w));
            fn["weights"] = std::move(weights);
            Json covers = Json::array();
            for (std::uint64_t mask : coverage->covers) {
                Json points = Json::array();
                for (int t = 0; t < coverage->universe; ++t)
                    if ((mask >> t) & 1u)
                        points.push_back(t);
                covers.push_back(std::move(points));
            }
            fn["covers"] = std::move(covers);
        } else if (const auto* facility = f.as_facility_location()) {
            fn["opening"] = render_rat(facility->opening);
            Json costs = Json::array();
            for (const Rat& c : facility->costs)
                costs.push_back(render_rat(c));
            fn["costs"] = std::move(costs);
        } else if (const auto* family = f.as_lower_bound()) {
            fn["k"] = family->structure->k;
            fn["p"] = family->structure->p;
            fn["pad"] = family->structure->pad;
            fn["index"] = family->index;
        }
        functions.push_back(std::move(fn));
    }
    out["functions"] = std::move(functions);
    return out;
}

Instance instance_from_json(const Json& j) {
    const int n = field(j, "n").get<int>();
    const int k = field(j, "k").get<int>();
    std::map<std::string, std::string> metadata;
    if (j.contains("metadata"))
        for (const auto& [key, value] : j["metadata"].items())
            metadata[key] = value.get<std::string>();
    std::vector<std::string> labels;
    if (j.contains("labels"))
        labels = j["labels"].get<std::vector<std::string>>();

    // Family functions of one instance share one regenerated structure.
    std::map<std::tuple<int, int, int>, std::shared_ptr<const LowerBoundStructure>> structures;

    std::vector<SubmodularFn> functions;
    for (const Json& fn : field(j, "functions")) {
        const std::string type = field(fn, "type").get<std::string>();
        GroundSet ground(n, labels);
        if (type == "table") {
            std::vector<Rat> values;
            for (const Json& v : field(fn, "values"))
                values.push_back(rat_from_json(v));
            functions.push_back(SubmodularFn::table(std::move(ground), std::move(values)));
        } else if (type == "coverage") {
            const int universe = field(fn, "universe").get<int>();
            std::vector<Rat> weights;
            for (const Json& w : field(fn, "weights"))
                weights.push_back(rat_from_json(w));
            std::vector<std::uint64_t> covers;
            for (const Json& points : field(fn, "covers")) {
                std::uint64_t mask = 0;
                for (const Json& t : points) {
                    const int point = t.get<int>();
                    if (point < 0 || point >= universe)
                        throw UsageError("covered point outside the universe");
                    mask |= std::uint64_t{1} << point;
                }
                covers.push_back(mask);
            }
            functions.push_back(SubmodularFn::coverage(std::move(ground), universe,
                                                       std::move(weights), std::move(covers)));
        } else if (type == "facility_location") {
            Rat opening = rat_from_json(field(fn, "opening"));
            std::vector<Rat> costs;
            for (const Json& c : field(fn, "costs"))
                costs.push_back(rat_from_json(c));
            functions.push_back(SubmodularFn::facility_location(std::move(ground),
                                                                std::move(opening),
                                                                std::move(costs)));
        } else if (type == "lower_bound_family") {
            const int fk = field(fn, "k").get<int>();
            const int fp = field(fn, "p").get<int>();
            const int fpad = field(fn, "pad").get<int>();
            const int index = field(fn, "index").get<int>();
            auto key = std::make_tuple(fk, fp, fpad);
            auto it = structures.find(key);
            if (it == structures.end())
                it = structures.emplace(key, make_lower_bound_structure(fk, fp, fpad)).first;
            if (it->second->n != n)
                throw UsageError("family parameters do not match the instance size");
            functions.push_back(SubmodularFn::lower_bound_family(it->second, index));
        } else {
            throw UsageError("unknown function type '" + type + "'");
        }
    }
    try {
        return Instance(GroundSet(n, labels), std::move(functions), std::move(metadata));
    } catch (const ContractViolation& e) {
        throw UsageError(std::string("invalid instance: ") + e.what());
    }
}

Json lp_solution_to_json(const LpSolution& solution) {
    Json out;
    out["objective"] = render_rat(solution.objective);
    Json support = Json::array();
    for (int i = 0; i < solution.allocation.k; ++i) {
        for (const auto& [set, weight] : solution.allocation.support[static_cast<std::size_t>(i)]) {
            Json entry;
            entry["i"] = i;
            entry["set"] = subset_to_json(set);
            entry["weight"] = render_rat(weight);
            support.push_back(std::move(entry));
        }
    }
    out["support"] = std::move(support);
    out["iterations"] = solution.iterations;
    return out;
}

Json chain_to_json(const ChainAllocation& chain) {
    Json out;
    Json support = Json::array();
    for (int i = 0; i < chain.k; ++i) {
        const auto& entries = chain.chains[static_cast<std::size_t>(i)];
        for (std::size_t l = 0; l < entries.size(); ++l) {
            Json entry;
            entry["i"] = i;
            entry["chain_index"] = static_cast<int>(l);
            entry["set"] = subset_to_json(entries[l].first);
            entry["weight"] = render_rat(entries[l].second);
            support.push_back(std::move(entry));
        }
    }
    out["support"] = std::move(support);
    return out;
}

Json solution_file_to_json(const LpSolution& solution, const ChainAllocation& chain) {
    Json out = lp_solution_to_json(solution);
    out["chain"] = chain_to_json(chain);
    return out;
}

LpSolution lp_solution_from_json(const Json& j, int n, int k) {
    LpSolution solution;
    solution.objective = rat_from_json(field(j, "objective"));
    solution.iterations = field(j, "iterations").get<long>();
    solution.allocation = FractionalAllocation(n, k);
    for (const Json& entry : field(j, "support")) {
        const int i = field(entry, "i").get<int>();
        Subset set = subset_from_json(field(entry, "set"), n);
        Rat weight = rat_from_json(field(entry, "weight"));
        try {
            solution.allocation.add(i, set, weight);
        } catch (const ContractViolation& e) {
            throw UsageError(std::string("invalid solution entry: ") + e.what());
        }
    }
    return solution;
}

ChainAllocation chain_from_json(const Json& j, int n, int k) {
    ChainAllocation chain(n, k);
    for (const Json& entry : field(j, "support")) {
        const int i = field(entry, "i").get<int>();
        if (i < 0 || i >= k)
            throw UsageError("chain entry with function index out of range");
        Subset set = subset_from_json(field(entry, "set"), n);
        Rat weight = rat_from_json(field(entry, "weight"));
        chain.chains[static_cast<std::size_t>(i)].emplace_back(set, weight);
    }
    // Entries are stored outermost first; accept any file order.
    for (auto& entries : chain.chains)
        std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
            return a.first.count() > b.first.count();
        });
    return chain;
}

Json round_report_to_json(const RoundResult& result, const Rat& lp_value) {
    Json out;
    out["M"] = result.M.str();
    out["m"] = result.m.str();
    out["jstar"] = result.jstar.str();
    Json tuple = Json::array();
    for (const Int& a : result.tuple)
        tuple.push_back(a.str());
    out["tuple"] = std::move(tuple);
    Json cover = Json::array();
    for (const Subset& c : result.cover)
        cover.push_back(subset_to_json(c));
    out["cover"] = std::move(cover);
    Json partition = Json::array();
    for (const Subset& block : result.partition.blocks())
        partition.push_back(subset_to_json(block));
    out["partition"] = std::move(partition);
    out["value"] = render_rat(result.value);
    out["lp_value"] = render_rat(lp_value);
    if (lp_value == 0)
        out["ratio"] = nullptr;  // ratio undefined (zero optimum)
    else
        out["ratio"] = render_rat(result.value / lp_value);
    return out;
}

RoundResult round_result_from_json(const Json& j, const Instance& inst) {
    RoundResult result;
    result.M = int_from_json(field(j, "M"));
    result.m = int_from_json(field(j, "m"));
    result.jstar = int_from_json(field(j, "jstar"));
    for (const Json& a : field(j, "tuple"))
        result.tuple.push_back(int_from_json(a));
    for (const Json& c : field(j, "cover"))
        result.cover.push_back(subset_from_json(c, inst.n()));
    result.value = rat_from_json(field(j, "value"));

    const Json& partition = field(j, "partition");
    if (static_cast<int>(partition.size()) != inst.k)
        throw UsageError("partition must have one block per function");
    result.partition.k = inst.k;
    result.partition.assignment.assign(static_cast<std::size_t>(inst.n()), -1);
    for (int i = 0; i < inst.k; ++i) {
        for (int e : subset_elements(subset_from_json(partition[static_cast<std::size_t>(i)],
                                                      inst.n()))) {
            if (result.partition.assignment[static_cast<std::size_t>(e)] != -1)
                throw UsageError("element " + std::to_string(e) + " appears in two blocks");
            result.partition.assignment[static_cast<std::size_t>(e)] = i;
        }
    }
    for (int e = 0; e < inst.n(); ++e)
        if (result.partition.assignment[static_cast<std::size_t>(e)] == -1)
            throw UsageError("element " + std::to_string(e) + " missing from the partition");

    result.cover_value = 0;
    for (int i = 0; i < inst.k && i < static_cast<int>(result.cover.size()); ++i)
        result.cover_value +=
            inst.functions[static_cast<std::size_t>(i)].eval(result.cover[static_cast<std::size_t>(i)]);
    return result;
}

Json brute_to_json(const BruteForceResult& result) {
    Json out;
    out["value"] = render_rat(result.value);
    Json partition = Json::array();
    for (const Subset& block : result.partition.blocks())
        partition.push_back(subset_to_json(block));
    out["partition"] = std::move(partition);
    out["leaves"] = result.leaves;
    return out;
}

BruteForceResult brute_from_json(const Json& j, const Instance& inst) {
    BruteForceResult result;
    result.value = rat_from_json(field(j, "value"));
    result.leaves = j.contains("leaves") ? j["leaves"].get<std::uint64_t>() : 0;
    const Json& partition = field(j, "partition");
    if (static_cast<int>(partition.size()) != inst.k)
        throw UsageError("partition must have one block per function");
    result.partition.k = inst.k;
    result.partition.assignment.assign(static_cast<std::size_t>(inst.n()), -1);
    for (int i = 0; i < inst.k; ++i)
        for (int e : subset_elements(subset_from_json(partition[static_cast<std::size_t>(i)],
                                                      inst.n())))
            result.partition.assignment[static_cast<std::size_t>(e)] = i;
    return result;
}

Json verification_report_to_json(const VerificationReport& report) {
    Json out;
    out["pass"] = report.pass;
    Json checks = Json::array();
    for (const VerificationCheck& check : report.checks) {
        Json c;
        c["name"] = check.name;
        c["pass"] = check.pass;
        c["details"] = check.details;
        checks.push_back(std::move(c));
    }
    out["checks"] = std::move(checks);
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("cannot parse '" + path + "': " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace msca
