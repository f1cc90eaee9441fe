#pragma once

#include "msca/rational.hpp"
#include "msca/subset.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace msca {

// Shared combinatorial data of the hard-instance family: all nonnegative
// integer vectors v of length k with coordinate sum s = pk-k+1, in ascending
// lexicographic order, one ground element per vector, plus `pad` extra
// elements that carry no cost for any of the k functions.
struct LowerBoundStructure {
    int k = 0;
    int p = 0;
    int pad = 0;
    int s = 0;         // coordinate sum pk-k+1
    int core = 0;      // number of vectors = C(pk, k-1)
    int n = 0;         // core + pad
    std::vector<std::vector<int>> vectors;  // vectors[e][i], e < core
    std::vector<Subset> members;            // members[i] = {e : vectors[e][i] >= 1}
    std::vector<Subset> zeros;              // zeros[i]   = {e : vectors[e][i] == 0}

    // {e : vectors[e][i] >= level}; level >= 1.
    Subset level_set(int i, int level) const;
    Subset core_mask() const { return Subset::full(core); }
    Subset pad_mask() const { return Subset::full(n) - core_mask(); }
};

// Throws CapacityError when C(pk, k-1) + pad exceeds the ground set cap.
std::shared_ptr<const LowerBoundStructure> make_lower_bound_structure(int k, int p, int pad);

Int binomial(int n, int r);

// A monotone submodular cost function with an exact evaluation oracle.
// Immutable after construction; cheap to copy for the table-free kinds.
class SubmodularFn {
public:
    enum class Kind { Table, Coverage, FacilityLocation, LowerBoundFamily };

    struct TableData {
        std::shared_ptr<const std::vector<Rat>> values;  // 2^n entries, mask order
    };
    struct CoverageData {
        int universe = 0;
        std::vector<Rat> weights;            // one per universe point, >= 0
        std::vector<std::uint64_t> covers;   // per element, bitmask over universe
    };
    struct FacilityLocationData {
        Rat opening;                // charged once for any nonempty set
        std::vector<Rat> costs;     // per-element additive cost
    };
    struct LowerBoundData {
        std::shared_ptr<const LowerBoundStructure> structure;
        int index = 0;  // which of the k functions, 0-based
    };

    static SubmodularFn table(GroundSet ground, std::vector<Rat> values);
    static SubmodularFn coverage(GroundSet ground, int universe, std::vector<Rat> weights,
                                 std::vector<std::uint64_t> covers);
    static SubmodularFn facility_location(GroundSet ground, Rat opening, std::vector<Rat> costs);
    static SubmodularFn lower_bound_family(std::shared_ptr<const LowerBoundStructure> structure,
                                           int index);

    Kind kind() const { return kind_; }
    const GroundSet& ground() const { return ground_; }
    int n() const { return ground_.n; }

    Rat eval(Subset s) const;
    // f(S + e) - f(S); requires e outside S.
    Rat marginal(Subset s, int e) const;

    // Explicit table copy of this function (n <= 20). Never done implicitly.
    SubmodularFn materialize() const;

    const TableData* as_table() const { return std::get_if<TableData>(&data_); }
    const CoverageData* as_coverage() const { return std::get_if<CoverageData>(&data_); }
    const FacilityLocationData* as_facility_location() const {
        return std::get_if<FacilityLocationData>(&data_);
    }
    const LowerBoundData* as_lower_bound() const { return std::get_if<LowerBoundData>(&data_); }

    // True for kinds that are monotone by construction; tables are scanned.
    bool structurally_monotone() const { return kind_ != Kind::Table; }

private:
    using Data = std::variant<TableData, CoverageData, FacilityLocationData, LowerBoundData>;
    SubmodularFn(GroundSet ground, Kind kind, Data data)
        : ground_(std::move(ground)), kind_(kind), data_(std::move(data)) {}

    GroundSet ground_;
    Kind kind_;
    Data data_;
};

std::string kind_name(SubmodularFn::Kind kind);

// The allocation problem input: k cost functions over one ground set.
struct Instance {
    GroundSet ground;
    int k = 0;
    std::vector<SubmodularFn> functions;
    std::map<std::string, std::string> metadata;

    Instance(GroundSet g, std::vector<SubmodularFn> fns,
             std::map<std::string, std::string> meta = {});

    int n() const { return ground.n; }
};

}  // namespace msca
