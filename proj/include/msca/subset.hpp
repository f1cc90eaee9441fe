#pragma once

#include "msca/errors.hpp"

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace msca {

// Hard cap so every subset fits one machine word.
inline constexpr int kMaxGroundSize = 30;

// A subset of a ground set of at most kMaxGroundSize elements, as a bitmask.
struct Subset {
    std::uint32_t bits = 0;

    constexpr Subset() = default;
    constexpr explicit Subset(std::uint32_t b) : bits(b) {}

    static constexpr Subset single(int e) { return Subset(std::uint32_t{1} << e); }
    static constexpr Subset full(int n) {
        return Subset(n == 0 ? 0u : (~std::uint32_t{0} >> (32 - n)));
    }

    constexpr bool contains(int e) const { return (bits >> e) & 1u; }
    constexpr bool empty() const { return bits == 0; }
    int count() const { return std::popcount(bits); }
    constexpr bool subset_of(Subset other) const { return (bits & ~other.bits) == 0; }
    constexpr bool strict_subset_of(Subset other) const {
        return subset_of(other) && bits != other.bits;
    }

    friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits | b.bits); }
    friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits & b.bits); }
    // Set difference.
    friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits & ~b.bits); }
    friend constexpr bool operator==(Subset a, Subset b) { return a.bits == b.bits; }
    // Mask order; used only for deterministic tie-breaking, not set inclusion.
    friend constexpr auto operator<=>(Subset a, Subset b) { return a.bits <=> b.bits; }
};

inline Subset complement(Subset s, int n) { return Subset::full(n) - s; }

std::vector<int> subset_elements(Subset s);
Subset subset_from_elements(const std::vector<int>& elements, int n);
std::string render_subset(Subset s);  // "{0,2,5}"

// The ground set: a size plus optional display labels.
struct GroundSet {
    int n = 0;
    std::vector<std::string> labels;  // empty, or one per element

    GroundSet() = default;
    explicit GroundSet(int size, std::vector<std::string> names = {})
        : n(size), labels(std::move(names)) {
        if (n < 1 || n > kMaxGroundSize)
            throw CapacityError("ground set size " + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxGroundSize) + "]");
        if (!labels.empty() && static_cast<int>(labels.size()) != n)
            throw ContractViolation("label count does not match ground set size");
    }

    bool contains(Subset s) const { return s.subset_of(Subset::full(n)); }
    Subset full() const { return Subset::full(n); }
};

}  // namespace msca
